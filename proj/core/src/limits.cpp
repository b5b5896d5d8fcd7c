#include "gca/limits.hpp"

#include <cstdlib>
#include <mutex>
#include <sstream>

#include "gca/error.hpp"

namespace gca {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::CentralizerViolation: return "CentralizerViolation";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotElementaryAbelian: return "NotElementaryAbelian";
    case ErrorKind::NotAFront: return "NotAFront";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

Limits& storage() {
  static Limits l = [] {
    const char* env = std::getenv("GCA_SIZE_LIMITS");
    return env ? parse_limits(env) : Limits{};
  }();
  return l;
}

template <typename T>
void assign(T& field, const std::string& key, const std::string& value) {
  std::istringstream in(value);
  long long v = 0;
  if (!(in >> v) || !in.eof() || v < 0)
    throw Error(ErrorKind::InvalidArgument, "bad value for limit '" + key + "': " + value);
  field = static_cast<T>(v);
}

}  // namespace

const Limits& limits() { return storage(); }

void set_limits(const Limits& l) { storage() = l; }

Limits parse_limits(const std::string& text, Limits base) {
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidArgument, "expected key=value in GCA_SIZE_LIMITS: " + item);
    auto trim = [](std::string x) {
      x.erase(0, x.find_first_not_of(" \t"));
      x.erase(x.find_last_not_of(" \t") + 1);
      return x;
    };
    std::string key = trim(item.substr(0, eq)), value = trim(item.substr(eq + 1));
    if (key == "max_order") assign(base.max_order, key, value);
    else if (key == "subgroup_order") assign(base.subgroup_order, key, value);
    else if (key == "endo_order") assign(base.endo_order, key, value);
    else if (key == "endo_generators") assign(base.endo_generators, key, value);
    else if (key == "debruijn_vertices") assign(base.debruijn_vertices, key, value);
    else if (key == "subset_states") assign(base.subset_states, key, value);
    else if (key == "compose_radius") assign(base.compose_radius, key, value);
    else if (key == "invert_radius") assign(base.invert_radius, key, value);
    else if (key == "linear_variables") assign(base.linear_variables, key, value);
    else if (key == "det_dimension") assign(base.det_dimension, key, value);
    else if (key == "shift_power_cap") assign(base.shift_power_cap, key, value);
    else if (key == "germ_count") assign(base.germ_count, key, value);
    else throw Error(ErrorKind::InvalidArgument, "unknown limit key: " + key);
  }
  return base;
}

}  // namespace gca
