#include "gca/io.hpp"

#include <fstream>
#include <sstream>

#include "gca/error.hpp"
#include "gca/limits.hpp"

namespace gca {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(where + ": " + e.what());
  }
}

}  // namespace

FiniteGroup group_from_json(const json& j) {
  return guarded("group", [&]() -> FiniteGroup {
    if (!j.is_object()) bad("group: expected an object");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") {
      const auto m = j.at("order").get<long long>();
      if (m < 1) bad("group: cyclic order must be positive");
      if (static_cast<std::size_t>(m) > limits().max_order)
        throw Error(ErrorKind::SizeLimit, "group order " + std::to_string(m) + " exceeds cap");
      return FiniteGroup::cyclic(static_cast<std::size_t>(m));
    }
    if (kind == "table") {
      auto names = j.at("elements").get<std::vector<std::string>>();
      std::map<std::string, std::size_t> by_name;
      for (std::size_t i = 0; i < names.size(); ++i) by_name[names[i]] = i;
      std::vector<std::vector<std::size_t>> table;
      for (const auto& row : j.at("table")) {
        std::vector<std::size_t> r;
        for (const auto& x : row) {
          if (x.is_string()) {
            auto it = by_name.find(x.get<std::string>());
            if (it == by_name.end()) bad("group: unknown element name " + x.get<std::string>());
            r.push_back(it->second);
          } else {
            r.push_back(x.get<std::size_t>());
          }
        }
        table.push_back(std::move(r));
      }
      return FiniteGroup::from_table(names, table, j.value("label", std::string{}));
    }
    if (kind == "permutation") {
      return FiniteGroup::permutation(j.at("degree").get<std::size_t>(),
                                      j.at("generators").get<std::vector<std::vector<std::size_t>>>());
    }
    if (kind == "product") {
      std::vector<FiniteGroup> factors;
      for (const auto& f : j.at("factors")) factors.push_back(group_from_json(f));
      return FiniteGroup::product(std::move(factors));
    }
    bad("group: unknown kind " + kind);
  });
}

json group_to_json(const FiniteGroup& g) {
  switch (g.kind()) {
    case GroupKind::Cyclic:
      return {{"kind", "cyclic"}, {"order", g.order()}};
    case GroupKind::Product: {
      json f = json::array();
      for (const auto& x : g.factors()) f.push_back(group_to_json(x));
      return {{"kind", "product"}, {"factors", f}};
    }
    default: {
      std::vector<std::string> names;
      std::vector<std::vector<Elem>> table(g.order());
      for (Elem a = 0; a < g.order(); ++a) {
        names.push_back(g.element_name(a));
        for (Elem b = 0; b < g.order(); ++b) table[a].push_back(g.op(a, b));
      }
      return {{"kind", "table"}, {"elements", names}, {"table", table}, {"label", g.label()}};
    }
  }
}

Elem element_from_json(const FiniteGroup& g, const json& j) {
  if (j.is_number_integer()) {
    auto v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) bad("element index " + std::to_string(v) + " out of range");
    return static_cast<Elem>(v);
  }
  if (j.is_array() && g.kind() == GroupKind::Product) {
    if (j.size() != g.factors().size()) bad("element: expected " + std::to_string(g.factors().size()) + " components");
    std::vector<Elem> parts;
    for (std::size_t t = 0; t < j.size(); ++t) parts.push_back(element_from_json(g.factors()[t], j[t]));
    return g.from_components(parts);
  }
  bad("element: expected an index or a component list, got " + j.dump());
}

namespace {

Endomorphism endo_from_json(const FiniteGroup& g, const json& j) {
  if (j.is_string()) {
    if (j == "identity") return Endomorphism::identity(g);
    if (j == "trivial") return Endomorphism::trivial(g);
    bad("endomorphism: unknown name " + j.get<std::string>());
  }
  if (j.contains("images")) {
    std::vector<Elem> images;
    for (const auto& x : j.at("images")) images.push_back(element_from_json(g, x));
    if (images.size() != g.order()) bad("endomorphism: expected " + std::to_string(g.order()) + " images");
    return Endomorphism(g, std::move(images));
  }
  if (j.contains("gen_images")) {
    std::vector<Elem> gens, images;
    for (auto it = j.at("gen_images").begin(); it != j.at("gen_images").end(); ++it) {
      gens.push_back(element_from_json(g, json::parse(it.key())));
      images.push_back(element_from_json(g, it.value()));
    }
    auto h = Endomorphism::from_generator_images(g, gens, images);
    if (!h) throw Error(ErrorKind::NotAGroup, "generator images do not extend to an endomorphism");
    if (generated_subgroup(g, gens).order() != g.order()) bad("gen_images: keys do not generate the group");
    return *h;
  }
  if (j.contains("matrix")) {
    auto basis = elementary_abelian_basis(g);
    if (!basis) throw Error(ErrorKind::NotElementaryAbelian, "matrix endomorphism on " + describe(g));
    const auto a = j.at("matrix").get<GfMatrix>();
    const std::uint32_t p = j.value("prime", basis->prime);
    if (p != basis->prime || a.size() != basis->dimension) bad("matrix endomorphism: shape or prime mismatch");
    std::map<int, GfMatrix> coeffs{{0, a}};
    for (auto& row : coeffs[0])
      for (auto v : row)
        if (v >= p) bad("matrix endomorphism: entry outside [0, p)");
    Gca tmp = to_gca(g, LaurentMatrix::from_coefficients(p, a.size(), coeffs));
    return tmp.endo(0);
  }
  bad("endomorphism: expected images, gen_images, matrix, \"identity\" or \"trivial\"");
}

}  // namespace

Gca rule_from_json(const json& j) {
  return guarded("rule", [&]() -> Gca {
    if (j.contains("laurent")) {
      const auto p = j.at("prime").get<std::uint32_t>();
      auto rows = j.at("laurent").get<std::vector<std::vector<std::string>>>();
      LaurentMatrix m = LaurentMatrix::parse(rows, p);
      std::vector<FiniteGroup> factors(m.dim(), FiniteGroup::cyclic(p));
      FiniteGroup g = m.dim() == 1 ? FiniteGroup::cyclic(p) : FiniteGroup::product(factors);
      return to_gca(g, m);
    }
    FiniteGroup g = group_from_json(j.at("group"));
    const int r = j.value("radius", 0);
    if (r < 0) bad("rule: negative radius");
    std::vector<Endomorphism> endos(static_cast<std::size_t>(2 * r + 1), Endomorphism::trivial(g));
    for (auto it = j.at("endomorphisms").begin(); it != j.at("endomorphisms").end(); ++it) {
      int d = 0;
      try {
        d = std::stoi(it.key());
      } catch (...) {
        bad("rule: bad offset " + it.key());
      }
      if (d < -r || d > r) bad("rule: offset " + it.key() + " outside the radius");
      endos[static_cast<std::size_t>(d + r)] = endo_from_json(g, it.value());
    }
    return validate_rule(g, r, std::move(endos));
  });
}

json rule_to_json(const Gca& f) {
  json endos = json::object();
  for (int d = -f.radius(); d <= f.radius(); ++d)
    if (!f.endo(d).is_trivial()) endos[std::to_string(d)] = {{"images", f.endo(d).images()}};
  return {{"group", group_to_json(f.group())}, {"radius", f.radius()}, {"endomorphisms", endos}};
}

Configuration config_from_json(const FiniteGroup& g, const json& j) {
  return guarded("configuration", [&]() -> Configuration {
    const std::string kind = j.value("kind", std::string("finite"));
    auto word = [&](const json& w) {
      std::vector<Elem> out;
      for (const auto& x : w) out.push_back(element_from_json(g, x));
      return out;
    };
    if (kind == "finite") {
      std::map<long long, Elem> support;
      for (auto it = j.at("support").begin(); it != j.at("support").end(); ++it) {
        Elem x = element_from_json(g, it.value());
        if (x != 0) support[std::stoll(it.key())] = x;
      }
      return Configuration::finite(support);
    }
    if (kind == "ep") {
      auto left = word(j.at("left")), right = word(j.at("right"));
      if (left.empty() || right.empty()) bad("configuration: period words must be non-empty");
      return Configuration::eventually_periodic(left, word(j.value("core", json::array())),
                                                j.value("coreStart", 0LL), right);
    }
    if (kind == "periodic") return Configuration::periodic(word(j.at("word")), j.value("anchor", 0LL));
    bad("configuration: unknown kind " + kind);
  });
}

json config_to_json(const Configuration& c) {
  if (c.is_finite()) {
    json support = json::object();
    for (auto [i, x] : c.support()) support[std::to_string(i)] = x;
    return {{"kind", "finite"}, {"support", support}};
  }
  return {{"kind", "ep"}, {"left", c.left()}, {"core", c.core()}, {"coreStart", c.core_start()}, {"right", c.right()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

}  // namespace gca
