#include <glob.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

#include "cli.hpp"
#include "gca/debruijn.hpp"
#include "gca/decide.hpp"
#include "gca/error.hpp"
#include "gca/io.hpp"
#include "gca/linear.hpp"
#include "gca/simulate.hpp"

namespace gca::cli {

using nlohmann::json;

Input load_input(const std::string& path) {
  json doc = read_json_file(path);
  const json& body = doc.is_object() && doc.contains("rule") ? doc.at("rule") : doc;
  std::string name = doc.is_object() && doc.contains("name") && doc.at("name").is_string()
                         ? doc.at("name").get<std::string>()
                         : std::filesystem::path(path).stem().string();
  Gca rule = rule_from_json(body);
  return {path, std::move(name), std::move(doc), std::move(rule)};
}

json check_document(const Input& in, const std::string& property, int budget) {
  json j{{"input", in.path},
         {"name", in.name},
         {"property", property},
         {"budget", budget},
         {"rule", rule_to_json(in.rule)}};
  if (property == "injectivity") {
    j["verdict"] = is_injective(in.rule).to_json();
  } else if (property == "surjectivity") {
    j["verdict"] = is_surjective(in.rule).to_json();
  } else if (property == "positive-expansivity") {
    j["verdict"] = decide_positive_expansive(in.rule, budget).to_json();
  } else if (property == "expansivity" || property == "transitivity") {
    Report r = property == "expansivity" ? decide_expansive(in.rule, budget) : decide_transitive(in.rule, budget);
    j["verdict"] = r.combined.to_json();
    j["verdict"]["answer"] = std::string(to_string(r.combined.answer));
    j["report"] = r.to_json();
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown property '" + property + "'");
  }
  return j;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  ::globfree(&g);
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "no files match '" + pattern + "'");
  return out;
}

namespace {

std::string answer_of(const Verdict& v) { return std::string(to_string(v.answer)); }

// Runs `fn`, mapping SizeLimit and NotInjective onto a column marker.
template <typename Fn>
std::string column(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SizeLimit) return "skipped:SizeLimit";
    if (e.kind() == ErrorKind::NotInjective) return "skipped:NotInjective";
    throw;
  }
}

bool definite(const std::string& a) { return a == "YES" || a == "NO"; }

// Disagreement between two verdict columns: both definite and different.
bool clash(const std::string& a, const std::string& b) { return definite(a) && definite(b) && a != b; }

json leaf_list(const Report& r) {
  json out = json::array();
  for (const auto& l : r.leaves)
    out.push_back({{"group", l.group}, {"kind", std::string(to_string(l.kind))}, {"path", l.role_path},
                   {"verdict", answer_of(l.verdict)}});
  return out;
}

// NO answers that rest on some front never escaping; the oracle must see it.
bool front_based_no(const json& leaf_evidence) {
  if (!leaf_evidence.contains("positiveExpansivityOfH")) return false;
  const json& inner = leaf_evidence["positiveExpansivityOfH"]["evidence"];
  const std::string w = inner.value("witness", std::string());
  return w == "oneSidedDegrees" || w == "singularDeterminant";
}

json corpus_row(const Input& in, const CorpusOptions& opt) {
  const Gca& f = in.rule;
  const bool linear = elementary_abelian_basis(f.group()).has_value();
  json row{{"file", in.path}, {"name", in.name}, {"group", describe(f.group())}, {"radius", f.radius()}};
  json cols = json::object();
  bool agree = true;
  std::string answer;
  const std::string& p = opt.property;

  if (p == "injectivity" || p == "surjectivity") {
    const bool inj = p == "injectivity";
    answer = column([&] { return answer_of(inj ? is_injective(f) : is_surjective(f)); });
    cols["linear"] = linear ? answer_of(inj ? lin_is_injective(linearize(f)) : lin_is_surjective(linearize(f)))
                            : "n/a";
    agree = !clash(answer, cols["linear"]);
  } else if (p == "positive-expansivity") {
    Verdict v = decide_positive_expansive(f, opt.budget);
    answer = answer_of(v);
    if (linear && linearize(f).dim() == 1) {
      LaurentMatrix m = linearize(f);
      cols["direct"] = answer_of(scalar_pos_expansive(m.at(0, 0)));
    } else {
      cols["direct"] = "n/a";
    }
    auto o = front_escape_oracle(f, opt.germ_width, opt.horizon, OracleMode::Positive);
    cols["oracle"] = to_string(o.outcome);
    agree = !clash(answer, cols["direct"]);
    if (answer == "YES" && o.outcome == OracleOutcome::Refuted) agree = false;
    if (answer == "NO" && v.evidence.value("witness", std::string()) == "oneSidedDegrees" &&
        o.outcome == OracleOutcome::LooksExpansive)
      agree = false;
  } else if (p == "expansivity") {
    Report r = decide_expansive(f, opt.budget);
    answer = answer_of(r.combined);
    row["leaves"] = leaf_list(r);
    const bool injective = r.combined.reason != "NotInjective";
    cols["direct"] = linear && injective ? column([&] { return answer_of(lin_expansive_direct(linearize(f), opt.budget)); })
                                         : "n/a";
    if (injective) {
      cols["oracle"] = column([&] {
        return to_string(front_escape_oracle(f, opt.germ_width, opt.horizon, OracleMode::Expansive).outcome);
      });
    } else {
      cols["oracle"] = "n/a";
    }
    agree = !clash(answer, cols["direct"]);
    if (answer == "YES" && cols["oracle"] == "refutedBy") agree = false;
    if (answer == "NO" && cols["oracle"] == "looksExpansive")
      for (const auto& l : r.leaves)
        if (l.verdict.answer == Answer::No && front_based_no(l.verdict.evidence)) agree = false;
  } else if (p == "transitivity") {
    Report r = decide_transitive(f, opt.budget);
    answer = answer_of(r.combined);
    row["leaves"] = leaf_list(r);
    cols["linear"] = linear ? answer_of(lin_is_transitive(linearize(f))) : "n/a";
    agree = !clash(answer, cols["linear"]);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown property '" + p + "'");
  }
  row["answer"] = answer;
  row["crossCheck"] = cols;
  row["agree"] = agree;
  return row;
}

}  // namespace

json run_corpus(const std::vector<std::string>& all_files, const CorpusOptions& opt) {
  std::vector<std::string> files = all_files;
  if (opt.sample > 0 && opt.sample < files.size()) {
    std::mt19937_64 rng(opt.seed);
    std::shuffle(files.begin(), files.end(), rng);
    files.resize(opt.sample);
    std::sort(files.begin(), files.end());
  }
  // Parse everything up front so a bad file is a usage error, not a row.
  std::vector<Input> inputs;
  for (const auto& path : files) inputs.push_back(load_input(path));

  std::vector<json> rows(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < inputs.size();) {
      try {
        rows[i] = corpus_row(inputs[i], opt);
      } catch (const std::exception& e) {
        rows[i] = {{"file", inputs[i].path}, {"name", inputs[i].name}, {"error", e.what()}, {"agree", true}};
      }
      rows[i]["index"] = i;
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(inputs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t disagreements = 0, errors = 0;
  json counts = json::object();
  for (const auto& r : rows) {
    if (!r.at("agree").get<bool>()) ++disagreements;
    if (r.contains("error")) ++errors;
    else counts[r.at("answer").get<std::string>()] = counts.value(r.at("answer").get<std::string>(), 0) + 1;
  }
  return {{"property", opt.property},
          {"budget", opt.budget},
          {"horizon", opt.horizon},
          {"germWidth", opt.germ_width},
          {"seed", opt.seed},
          {"instances", rows.size()},
          {"answers", counts},
          {"errors", errors},
          {"disagreements", disagreements},
          {"rows", rows}};
}

}  // namespace gca::cli
