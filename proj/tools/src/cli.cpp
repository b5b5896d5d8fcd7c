#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "gca/debruijn.hpp"
#include "gca/decide.hpp"
#include "gca/error.hpp"
#include "gca/io.hpp"
#include "gca/linear.hpp"
#include "gca/simulate.hpp"

namespace gca::cli {

using nlohmann::json;

namespace {

struct Common {
  std::string input;
  int budget = 24;
  std::string format = "text";
  bool strict = false;
  int horizon = 40;
  int germ_width = 6;
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

int exit_for(const std::string& answer, bool strict) {
  if (!strict) return kExitYes;
  if (answer == "YES") return kExitYes;
  if (answer == "NO") return kExitNo;
  return kExitUnknown;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void print_check_text(const json& doc, std::ostream& out) {
  const json& v = doc.at("verdict");
  out << doc.at("name").get<std::string>() << ": " << doc.at("property").get<std::string>() << " "
      << v.at("answer").get<std::string>() << "\n";
  if (v.contains("reason")) out << "reason: " << v.at("reason").get<std::string>() << "\n";
  if (doc.contains("report")) {
    for (const auto& line : doc["report"]["narrative"]) out << "  " << line.get<std::string>() << "\n";
    for (const auto& a : doc["report"]["assumptions"]) out << "  assumption: " << a.get<std::string>() << "\n";
  } else {
    out << "evidence: " << v.at("evidence").dump() << "\n";
  }
  if (v.contains("budgetUsed")) out << "budget used: " << v.at("budgetUsed").dump() << "\n";
}

void print_corpus_text(const json& rep, std::ostream& out) {
  out << "property " << rep["property"].get<std::string>() << ", " << rep["instances"] << " instances, "
      << rep["disagreements"] << " disagreements, " << rep["errors"] << " errors\n";
  for (const auto& r : rep["rows"]) {
    out << r["index"] << "\t" << r["name"].get<std::string>() << "\t";
    if (r.contains("error")) {
      out << "error: " << r["error"].get<std::string>() << "\n";
      continue;
    }
    out << r["group"].get<std::string>() << "\t" << r["answer"].get<std::string>();
    for (auto& [k, v] : r["crossCheck"].items()) out << "\t" << k << "=" << v.get<std::string>();
    out << "\t" << (r["agree"].get<bool>() ? "agree" : "DISAGREE");
    if (r.contains("leaves")) {
      out << "\tleaves:";
      for (const auto& l : r["leaves"])
        out << " " << l["group"].get<std::string>() << "[" << l["verdict"].get<std::string>() << "]";
    }
    out << "\n";
  }
}

Configuration start_config(const Input& in, const std::string& config_arg) {
  if (!config_arg.empty()) {
    json j = config_arg.front() == '{' ? json::parse(config_arg) : read_json_file(config_arg);
    return config_from_json(in.rule.group(), j);
  }
  if (in.doc.is_object() && in.doc.contains("config")) return config_from_json(in.rule.group(), in.doc["config"]);
  return Configuration::finite({{0, 1}});
}

std::vector<Elem> parse_word(const std::string& s) {
  std::vector<Elem> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<Elem>(std::stoul(item)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad element '" + item + "' in word '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision toolkit and simulator for group cellular automata", "gca"};
  app.require_subcommand(1);
  Common c;

  auto* check = app.add_subcommand("check", "Decide a property of a rule");
  std::string property = "expansivity";
  check->add_option("input", c.input, "Rule document (JSON)")->required();
  check->add_option("--property", property, "Property to decide")
      ->check(CLI::IsMember({"injectivity", "surjectivity", "positive-expansivity", "expansivity", "transitivity"}));
  check->add_option("--budget", c.budget, "Trapped-window budget")->check(CLI::PositiveNumber);
  check->add_flag("--strict", c.strict, "Exit 0/1/2 for YES/NO/UNKNOWN");
  add_format(check, c);

  auto* decomp = app.add_subcommand("decompose", "Print the fully invariant decomposition tree");
  bool largest = false;
  decomp->add_option("input", c.input, "Rule document (JSON)")->required();
  decomp->add_flag("--largest-first", largest, "Split on the largest fully invariant subgroup");
  add_format(decomp, c);

  auto* inv = app.add_subcommand("invert", "Compute the inverse rule");
  inv->add_option("input", c.input, "Rule document (JSON)")->required();
  add_format(inv, c);

  auto* sim = app.add_subcommand("simulate", "Space-time diagram of an orbit");
  sim->alias("spacetime");
  int steps = 20;
  std::string render = "ascii", out_path, config_arg;
  sim->add_option("input", c.input, "Rule document (JSON)")->required();
  sim->add_option("--steps", steps, "Number of rows")->check(CLI::PositiveNumber);
  sim->add_option("--config", config_arg, "Start configuration: JSON text or file (default: doc's \"config\" or a single symbol 1 at 0)");
  sim->add_option("--render", render, "Output rendering")->check(CLI::IsMember({"ascii", "ppm"}));
  sim->add_option("--out", out_path, "Write the rendering here");
  add_format(sim, c);

  auto* front = app.add_subcommand("front", "Front trajectories, escape times and the germ-sweep oracle");
  std::string side = "left", core, tail = "0", mode = "expansive";
  long long k = 0;
  front->add_option("input", c.input, "Rule document (JSON)")->required();
  front->add_option("--side", side, "Front side")->check(CLI::IsMember({"left", "right"}));
  front->add_option("--core", core, "Comma-separated core word; without it the whole germ family is swept");
  front->add_option("--k", k, "Front position");
  front->add_option("--tail", tail, "Comma-separated tail period");
  front->add_option("--mode", mode, "Oracle mode")->check(CLI::IsMember({"expansive", "positive"}));
  front->add_option("--horizon", c.horizon, "Iterations in each time direction")->check(CLI::PositiveNumber);
  front->add_option("--germ-width", c.germ_width, "Germ core width")->check(CLI::PositiveNumber);
  front->add_flag("--strict", c.strict, "Exit 0/1/2 for looksExpansive/refutedBy/inconclusive");
  add_format(front, c);

  auto* corpus = app.add_subcommand("corpus", "Run a property over many rule files with cross-checks");
  CorpusOptions copt;
  std::string pattern;
  corpus->add_option("glob", pattern, "File glob, e.g. 'corpus/*.json'")->required();
  corpus->add_option("--property", copt.property, "Property")
      ->check(CLI::IsMember({"injectivity", "surjectivity", "positive-expansivity", "expansivity", "transitivity"}));
  corpus->add_option("--budget", copt.budget)->check(CLI::PositiveNumber);
  corpus->add_option("--horizon", copt.horizon)->check(CLI::PositiveNumber);
  corpus->add_option("--germ-width", copt.germ_width)->check(CLI::PositiveNumber);
  corpus->add_option("--jobs", copt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  corpus->add_option("--sample", copt.sample, "Run a seeded random subset of this size");
  corpus->add_option("--seed", copt.seed, "Sampling seed");
  add_format(corpus, c);

  auto* verify = app.add_subcommand("verify-evidence", "Re-check the witnesses in a `check --format json` report");
  verify->add_option("input", c.input, "Report document (JSON)")->required();
  verify->add_option("--horizon", c.horizon, "Steps for witness replays")->check(CLI::PositiveNumber);
  add_format(verify, c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const bool as_json = c.format == "json";
  try {
    if (*check) {
      json doc = check_document(load_input(c.input), property, c.budget);
      if (as_json) out << doc.dump(2) << "\n";
      else print_check_text(doc, out);
      return exit_for(doc["verdict"]["answer"], c.strict);
    }
    if (*decomp) {
      Input in = load_input(c.input);
      auto tree = decompose(in.rule, largest ? SplitChoice::LargestFirst : SplitChoice::SmallestFirst);
      json j = tree.to_json();
      if (as_json) {
        out << j.dump(2) << "\n";
      } else {
        out << in.name << ": depth " << tree.depth() << ", " << tree.leaves().size() << " leaves\n";
        for (const auto* leaf : tree.leaves())
          out << "  " << describe(leaf->rule.group()) << " (" << to_string(leaf->kind) << ")\n";
      }
      return 0;
    }
    if (*inv) {
      Input in = load_input(c.input);
      Gca g = invert(in.rule);
      json j{{"name", in.name}, {"inverse", rule_to_json(g)}};
      const bool linear = elementary_abelian_basis(g.group()).has_value();
      if (linear) j["matrix"] = linearize(g).to_strings();
      if (as_json) {
        out << j.dump(2) << "\n";
      } else if (linear) {
        out << linearize(g).to_string() << "\n";
      } else {
        out << "inverse rule, radius " << g.radius() << "\n" << j["inverse"].dump(2) << "\n";
      }
      return 0;
    }
    if (*sim) {
      Input in = load_input(c.input);
      auto grid = spacetime(in.rule, start_config(in, config_arg), steps);
      if (render == "ppm" && out_path.empty())
        throw Error(ErrorKind::InvalidArgument, "--render ppm needs --out");
      const std::string bytes = render == "ppm" ? render_ppm(grid) : render_ascii(grid);
      if (!out_path.empty()) write_file(out_path, bytes);
      if (as_json) {
        out << json{{"name", in.name}, {"steps", steps}, {"firstColumn", grid.first_column}, {"rows", grid.rows}}.dump()
            << "\n";
      } else if (out_path.empty()) {
        out << "first column " << grid.first_column << "\n" << bytes;
      } else {
        out << "wrote " << out_path << " (" << grid.rows.size() << " rows)\n";
      }
      return 0;
    }
    if (*front) {
      Input in = load_input(c.input);
      const OracleMode om = mode == "positive" ? OracleMode::Positive : OracleMode::Expansive;
      auto d = Dynamics::of(in.rule, om == OracleMode::Expansive);
      if (!core.empty()) {
        FrontConfig fc = side == "left" ? make_left_front(k, parse_word(core), parse_word(tail))
                                        : make_right_front(k, parse_word(core), parse_word(tail));
        auto t = trajectory(d, fc, c.horizon);
        auto m = escape_time(d, fc, c.horizon);
        json j{{"name", in.name}, {"front", fc.to_json()}, {"trajectory", t.to_json()},
               {"escapeTime", m ? json(*m) : json(nullptr)}, {"horizon", c.horizon}};
        if (as_json) {
          out << j.dump(2) << "\n";
        } else {
          out << "forward positions: " << j["trajectory"]["forward"].dump() << "\n";
          if (t.backward) out << "backward positions: " << j["trajectory"]["backward"].dump() << "\n";
          out << "escaped at: " << j["trajectory"]["escapedAt"].dump() << ", m(c) = " << j["escapeTime"].dump()
              << "\n";
        }
        return exit_for(m ? "YES" : "NO", c.strict);
      }
      auto o = front_escape_oracle(in.rule, c.germ_width, c.horizon, om);
      json j{{"name", in.name}, {"oracle", o.to_json()}};
      if (d.reversible()) {
        auto est = estimate_kF(d, c.germ_width, c.horizon);
        j["kF"] = est.k ? json(*est.k) : json(nullptr);
      }
      if (as_json) {
        out << j.dump(2) << "\n";
      } else {
        out << in.name << ": " << to_string(o.outcome) << " (" << o.germs << " germs, width " << o.germ_width
            << ", horizon " << o.horizon << ")\n";
        if (o.refuted_by) out << "  stuck germ: " << o.refuted_by->to_json().dump() << "\n";
        if (j.contains("kF")) out << "  estimated kF: " << j["kF"].dump() << "\n";
        out << "  " << o.note << "\n";
      }
      const std::string a = o.outcome == OracleOutcome::LooksExpansive ? "YES"
                            : o.outcome == OracleOutcome::Refuted      ? "NO"
                                                                       : "UNKNOWN";
      return exit_for(a, c.strict);
    }
    if (*corpus) {
      json rep = run_corpus(expand_glob(pattern), copt);
      if (as_json) out << rep.dump(2) << "\n";
      else print_corpus_text(rep, out);
      return rep["disagreements"].get<std::size_t>() == 0 ? 0 : 1;
    }
    if (*verify) {
      json rep = verify_evidence(read_json_file(c.input), c.horizon);
      if (as_json) {
        out << rep.dump(2) << "\n";
      } else {
        for (const auto& ch : rep["checks"])
          out << (ch["ok"].get<bool>() ? "ok    " : "FAIL  ") << ch["check"].get<std::string>() << "\n";
        out << (rep["ok"].get<bool>() ? "evidence confirmed" : "evidence REJECTED") << "\n";
      }
      return rep["ok"].get<bool>() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gca::cli
