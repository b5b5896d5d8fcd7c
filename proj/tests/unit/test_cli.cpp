#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using gca::cli::run;
using nlohmann::json;

namespace {

const std::string kCorpus = GCA_CORPUS_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run gca_cmd(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gca_cli_test_" + name)).string();
}

}  // namespace

TEST_CASE("check exit codes under --strict") {
  const std::string ex = kCorpus + "/example1.json";
  CHECK(gca_cmd({"check", ex, "--property", "expansivity", "--strict"}).code == gca::cli::kExitNo);
  CHECK(gca_cmd({"check", ex, "--property", "transitivity", "--strict"}).code == gca::cli::kExitYes);
  CHECK(gca_cmd({"check", ex, "--property", "injectivity", "--strict"}).code == gca::cli::kExitYes);
  CHECK(gca_cmd({"check", ex, "--property", "expansivity"}).code == 0);
  Run r = gca_cmd({"check", ex, "--property", "expansivity", "--format", "json"});
  CHECK(json::parse(r.out).at("verdict").at("answer") == "NO");
}

TEST_CASE("usage errors exit 3") {
  CHECK(gca_cmd({}).code == gca::cli::kExitUsage);
  CHECK(gca_cmd({"frobnicate"}).code == gca::cli::kExitUsage);
  CHECK(gca_cmd({"check", "/nonexistent.json"}).code == gca::cli::kExitUsage);
  CHECK(gca_cmd({"check", kCorpus + "/example1.json", "--property", "nope"}).code == gca::cli::kExitUsage);
  Run empty = gca_cmd({"corpus", kCorpus + "/no-such-dir/*.json"});
  CHECK(empty.code == gca::cli::kExitUsage);
  CHECK_FALSE(empty.err.empty());
  CHECK(gca_cmd({"simulate", kCorpus + "/example1.json", "--render", "ppm"}).code == gca::cli::kExitUsage);
}

TEST_CASE("invert prints the inverse matrix") {
  Run r = gca_cmd({"invert", kCorpus + "/example1.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[[X, 1], [1, 0]]") != std::string::npos);
  CHECK(gca_cmd({"invert", kCorpus + "/linear/zero_f2.json"}).code != 0);
}

TEST_CASE("check reports round trip through verify-evidence") {
  for (const char* file : {"/example1.json", "/linear/trapped_f2.json", "/groups/s3_sign_pair.json",
                           "/groups/shift_a5.json", "/linear/one_plus_x_f2.json"})
    for (const char* prop : {"injectivity", "surjectivity", "positive-expansivity", "expansivity", "transitivity"}) {
      CAPTURE(file);
      CAPTURE(prop);
      Run r = gca_cmd({"check", kCorpus + file, "--property", prop, "--format", "json"});
      REQUIRE(r.code == 0);
      const std::string path = temp_path("report.json");
      std::ofstream(path) << r.out;
      Run v = gca_cmd({"verify-evidence", path, "--format", "json"});
      CHECK(v.code == 0);
      CHECK(json::parse(v.out).at("ok") == true);
    }
}

TEST_CASE("tampered evidence is rejected") {
  Run r = gca_cmd({"check", kCorpus + "/linear/zero_f2.json", "--property", "surjectivity", "--format", "json"});
  json doc = json::parse(r.out);
  REQUIRE(doc.at("verdict").at("answer") == "NO");
  // Swap in a rule that is onto; the recorded orphan no longer is one.
  doc["rule"] = {{"prime", 2}, {"laurent", json::array({json::array({"1"})})}};
  const std::string path = temp_path("tampered.json");
  std::ofstream(path) << doc.dump();
  CHECK(gca_cmd({"verify-evidence", path}).code == 1);
}

TEST_CASE("simulate renders ascii and ppm") {
  Run a = gca_cmd({"simulate", kCorpus + "/linear/one_plus_x_f2.json", "--steps", "4", "--config",
                   R"({"kind":"finite","support":{"0":1}})"});
  REQUIRE(a.code == 0);
  // 1 + X: each row is the previous one XOR its right neighbour.
  std::istringstream lines(a.out);
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);)
    if (l.rfind("first column", 0) != 0) rows.push_back(l);
  REQUIRE(rows.size() == 4);
  for (std::size_t t = 1; t < rows.size(); ++t)
    for (std::size_t j = 0; j + 1 < rows[t].size(); ++j)
      CHECK((rows[t][j] == '1') == ((rows[t - 1][j] == '1') != (rows[t - 1][j + 1] == '1')));
  const std::string out = temp_path("grid.ppm");
  CHECK(gca_cmd({"simulate", kCorpus + "/linear/one_plus_x_f2.json", "--steps", "4", "--render", "ppm", "--out", out})
            .code == 0);
  std::ifstream in(out, std::ios::binary);
  std::string magic;
  in >> magic;
  CHECK(magic == "P6");
}

TEST_CASE("front command") {
  Run stuck = gca_cmd({"front", kCorpus + "/example1.json", "--side", "left", "--core", "1", "--strict"});
  CHECK(stuck.code == gca::cli::kExitNo);
  Run esc = gca_cmd({"front", kCorpus + "/example1.json", "--side", "right", "--core", "1", "--strict"});
  CHECK(esc.code == gca::cli::kExitYes);
  Run sweep = gca_cmd({"front", kCorpus + "/groups/shift_z2.json", "--format", "json"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find("looksExpansive") != std::string::npos);
}

TEST_CASE("corpus runs are reproducible and agree") {
  const std::vector<std::string> args{"corpus", kCorpus + "/groups/*.json", "--property", "expansivity",
                                      "--format", "json", "--jobs", "3"};
  Run a = gca_cmd(args), b = gca_cmd(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(j.at("disagreements") == 0);
  CHECK(j.at("instances") == 18);
}
