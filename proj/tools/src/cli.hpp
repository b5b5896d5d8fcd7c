#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gca/rule.hpp"

namespace gca::cli {

// Exit codes under --strict; without it every completed run exits 0.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 3;

// Runs the `gca` command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Input {
  std::string path;
  std::string name;
  nlohmann::json doc;
  Gca rule;
};

// A rule document, either bare or wrapped as {"name":..., "rule":{...}}.
Input load_input(const std::string& path);

// Full report for one property; `verdict` always holds the top-level answer.
nlohmann::json check_document(const Input& in, const std::string& property, int budget);

struct CorpusOptions {
  std::string property = "expansivity";
  int budget = 24;
  int horizon = 40;
  int germ_width = 6;
  unsigned jobs = 1;
  std::size_t sample = 0;  // 0 = every file
  unsigned long long seed = 0;
};

// Sorted glob expansion. Throws Error(InvalidArgument) when nothing matches.
std::vector<std::string> expand_glob(const std::string& pattern);

nlohmann::json run_corpus(const std::vector<std::string>& files, const CorpusOptions& opt);

// Re-checks the witnesses embedded in a check document.
nlohmann::json verify_evidence(const nlohmann::json& report, int horizon = 40);

}  // namespace gca::cli
