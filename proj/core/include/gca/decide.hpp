#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gca/rule.hpp"
#include "gca/verdict.hpp"

namespace gca {

enum class LeafKind { AbelianElementary, NonAbelianSimpleProduct, Unsupported };
std::string_view to_string(LeafKind k);

enum class SplitChoice { SmallestFirst, LargestFirst };

// One node of the decomposition. Inner nodes split on a non-trivial proper
// fully invariant subgroup into (quotient, restriction) children.
struct DecompNode {
  Gca rule;
  std::string role;  // "root", "quotient", "restriction"
  std::optional<std::size_t> split_order;  // |H| at inner nodes
  std::vector<DecompNode> children;
  LeafKind kind = LeafKind::Unsupported;  // leaves only

  bool is_leaf() const { return children.empty(); }
};

struct DecompositionTree {
  DecompNode root;
  std::vector<const DecompNode*> leaves() const;
  int depth() const;
  nlohmann::json to_json() const;
};

DecompositionTree decompose(const Gca& f, SplitChoice choice = SplitChoice::SmallestFirst);
LeafKind classify_leaf(const FiniteGroup& g);

struct BlockAnalysis {
  std::vector<std::size_t> factors;           // factor indices in the block
  std::vector<std::vector<std::size_t>> J;    // offset -r..r -> factors spanned by Im(h_i)
  int delta = 0;
  bool surjective = false;
  std::optional<std::pair<int, int>> shift_power;  // (K, e) with F^K = σ^e on the block
};

struct NonAbelianAnalysis {
  std::size_t factor_count = 0;
  int radius = 0;
  std::vector<BlockAnalysis> blocks;
  nlohmann::json to_json() const;
};

// Leaf rule on S_1 × ... × S_m (a product group, or a single simple group).
// Throws AssumptionViolated when some Im(h_i) is not a sub-product of factors.
NonAbelianAnalysis analyze_nonabelian(const Gca& f, bool search_shift_power = true);

enum class Property { Expansivity, Transitivity };

Verdict decide_leaf(const DecompNode& leaf, Property prop, int budget);

struct LeafResult {
  std::string group;
  LeafKind kind;
  std::string role_path;
  Verdict verdict;
};

struct Report {
  std::string property;
  DecompositionTree tree;
  std::vector<LeafResult> leaves;
  Verdict combined;
  std::vector<std::string> narrative;
  std::vector<std::string> assumptions;
  nlohmann::json to_json() const;
};

Report decide_expansive(const Gca& f, int budget = 24, SplitChoice choice = SplitChoice::SmallestFirst);
// Linear rules run the full ladder; other groups only get the NO answers
// that follow from injectivity or non-surjectivity.
Verdict decide_positive_expansive(const Gca& f, int budget = 24);

Report decide_transitive(const Gca& f, int budget = 24, SplitChoice choice = SplitChoice::SmallestFirst);

struct NamedRule {
  std::string name;
  Gca rule;
};

// Counts instances decided expansive YES but transitive NO.
nlohmann::json check_exp_implies_trans(const std::vector<NamedRule>& corpus, int budget = 24);

}  // namespace gca
