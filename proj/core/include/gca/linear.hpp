#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gca/laurent.hpp"
#include "gca/rule.hpp"
#include "gca/verdict.hpp"

namespace gca {

// Finite configuration over (Z/pZ)^n: position -> coordinate vector. Zero
// vectors are not stored.
using VecConfig = std::map<long long, std::vector<std::uint32_t>>;
using GfMatrix = std::vector<std::vector<std::uint32_t>>;

// Throws NotElementaryAbelian.
LaurentMatrix linearize(const Gca& f);
// The GCA on g (elementary abelian, dimension = m.dim()) with matrix m.
Gca to_gca(const FiniteGroup& g, const LaurentMatrix& m);

VecConfig lin_apply(const LaurentMatrix& m, const VecConfig& c);

Verdict lin_is_injective(const LaurentMatrix& m);
Verdict lin_is_surjective(const LaurentMatrix& m);
// Throws NotInjective.
LaurentMatrix lin_invert(const LaurentMatrix& m);

Verdict scalar_pos_expansive(const LaurentPoly& f);

enum class Side { Left, Right };

struct PosExpOptions {
  int budget = 24;
  bool injectivity_shortcut = true;
  bool fast_path = true;
};

struct PosExpVerdict {
  Answer answer = Answer::Unknown;
  std::optional<int> left_bound, right_bound;
  // oneSidedDegrees | singularDeterminant | boxedOrbit | injective
  std::string witness_kind;
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json budget = nlohmann::json::object();
  std::string reason;

  Verdict as_verdict() const;
};

PosExpVerdict lin_pos_expansive(const LaurentMatrix& m, const PosExpOptions& opt = {});

// Q_K: projection onto the front cell of the K-step trapped windows. Left
// fronts: support in (-inf, 0] with c_0 != 0 that stay in (-inf, 0] for steps
// 1..K. Returns a row-reduced basis; empty means every front escapes within K.
GfMatrix trapped_projection(const LaurentMatrix& m, int k, Side side);

// Largest subspace of configurations supported in [-len, 0] whose forward
// orbit stays in that box. Row-reduced basis.
GfMatrix boxed_subspace(const LaurentMatrix& m, int len);

// Nonzero finite c with F(c) = 0, searched over supports of width <= max_width.
std::optional<VecConfig> finite_kernel_vector(const LaurentMatrix& m, int max_width);

// Re-runs the NO witness of a positive-expansivity (or expansivity) verdict by
// direct iteration for `horizon` steps.
bool recheck_witness(const LaurentMatrix& m, const std::string& kind, const nlohmann::json& payload, int horizon,
                     bool two_sided);

// Expansivity through H = F - F^-1. NO with reason NotInjective when F is not.
Verdict lin_is_expansive(const LaurentMatrix& m, int budget = 24);
// Two-sided trapped windows over powers M^t, 0 < |t| <= K. Cross-check only.
Verdict lin_expansive_direct(const LaurentMatrix& m, int budget = 24);

Verdict lin_is_transitive(const LaurentMatrix& m);

// Row reduction over Z/pZ; returns the rank and leaves `a` in reduced form.
std::size_t gf_rref(GfMatrix& a, std::uint32_t p);
// Basis of {x : a x = 0}, `cols` unknowns.
GfMatrix gf_nullspace(GfMatrix a, std::size_t cols, std::uint32_t p);

nlohmann::json vec_config_to_json(const VecConfig& c);
VecConfig vec_config_from_json(const nlohmann::json& j);

}  // namespace gca
