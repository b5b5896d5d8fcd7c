#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gca/configuration.hpp"
#include "gca/group.hpp"

namespace gca {

enum class RuleKind { IdentityLike, ShiftLike, General };

// A group cellular automaton given by its local rule
//
//   F(c)_i = h_{-r}(c_{i-r}) · ... · h_r(c_{i+r})
//
// with pairwise commuting endomorphism images. Values are normalized: trivial
// endomorphisms at both extreme offsets are trimmed, so unless the radius is 0
// one of h_{-r}, h_r is non-trivial.
class Gca {
 public:
  // `endos` lists offsets -radius..radius. Throws CentralizerViolation.
  Gca(FiniteGroup group, int radius, std::vector<Endomorphism> endos);

  static Gca identity(const FiniteGroup& g);
  // Single identity endomorphism at `offset`; offset 1 is the shift σ(c)_i = c_{i+1}.
  static Gca shift(const FiniteGroup& g, int offset = 1);

  const FiniteGroup& group() const { return group_; }
  int radius() const { return radius_; }
  // Trivial endomorphism outside the radius.
  const Endomorphism& endo(int offset) const;
  const std::vector<Endomorphism>& endos() const { return endos_; }

  RuleKind kind() const;
  // Offset s when F = σ^s (one non-trivial endomorphism, equal to the identity).
  std::optional<int> pure_shift_offset() const;

  Elem apply_window(std::span<const Elem> window) const;

  friend bool operator==(const Gca& a, const Gca& b) {
    return a.radius_ == b.radius_ && a.group_.equivalent(b.group_) && a.endos_ == b.endos_;
  }

 private:
  FiniteGroup group_;
  int radius_ = 0;
  std::vector<Endomorphism> endos_;
};

// Validating constructor with the error listing the offending pair.
Gca validate_rule(const FiniteGroup& g, int radius, std::vector<Endomorphism> endos);

Configuration apply(const Gca& f, const Configuration& c);
Configuration iterate(const Gca& f, const Configuration& c, long long steps);

// F ∘ G.
Gca compose(const Gca& f, const Gca& g);
Gca power(const Gca& f, int t);

bool preserves_subgroup(const Gca& f, const Subgroup& h);
// GCA on h.as_group(). Throws NotInvariant.
Gca restrict_to(const Gca& f, const Subgroup& h);
// GCA on q.group. Throws NotInvariant.
Gca quotient_gca(const Gca& f, const QuotientGroup& q);

// Cell-wise projections used by the compatibility properties.
Configuration project(const QuotientGroup& q, const Configuration& c);
Configuration to_subgroup(const Subgroup& h, const Configuration& c);

}  // namespace gca
