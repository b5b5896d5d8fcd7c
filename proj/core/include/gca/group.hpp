#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gca {

// Elements are dense indices into their parent group; 0 is always the identity.
using Elem = std::uint32_t;

enum class GroupKind { Cyclic, Table, Permutation, Product };

class Endomorphism;
class Subgroup;

// Immutable finite group. Copies share the same underlying tables, so copying
// is cheap and `same_as` tells whether two handles denote the same object.
class FiniteGroup {
 public:
  static FiniteGroup cyclic(std::size_t m);

  // `table[a][b]` is the index of a*b. The identity is moved to index 0.
  static FiniteGroup from_table(std::vector<std::string> names,
                                const std::vector<std::vector<std::size_t>>& table,
                                std::string label = {});

  // Generators in one-line notation on {0..degree-1}. Product is composition
  // (a*b)(x) = a(b(x)).
  static FiniteGroup permutation(std::size_t degree,
                                 const std::vector<std::vector<std::size_t>>& generators);

  // Component-wise product; element index is mixed-radix with the first factor
  // most significant.
  static FiniteGroup product(std::vector<FiniteGroup> factors);

  GroupKind kind() const;
  std::size_t order() const;
  Elem op(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  static constexpr Elem identity() { return 0; }

  Elem power(Elem a, long long k) const;
  std::size_t element_order(Elem a) const;

  const std::string& label() const;
  std::string element_name(Elem a) const;

  // Product kind only (empty otherwise).
  const std::vector<FiniteGroup>& factors() const;
  std::vector<Elem> components(Elem a) const;
  Elem from_components(std::span<const Elem> parts) const;

  // Cyclic kind: the modulus.
  std::size_t cyclic_modulus() const;

  // Some generating set (cheap, not necessarily minimal).
  const std::vector<Elem>& generators() const;
  // Greedy small generating set: repeatedly adds the element that enlarges the
  // generated subgroup the most.
  const std::vector<Elem>& minimal_generators() const;

  // Memoized End(G); see endomorphisms().
  const std::vector<Endomorphism>& endomorphism_cache() const;

  bool same_as(const FiniteGroup& other) const { return impl_ == other.impl_; }
  // Same order and same multiplication table.
  bool equivalent(const FiniteGroup& other) const;

  struct Impl;
  friend struct GroupAccess;

 private:
  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

class Subgroup {
 public:
  // Validates closure; `elements` need not be sorted.
  Subgroup(FiniteGroup parent, std::vector<Elem> elements);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Elem>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Elem a) const;
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_whole() const { return elements_.size() == parent_.order(); }

  // The subgroup as a group in its own right; local index i is elements()[i].
  // Built once and shared by all copies.
  const FiniteGroup& as_group() const;
  // Local index of a parent element (must be contained).
  Elem local_index(Elem a) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elements_ == b.elements_;
  }

 private:
  FiniteGroup parent_;
  std::vector<Elem> elements_;
  std::vector<bool> member_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

class Endomorphism {
 public:
  // Checks images[0] == 0 and the homomorphism law.
  Endomorphism(FiniteGroup group, std::vector<Elem> images);

  static Endomorphism identity(const FiniteGroup& g);
  static Endomorphism trivial(const FiniteGroup& g);
  // Extends a generator assignment to a homomorphism; nullopt if inconsistent.
  static std::optional<Endomorphism> from_generator_images(const FiniteGroup& g,
                                                           std::span<const Elem> generators,
                                                           std::span<const Elem> images);

  const FiniteGroup& group() const { return group_; }
  const std::vector<Elem>& images() const { return images_; }
  Elem operator()(Elem a) const { return images_[a]; }
  bool is_trivial() const;
  bool is_identity() const;

  // (this ∘ other)(x) = this(other(x))
  Endomorphism after(const Endomorphism& other) const;

  friend bool operator==(const Endomorphism& a, const Endomorphism& b) {
    return a.images_ == b.images_;
  }

 private:
  struct Unchecked {};
  Endomorphism(FiniteGroup group, std::vector<Elem> images, Unchecked)
      : group_(std::move(group)), images_(std::move(images)) {}
  friend std::vector<Endomorphism> endomorphisms(const FiniteGroup& g);
  friend Endomorphism pointwise_product(const std::vector<Endomorphism>& maps);

  FiniteGroup group_;
  std::vector<Elem> images_;
};

// x ↦ m_1(x) · m_2(x) ⋯ ; the images must pairwise commute for the result to
// be a homomorphism (checked).
Endomorphism pointwise_product(const std::vector<Endomorphism>& maps);

// True iff images[a*b] == images[a]*images[b] for all a, b (via generators).
bool is_homomorphism(const FiniteGroup& g, std::span<const Elem> images);

struct QuotientGroup {
  FiniteGroup parent;
  Subgroup normal;
  std::vector<std::vector<Elem>> cosets;  // coset 0 is the normal subgroup
  std::vector<Elem> projection;           // parent element -> coset index
  FiniteGroup group;                      // table group on cosets
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);

std::vector<Subgroup> subgroups(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> elems);
QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n);

std::vector<Endomorphism> endomorphisms(const FiniteGroup& g);
bool is_fully_invariant(const FiniteGroup& g, const Subgroup& h);
// All fully invariant subgroups, sorted by order (ties by element list).
std::vector<Subgroup> fully_invariant_subgroups(const FiniteGroup& g);
bool is_invariantly_simple(const FiniteGroup& g);
bool is_simple(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g);

struct ElementaryAbelianBasis {
  std::uint32_t prime = 0;
  std::size_t dimension = 0;
  std::vector<Elem> basis;
  std::vector<std::vector<std::uint32_t>> coords;  // element -> coordinate vector
  std::vector<Elem> from_coords_table;             // mixed radix, first coordinate most significant

  Elem from_coords(std::span<const std::uint32_t> v) const;
};

// Uses the natural coordinates for Z/pZ and products of Z/pZ; otherwise a
// greedily chosen basis.
std::optional<ElementaryAbelianBasis> elementary_abelian_basis(const FiniteGroup& g);

// Witness map G1 -> G2 (indexed by G1 elements).
std::optional<std::vector<Elem>> are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> s);

// Short structural name: "Z/4Z", "(Z/2Z)^2", otherwise the group's label.
std::string describe(const FiniteGroup& g);

Subgroup endo_image(const Endomorphism& h);
Subgroup endo_kernel(const Endomorphism& h);
// Restriction to H, as an endomorphism of H.as_group(). Throws NotInvariant.
Endomorphism endo_restrict(const Endomorphism& h, const Subgroup& sub);
// Induced map on G/N. Throws NotNormal / NotInvariant.
Endomorphism endo_quotient(const Endomorphism& h, const QuotientGroup& q);

}  // namespace gca
