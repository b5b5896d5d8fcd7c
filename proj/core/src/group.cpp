#include "gca/group.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

#include "gca/error.hpp"
#include "gca/limits.hpp"

namespace gca {

namespace {
constexpr Elem kUnset = static_cast<Elem>(-1);
constexpr std::size_t kMaterializeLimit = 2048;
}  // namespace

struct FiniteGroup::Impl {
  GroupKind kind = GroupKind::Cyclic;
  std::size_t n = 1;
  std::string label;
  std::size_t modulus = 1;

  std::vector<Elem> table;  // n*n when materialized
  std::vector<Elem> inverse;
  std::vector<std::string> names;

  std::vector<std::vector<std::uint16_t>> perms;
  std::map<std::vector<std::uint16_t>, Elem> perm_index;

  std::vector<FiniteGroup> factors;
  std::vector<std::size_t> strides;

  std::vector<Elem> gens;

  mutable std::once_flag min_gens_once;
  mutable std::vector<Elem> min_gens;
  mutable std::mutex endo_mutex;
  mutable bool endo_ready = false;
  mutable std::vector<Endomorphism> endos;
};

struct GroupAccess {
  static FiniteGroup make(std::shared_ptr<FiniteGroup::Impl> impl) {
    return FiniteGroup(std::move(impl));
  }
  static const FiniteGroup::Impl& impl(const FiniteGroup& g) { return *g.impl_; }
};

namespace {

std::vector<Elem> closure(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem s : gens) {
      Elem y = g.op(out[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Adds the smallest element outside the current span until everything is
// generated.
std::vector<Elem> cheap_generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::size_t covered = 1;
  for (Elem x = 1; x < g.order() && covered < g.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    auto span = closure(g, gens);
    for (Elem y : span) in[y] = 1;
    covered = span.size();
  }
  return gens;
}

// BFS over <gens> in `src`, assigning images in `dst`. Entries outside <gens>
// stay kUnset. Returns false on an inconsistency.
bool extend_map(const FiniteGroup& src, std::span<const Elem> gens, std::span<const Elem> imgs,
                const FiniteGroup& dst, std::vector<Elem>& map) {
  map.assign(src.order(), kUnset);
  map[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elem x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = src.op(x, gens[k]);
      Elem v = dst.op(map[x], imgs[k]);
      if (map[y] == kUnset) {
        map[y] = v;
        queue.push_back(y);
      } else if (map[y] != v) {
        return false;
      }
    }
  }
  return true;
}

std::string cycle_notation(const std::vector<std::uint16_t>& p) {
  std::string out;
  std::vector<char> done(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

FiniteGroup table_group(std::vector<std::string> names, std::vector<Elem> flat, std::string label) {
  auto impl = std::make_shared<FiniteGroup::Impl>();
  impl->kind = GroupKind::Table;
  impl->n = names.size();
  impl->names = std::move(names);
  impl->table = std::move(flat);
  impl->label = std::move(label);
  const std::size_t n = impl->n;
  impl->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (impl->table[a * n + b] == 0) {
        impl->inverse[a] = static_cast<Elem>(b);
        break;
      }
  FiniteGroup g = GroupAccess::make(impl);
  impl->gens = cheap_generators(g);
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::cyclic(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::NotAGroup, "cyclic group of order 0");
  if (m > limits().max_order)
    throw Error(ErrorKind::SizeLimit, "cyclic order " + std::to_string(m) + " exceeds max_order");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::Cyclic;
  impl->n = m;
  impl->modulus = m;
  impl->label = "Z/" + std::to_string(m) + "Z";
  impl->inverse.resize(m);
  for (std::size_t a = 0; a < m; ++a) impl->inverse[a] = static_cast<Elem>((m - a) % m);
  if (m > 1) impl->gens = {1};
  return FiniteGroup(impl);
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names,
                                    const std::vector<std::vector<std::size_t>>& table,
                                    std::string label) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::NotAGroup, "empty table");
  if (n > limits().max_order)
    throw Error(ErrorKind::SizeLimit, "table order " + std::to_string(n) + " exceeds max_order");
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  if (names.size() != n) throw Error(ErrorKind::NotAGroup, "names/table size mismatch");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorKind::NotAGroup, "table is not square");
    for (auto v : row)
      if (v >= n) throw Error(ErrorKind::NotAGroup, "table entry out of range");
  }
  // Locate the identity.
  std::size_t id = n;
  for (std::size_t e = 0; e < n && id == n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) id = e;
  }
  if (id == n) throw Error(ErrorKind::NotAGroup, "no identity element");
  // Latin square rows and columns give two-sided inverses in a monoid.
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      row[table[a][b]] = 1;
      col[table[b][a]] = 1;
    }
    if (std::count(row.begin(), row.end(), 1) != static_cast<long>(n) ||
        std::count(col.begin(), col.end(), 1) != static_cast<long>(n))
      throw Error(ErrorKind::NotAGroup, "element " + names[a] + " has no inverse");
  }
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return table[table[a][b]][c] == table[a][table[b][c]];
  };
  if (n <= 400) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!assoc(a, b, c))
            throw Error(ErrorKind::NotAGroup, "associativity fails at (" + names[a] + "," +
                                                  names[b] + "," + names[c] + ")");
  } else {
    std::mt19937 rng(0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 100000; ++t) {
      std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      if (!assoc(a, b, c)) throw Error(ErrorKind::NotAGroup, "associativity fails (sampled)");
    }
  }
  // Relabel so that the identity sits at index 0.
  std::vector<std::size_t> to_new(n), to_old(n);
  std::iota(to_new.begin(), to_new.end(), 0);
  std::swap(to_new[0], to_new[id]);
  for (std::size_t i = 0; i < n; ++i) to_old[to_new[i]] = i;
  std::vector<Elem> flat(n * n);
  std::vector<std::string> new_names(n);
  for (std::size_t a = 0; a < n; ++a) {
    new_names[a] = names[to_old[a]];
    for (std::size_t b = 0; b < n; ++b)
      flat[a * n + b] = static_cast<Elem>(to_new[table[to_old[a]][to_old[b]]]);
  }
  if (label.empty()) label = "G" + std::to_string(n);
  return table_group(std::move(new_names), std::move(flat), std::move(label));
}

FiniteGroup FiniteGroup::permutation(std::size_t degree,
                                     const std::vector<std::vector<std::size_t>>& generators) {
  if (degree == 0 || degree > 65535) throw Error(ErrorKind::NotAGroup, "bad permutation degree");
  using Perm = std::vector<std::uint16_t>;
  std::vector<Perm> gens;
  for (const auto& g : generators) {
    if (g.size() != degree) throw Error(ErrorKind::NotAGroup, "generator has wrong length");
    Perm p(degree);
    std::vector<char> hit(degree, 0);
    for (std::size_t i = 0; i < degree; ++i) {
      if (g[i] >= degree || hit[g[i]])
        throw Error(ErrorKind::NotAGroup, "generator is not a permutation");
      hit[g[i]] = 1;
      p[i] = static_cast<std::uint16_t>(g[i]);
    }
    gens.push_back(std::move(p));
  }
  auto compose = [degree](const Perm& a, const Perm& b) {
    Perm c(degree);
    for (std::size_t x = 0; x < degree; ++x) c[x] = a[b[x]];
    return c;
  };
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      Perm y = compose(x, s);
      if (seen.insert(y).second) {
        if (seen.size() > limits().max_order)
          throw Error(ErrorKind::SizeLimit, "permutation group exceeds max_order");
        queue.push_back(std::move(y));
      }
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::Permutation;
  impl->n = seen.size();
  impl->perms.assign(seen.begin(), seen.end());  // lexicographic: identity first
  for (std::size_t i = 0; i < impl->perms.size(); ++i)
    impl->perm_index.emplace(impl->perms[i], static_cast<Elem>(i));
  const std::size_t n = impl->n;
  if (n <= kMaterializeLimit) {
    impl->table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        impl->table[a * n + b] = impl->perm_index.at(compose(impl->perms[a], impl->perms[b]));
  }
  impl->inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    Perm q(degree);
    for (std::size_t x = 0; x < degree; ++x) q[impl->perms[a][x]] = static_cast<std::uint16_t>(x);
    impl->inverse[a] = impl->perm_index.at(q);
  }
  for (const auto& s : gens) {
    Elem e = impl->perm_index.at(s);
    if (e != 0 && std::find(impl->gens.begin(), impl->gens.end(), e) == impl->gens.end())
      impl->gens.push_back(e);
  }
  impl->label = "Perm" + std::to_string(degree) + "[" + std::to_string(n) + "]";
  return FiniteGroup(impl);
}

FiniteGroup FiniteGroup::product(std::vector<FiniteGroup> factors) {
  if (factors.empty()) throw Error(ErrorKind::NotAGroup, "product of no factors");
  std::size_t n = 1;
  for (const auto& f : factors) {
    n *= f.order();
    if (n > limits().max_order)
      throw Error(ErrorKind::SizeLimit, "product order exceeds max_order");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::Product;
  impl->n = n;
  impl->strides.resize(factors.size());
  std::size_t stride = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    impl->strides[i] = stride;
    stride *= factors[i].order();
  }
  // Label: collapse equal consecutive labels into powers.
  std::string label;
  for (std::size_t i = 0; i < factors.size();) {
    std::size_t j = i;
    while (j < factors.size() && factors[j].label() == factors[i].label()) ++j;
    if (!label.empty()) label += " x ";
    if (j - i > 1)
      label += "(" + factors[i].label() + ")^" + std::to_string(j - i);
    else
      label += factors[i].label();
    i = j;
  }
  impl->label = label;
  impl->factors = std::move(factors);
  FiniteGroup g(impl);
  impl->inverse.resize(n);
  for (Elem a = 0; a < n; ++a) {
    auto parts = g.components(a);
    for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = impl->factors[i].inv(parts[i]);
    impl->inverse[a] = g.from_components(parts);
  }
  for (std::size_t i = 0; i < impl->factors.size(); ++i)
    for (Elem s : impl->factors[i].generators())
      impl->gens.push_back(static_cast<Elem>(s * impl->strides[i]));
  return g;
}

GroupKind FiniteGroup::kind() const { return impl_->kind; }
std::size_t FiniteGroup::order() const { return impl_->n; }
const std::string& FiniteGroup::label() const { return impl_->label; }
const std::vector<FiniteGroup>& FiniteGroup::factors() const { return impl_->factors; }
std::size_t FiniteGroup::cyclic_modulus() const { return impl_->modulus; }
const std::vector<Elem>& FiniteGroup::generators() const { return impl_->gens; }

Elem FiniteGroup::op(Elem a, Elem b) const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case GroupKind::Cyclic:
      return static_cast<Elem>((a + b) % m.modulus);
    case GroupKind::Table:
      return m.table[static_cast<std::size_t>(a) * m.n + b];
    case GroupKind::Permutation: {
      if (!m.table.empty()) return m.table[static_cast<std::size_t>(a) * m.n + b];
      const auto& pa = m.perms[a];
      const auto& pb = m.perms[b];
      std::vector<std::uint16_t> c(pa.size());
      for (std::size_t x = 0; x < c.size(); ++x) c[x] = pa[pb[x]];
      return m.perm_index.at(c);
    }
    case GroupKind::Product: {
      Elem out = 0;
      for (std::size_t i = 0; i < m.factors.size(); ++i) {
        const std::size_t ord = m.factors[i].order();
        Elem x = static_cast<Elem>((a / m.strides[i]) % ord);
        Elem y = static_cast<Elem>((b / m.strides[i]) % ord);
        out += static_cast<Elem>(m.factors[i].op(x, y) * m.strides[i]);
      }
      return out;
    }
  }
  return 0;
}

Elem FiniteGroup::inv(Elem a) const { return impl_->inverse[a]; }

Elem FiniteGroup::power(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem result = 0, base = a;
  while (k > 0) {
    if (k & 1) result = op(result, base);
    base = op(base, base);
    k >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  Elem x = a;
  while (x != 0) {
    x = op(x, a);
    ++k;
  }
  return k;
}

std::string FiniteGroup::element_name(Elem a) const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case GroupKind::Cyclic: return std::to_string(a);
    case GroupKind::Table: return m.names[a];
    case GroupKind::Permutation: return cycle_notation(m.perms[a]);
    case GroupKind::Product: {
      std::string out = "(";
      auto parts = components(a);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += m.factors[i].element_name(parts[i]);
      }
      return out + ")";
    }
  }
  return std::to_string(a);
}

std::vector<Elem> FiniteGroup::components(Elem a) const {
  const Impl& m = *impl_;
  std::vector<Elem> out(m.factors.size());
  for (std::size_t i = 0; i < m.factors.size(); ++i)
    out[i] = static_cast<Elem>((a / m.strides[i]) % m.factors[i].order());
  return out;
}

Elem FiniteGroup::from_components(std::span<const Elem> parts) const {
  const Impl& m = *impl_;
  if (parts.size() != m.factors.size())
    throw Error(ErrorKind::InvalidArgument, "component count mismatch");
  Elem out = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] >= m.factors[i].order())
      throw Error(ErrorKind::InvalidArgument, "component out of range");
    out += static_cast<Elem>(parts[i] * m.strides[i]);
  }
  return out;
}

const std::vector<Elem>& FiniteGroup::minimal_generators() const {
  std::call_once(impl_->min_gens_once, [this] {
    const std::size_t n = order();
    if (kind() == GroupKind::Cyclic || n > limits().endo_order) {
      impl_->min_gens = generators();
      return;
    }
    std::vector<Elem> gens;
    std::vector<Elem> current{0};
    while (current.size() < n) {
      std::vector<char> in(n, 0);
      for (Elem y : current) in[y] = 1;
      Elem best = 0;
      std::vector<Elem> best_span;
      std::vector<char> tried(n, 0);
      for (Elem x = 1; x < n; ++x) {
        if (in[x] || tried[x]) continue;
        gens.push_back(x);
        auto span = closure(*this, gens);
        gens.pop_back();
        // Any element of a cyclic group <x> yields no larger span than x itself
        // when it generates the same cyclic subgroup; skip those.
        for (Elem y = x, k = 0; k < n && y != 0; y = op(y, x), ++k) tried[y] = 1;
        if (span.size() > best_span.size()) {
          best_span = std::move(span);
          best = x;
        }
      }
      gens.push_back(best);
      current = std::move(best_span);
    }
    impl_->min_gens = std::move(gens);
  });
  return impl_->min_gens;
}

const std::vector<Endomorphism>& FiniteGroup::endomorphism_cache() const {
  std::lock_guard lock(impl_->endo_mutex);
  if (!impl_->endo_ready) {
    impl_->endos = endomorphisms(*this);
    impl_->endo_ready = true;
  }
  return impl_->endos;
}

bool FiniteGroup::equivalent(const FiniteGroup& other) const {
  if (same_as(other)) return true;
  if (order() != other.order()) return false;
  const std::size_t n = order();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (op(a, b) != other.op(a, b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup

struct Subgroup::Cache {
  std::once_flag once;
  std::optional<FiniteGroup> group;
};

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elem> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)), cache_(std::make_shared<Cache>()) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  const std::size_t n = parent_.order();
  if (elements_.empty() || elements_.front() != 0)
    throw Error(ErrorKind::NotASubgroup, "subgroup must contain the identity");
  if (elements_.back() >= n) throw Error(ErrorKind::NotASubgroup, "element out of range");
  member_.assign(n, false);
  for (Elem x : elements_) member_[x] = true;
  // Grow a generated subgroup inside the set; it must stay inside and reach it.
  std::vector<Elem> gens;
  std::vector<char> spanned(n, 0);
  spanned[0] = 1;
  std::size_t covered = 1;
  for (Elem x : elements_) {
    if (spanned[x]) continue;
    gens.push_back(x);
    auto span = closure(parent_, gens);
    for (Elem y : span) {
      if (!member_[y]) throw Error(ErrorKind::NotASubgroup, "set is not closed under the operation");
      spanned[y] = 1;
    }
    covered = span.size();
  }
  if (covered != elements_.size()) throw Error(ErrorKind::NotASubgroup, "set is not closed");
}

bool Subgroup::contains(Elem a) const { return a < member_.size() && member_[a]; }

Elem Subgroup::local_index(Elem a) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), a);
  if (it == elements_.end() || *it != a)
    throw Error(ErrorKind::InvalidArgument, "element not in subgroup");
  return static_cast<Elem>(it - elements_.begin());
}

const FiniteGroup& Subgroup::as_group() const {
  std::call_once(cache_->once, [this] {
    if (is_whole()) {
      cache_->group = parent_;
      return;
    }
    const std::size_t m = elements_.size();
    std::vector<Elem> flat(m * m);
    std::vector<std::string> names(m);
    for (std::size_t i = 0; i < m; ++i) {
      names[i] = parent_.element_name(elements_[i]);
      for (std::size_t j = 0; j < m; ++j)
        flat[i * m + j] = local_index(parent_.op(elements_[i], elements_[j]));
    }
    cache_->group = table_group(std::move(names), std::move(flat),
                                "H" + std::to_string(m) + "<" + parent_.label() + ">");
  });
  return *cache_->group;
}

// ---------------------------------------------------------------------------
// Endomorphism

bool is_homomorphism(const FiniteGroup& g, std::span<const Elem> images) {
  if (images.size() != g.order() || images.empty() || images[0] != 0) return false;
  for (Elem y : images)
    if (y >= g.order()) return false;
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem s : g.generators())
      if (images[g.op(x, s)] != g.op(images[x], images[s])) return false;
  return true;
}

Endomorphism::Endomorphism(FiniteGroup group, std::vector<Elem> images)
    : group_(std::move(group)), images_(std::move(images)) {
  if (!is_homomorphism(group_, images_))
    throw Error(ErrorKind::InvalidArgument, "map is not an endomorphism of " + group_.label());
}

Endomorphism Endomorphism::identity(const FiniteGroup& g) {
  std::vector<Elem> im(g.order());
  std::iota(im.begin(), im.end(), 0);
  return Endomorphism(g, std::move(im), Unchecked{});
}

Endomorphism Endomorphism::trivial(const FiniteGroup& g) {
  return Endomorphism(g, std::vector<Elem>(g.order(), 0), Unchecked{});
}

std::optional<Endomorphism> Endomorphism::from_generator_images(const FiniteGroup& g,
                                                                std::span<const Elem> generators,
                                                                std::span<const Elem> images) {
  if (generators.size() != images.size())
    throw Error(ErrorKind::InvalidArgument, "generator/image count mismatch");
  for (Elem x : generators)
    if (x >= g.order()) throw Error(ErrorKind::InvalidArgument, "generator out of range");
  for (Elem x : images)
    if (x >= g.order()) throw Error(ErrorKind::InvalidArgument, "image out of range");
  std::vector<Elem> map;
  if (!extend_map(g, generators, images, g, map)) return std::nullopt;
  if (std::find(map.begin(), map.end(), kUnset) != map.end())
    throw Error(ErrorKind::InvalidArgument, "given elements do not generate the group");
  return Endomorphism(g, std::move(map), Unchecked{});
}

bool Endomorphism::is_trivial() const {
  return std::all_of(images_.begin(), images_.end(), [](Elem y) { return y == 0; });
}

bool Endomorphism::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Endomorphism Endomorphism::after(const Endomorphism& other) const {
  std::vector<Elem> im(images_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = images_[other.images_[i]];
  return Endomorphism(group_, std::move(im), Unchecked{});
}

Endomorphism pointwise_product(const std::vector<Endomorphism>& maps) {
  if (maps.empty()) throw Error(ErrorKind::InvalidArgument, "empty product");
  const FiniteGroup& g = maps.front().group();
  std::vector<Elem> im(g.order(), 0);
  for (const auto& m : maps)
    for (Elem x = 0; x < g.order(); ++x) im[x] = g.op(im[x], m(x));
  if (!is_homomorphism(g, im))
    throw Error(ErrorKind::CentralizerViolation, "pointwise product is not a homomorphism");
  return Endomorphism(g, std::move(im), Endomorphism::Unchecked{});
}

// ---------------------------------------------------------------------------
// Subgroup machinery

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup(g, {0}); }

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  return Subgroup(g, closure(g, gens));
}

std::vector<Subgroup> subgroups(const FiniteGroup& g) {
  if (g.order() > limits().subgroup_order)
    throw Error(ErrorKind::SizeLimit, "subgroup enumeration limited to order " +
                                          std::to_string(limits().subgroup_order));
  // Cyclic subgroups, then closure under joins with cyclic subgroups.
  std::set<std::vector<Elem>> seen;
  std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> found;  // (elements, gens)
  std::vector<Elem> cyclic_gens;
  for (Elem x = 0; x < g.order(); ++x) {
    std::vector<Elem> gens{x};
    auto els = closure(g, gens);
    if (seen.insert(els).second) {
      found.emplace_back(els, x == 0 ? std::vector<Elem>{} : gens);
      if (x != 0) cyclic_gens.push_back(x);
    }
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Elem c : cyclic_gens) {
      const auto& els = found[i].first;
      if (std::binary_search(els.begin(), els.end(), c)) continue;
      auto gens = found[i].second;
      gens.push_back(c);
      auto joined = closure(g, gens);
      if (seen.insert(joined).second) found.emplace_back(std::move(joined), std::move(gens));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& f : found) out.emplace_back(g, std::move(f.first));
  return out;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Elem s : g.generators())
    for (Elem x : h.elements())
      if (!h.contains(g.op(g.op(s, x), g.inv(s)))) return false;
  return true;
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> elems) {
  std::vector<Elem> gens(elems.begin(), elems.end());
  auto current = closure(g, gens);
  for (;;) {
    std::vector<char> in(g.order(), 0);
    for (Elem y : current) in[y] = 1;
    bool grew = false;
    for (Elem s : g.generators()) {
      for (Elem x : current) {
        Elem c = g.op(g.op(s, x), g.inv(s));
        if (!in[c]) {
          gens.push_back(c);
          in[c] = 1;
          grew = true;
        }
      }
    }
    if (!grew) break;
    current = closure(g, gens);
  }
  return Subgroup(g, std::move(current));
}

QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw Error(ErrorKind::NotNormal, "subgroup is not normal");
  std::vector<Elem> projection(g.order(), kUnset);
  std::vector<std::vector<Elem>> cosets;
  for (Elem x = 0; x < g.order(); ++x) {
    if (projection[x] != kUnset) continue;
    std::vector<Elem> coset;
    for (Elem y : n.elements()) {
      Elem z = g.op(x, y);
      projection[z] = static_cast<Elem>(cosets.size());
      coset.push_back(z);
    }
    std::sort(coset.begin(), coset.end());
    cosets.push_back(std::move(coset));
  }
  const std::size_t m = cosets.size();
  std::vector<Elem> flat(m * m);
  std::vector<std::string> names(m);
  for (std::size_t i = 0; i < m; ++i) {
    names[i] = "[" + g.element_name(cosets[i].front()) + "]";
    for (std::size_t j = 0; j < m; ++j)
      flat[i * m + j] = projection[g.op(cosets[i].front(), cosets[j].front())];
  }
  FiniteGroup qg = table_group(std::move(names), std::move(flat),
                               g.label() + "/N" + std::to_string(n.order()));
  return QuotientGroup{g, n, std::move(cosets), std::move(projection), std::move(qg)};
}

std::vector<Endomorphism> endomorphisms(const FiniteGroup& g) {
  const auto& lim = limits();
  if (g.order() > lim.endo_order)
    throw Error(ErrorKind::SizeLimit, "End(G) enumeration limited to order " +
                                          std::to_string(lim.endo_order));
  const auto& gens = g.minimal_generators();
  if (gens.size() > lim.endo_generators)
    throw Error(ErrorKind::SizeLimit, "End(G) enumeration needs a generating set of size <= " +
                                          std::to_string(lim.endo_generators));
  std::vector<Endomorphism> out;
  if (gens.empty()) {
    out.push_back(Endomorphism::identity(g));
    return out;
  }
  // Candidate images: orders must divide the generator's order.
  std::vector<std::size_t> orders(g.order());
  for (Elem x = 0; x < g.order(); ++x) orders[x] = g.element_order(x);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (Elem y = 0; y < g.order(); ++y)
      if (orders[gens[k]] % orders[y] == 0) candidates[k].push_back(y);

  std::vector<Elem> chosen(gens.size());
  std::vector<Elem> map;
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    for (Elem y : candidates[depth]) {
      chosen[depth] = y;
      std::span<const Elem> gs(gens.data(), depth + 1), ims(chosen.data(), depth + 1);
      if (!extend_map(g, gs, ims, g, map)) continue;
      if (depth + 1 == gens.size())
        out.push_back(Endomorphism(g, map, Endomorphism::Unchecked{}));
      else
        self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

namespace {

// Characteristically simple by construction: elementary abelian groups and
// products of pairwise isomorphic non-abelian simple groups.
bool structurally_invariantly_simple(const FiniteGroup& g) {
  if (g.order() == 1) return true;
  if (elementary_abelian_basis(g)) return true;
  if (g.kind() == GroupKind::Product) {
    const auto& fs = g.factors();
    if (is_abelian(fs[0]) || !is_simple(fs[0])) return false;
    for (std::size_t i = 1; i < fs.size(); ++i)
      if (!is_simple(fs[i]) || !are_isomorphic(fs[0], fs[i])) return false;
    return true;
  }
  return g.order() <= limits().max_order && !is_abelian(g) && is_simple(g);
}

}  // namespace

bool is_fully_invariant(const FiniteGroup& g, const Subgroup& h) {
  if (h.is_trivial() || h.is_whole()) return true;
  if (structurally_invariantly_simple(g)) return false;
  for (const auto& phi : g.endomorphism_cache())
    for (Elem x : h.elements())
      if (!h.contains(phi(x))) return false;
  return true;
}

std::vector<Subgroup> fully_invariant_subgroups(const FiniteGroup& g) {
  if (g.order() == 1) return {trivial_subgroup(g)};
  if (structurally_invariantly_simple(g)) return {trivial_subgroup(g), whole_group(g)};
  const auto& endos = g.endomorphism_cache();
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> found;
  // The fully invariant closure of x is generated by its End(G)-orbit.
  for (Elem x = 0; x < g.order(); ++x) {
    std::vector<Elem> orbit;
    for (const auto& phi : endos) orbit.push_back(phi(x));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    auto els = closure(g, orbit);
    if (seen.insert(els).second) found.push_back(std::move(els));
  }
  // Joins of fully invariant subgroups are fully invariant.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Elem> gens = found[i];
      gens.insert(gens.end(), found[j].begin(), found[j].end());
      auto joined = closure(g, gens);
      if (seen.insert(joined).second) found.push_back(std::move(joined));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  for (auto& f : found) out.emplace_back(g, std::move(f));
  return out;
}

bool is_invariantly_simple(const FiniteGroup& g) {
  if (structurally_invariantly_simple(g)) return true;
  return fully_invariant_subgroups(g).size() <= 2;
}

bool is_simple(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return false;
  std::vector<char> done(n, 0);
  done[0] = 1;
  for (Elem x = 1; x < n; ++x) {
    if (done[x]) continue;
    Elem one[] = {x};
    if (!normal_closure(g, one).is_whole()) return false;
    // Conjugates of x have the same normal closure.
    std::vector<Elem> cls{x};
    done[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elem s : g.generators()) {
        Elem c = g.op(g.op(s, cls[i]), g.inv(s));
        if (!done[c]) {
          done[c] = 1;
          cls.push_back(c);
        }
      }
  }
  return true;
}

bool is_abelian(const FiniteGroup& g) {
  const auto& gens = g.generators();
  for (Elem a : gens)
    for (Elem b : gens)
      if (g.op(a, b) != g.op(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Elementary abelian groups

Elem ElementaryAbelianBasis::from_coords(std::span<const std::uint32_t> v) const {
  if (v.size() != dimension) throw Error(ErrorKind::InvalidArgument, "coordinate length mismatch");
  std::size_t idx = 0;
  for (auto c : v) {
    if (c >= prime) throw Error(ErrorKind::InvalidArgument, "coordinate out of range");
    idx = idx * prime + c;
  }
  return from_coords_table[idx];
}

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

std::optional<ElementaryAbelianBasis> elementary_abelian_basis(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return std::nullopt;
  std::size_t p = 0;
  for (std::size_t d = 2; d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  std::size_t dim = 0;
  for (std::size_t m = n; m > 1; m /= p) {
    if (m % p != 0) return std::nullopt;
    ++dim;
  }
  if (!is_prime(p) || !is_abelian(g)) return std::nullopt;
  for (Elem x = 1; x < n; ++x)
    if (g.power(x, static_cast<long long>(p)) != 0) return std::nullopt;

  ElementaryAbelianBasis b;
  b.prime = static_cast<std::uint32_t>(p);
  b.dimension = dim;
  bool natural = g.kind() == GroupKind::Cyclic;
  if (g.kind() == GroupKind::Product) {
    natural = std::all_of(g.factors().begin(), g.factors().end(), [p](const FiniteGroup& f) {
      return f.kind() == GroupKind::Cyclic && f.cyclic_modulus() == p;
    });
  }
  if (natural) {
    if (g.kind() == GroupKind::Cyclic) {
      b.basis = {1};
    } else {
      for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Elem> parts(dim, 0);
        parts[i] = 1;
        b.basis.push_back(g.from_components(parts));
      }
    }
  } else {
    std::vector<char> in(n, 0);
    in[0] = 1;
    for (Elem x = 1; x < n && b.basis.size() < dim; ++x) {
      if (in[x]) continue;
      b.basis.push_back(x);
      for (Elem y : closure(g, b.basis)) in[y] = 1;
    }
  }
  b.coords.assign(n, {});
  b.from_coords_table.assign(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::vector<std::uint32_t> v(dim);
    std::size_t rest = idx;
    for (std::size_t i = dim; i-- > 0;) {
      v[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    Elem e = 0;
    for (std::size_t i = 0; i < dim; ++i) e = g.op(e, g.power(b.basis[i], v[i]));
    b.from_coords_table[idx] = e;
    b.coords[e] = std::move(v);
  }
  return b;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<Elem>> are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  const std::size_t n = a.order();
  if (n > limits().max_order) throw Error(ErrorKind::SizeLimit, "isomorphism test too large");
  std::vector<std::size_t> oa(n), ob(n);
  for (Elem x = 0; x < n; ++x) {
    oa[x] = a.element_order(x);
    ob[x] = b.element_order(x);
  }
  {
    auto ha = oa, hb = ob;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return std::nullopt;
  }
  const auto& gens = n <= limits().endo_order ? a.minimal_generators() : a.generators();
  std::vector<Elem> chosen(gens.size());
  std::vector<Elem> map;
  std::optional<std::vector<Elem>> result;
  auto recurse = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gens.size()) {
      std::vector<char> hit(n, 0);
      for (Elem y : map) {
        if (hit[y]) return false;
        hit[y] = 1;
      }
      result = map;
      return true;
    }
    for (Elem y = 0; y < n; ++y) {
      if (ob[y] != oa[gens[depth]]) continue;
      chosen[depth] = y;
      std::span<const Elem> gs(gens.data(), depth + 1), ims(chosen.data(), depth + 1);
      if (!extend_map(a, gs, ims, b, map)) continue;
      if (self(self, depth + 1)) return true;
    }
    return false;
  };
  if (gens.empty()) return std::vector<Elem>{0};
  recurse(recurse, 0);
  return result;
}

Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> s) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem y : s)
      if (g.op(x, y) != g.op(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return Subgroup(g, std::move(out));
}

std::string describe(const FiniteGroup& g) {
  if (g.kind() == GroupKind::Cyclic) return g.label();
  if (g.order() == 1) return "1";
  if (auto b = elementary_abelian_basis(g)) {
    std::string base = "Z/" + std::to_string(b->prime) + "Z";
    return b->dimension == 1 ? base : "(" + base + ")^" + std::to_string(b->dimension);
  }
  return g.label();
}

Subgroup endo_image(const Endomorphism& h) {
  std::vector<Elem> im = h.images();
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return Subgroup(h.group(), std::move(im));
}

Subgroup endo_kernel(const Endomorphism& h) {
  std::vector<Elem> ker;
  for (Elem x = 0; x < h.group().order(); ++x)
    if (h(x) == 0) ker.push_back(x);
  return Subgroup(h.group(), std::move(ker));
}

Endomorphism endo_restrict(const Endomorphism& h, const Subgroup& sub) {
  std::vector<Elem> im(sub.order());
  for (std::size_t i = 0; i < sub.order(); ++i) {
    Elem y = h(sub.elements()[i]);
    if (!sub.contains(y))
      throw Error(ErrorKind::NotInvariant, "endomorphism does not map the subgroup into itself");
    im[i] = sub.local_index(y);
  }
  return Endomorphism(sub.as_group(), std::move(im));
}

Endomorphism endo_quotient(const Endomorphism& h, const QuotientGroup& q) {
  for (Elem x : q.normal.elements())
    if (!q.normal.contains(h(x)))
      throw Error(ErrorKind::NotInvariant, "endomorphism does not preserve the normal subgroup");
  std::vector<Elem> im(q.cosets.size(), kUnset);
  for (Elem x = 0; x < q.parent.order(); ++x) {
    Elem c = q.projection[x];
    Elem v = q.projection[h(x)];
    if (im[c] == kUnset)
      im[c] = v;
    else if (im[c] != v)
      throw Error(ErrorKind::NotInvariant, "induced map on the quotient is not well defined");
  }
  return Endomorphism(q.group, std::move(im));
}

}  // namespace gca
