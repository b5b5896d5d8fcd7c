#include "gca/rule.hpp"

#include <algorithm>
#include <string>

#include "gca/error.hpp"
#include "gca/limits.hpp"

namespace gca {

namespace {

void check_centralizer(const FiniteGroup& g, int radius, const std::vector<Endomorphism>& endos) {
  const auto& gens = g.generators();
  for (int i = -radius; i <= radius; ++i) {
    const auto& hi = endos[static_cast<std::size_t>(i + radius)];
    if (hi.is_trivial()) continue;
    for (int j = i + 1; j <= radius; ++j) {
      const auto& hj = endos[static_cast<std::size_t>(j + radius)];
      if (hj.is_trivial()) continue;
      for (Elem x : gens)
        for (Elem y : gens) {
          Elem a = hi(x), b = hj(y);
          if (g.op(a, b) != g.op(b, a))
            throw Error(ErrorKind::CentralizerViolation,
                        "images of h_" + std::to_string(i) + " and h_" + std::to_string(j) +
                            " do not commute: " + g.element_name(a) + " and " + g.element_name(b));
        }
    }
  }
}

}  // namespace

Gca::Gca(FiniteGroup group, int radius, std::vector<Endomorphism> endos)
    : group_(std::move(group)), radius_(radius), endos_(std::move(endos)) {
  if (radius_ < 0) throw Error(ErrorKind::InvalidArgument, "negative radius");
  if (endos_.size() != static_cast<std::size_t>(2 * radius_ + 1))
    throw Error(ErrorKind::InvalidArgument, "expected 2r+1 endomorphisms");
  for (const auto& h : endos_)
    if (!h.group().equivalent(group_))
      throw Error(ErrorKind::InvalidArgument, "endomorphism over a different group");
  check_centralizer(group_, radius_, endos_);
  while (radius_ > 0 && endos_.front().is_trivial() && endos_.back().is_trivial()) {
    endos_.erase(endos_.begin());
    endos_.pop_back();
    --radius_;
  }
}

Gca Gca::identity(const FiniteGroup& g) { return Gca(g, 0, {Endomorphism::identity(g)}); }

Gca Gca::shift(const FiniteGroup& g, int offset) {
  const int r = std::abs(offset);
  std::vector<Endomorphism> endos(static_cast<std::size_t>(2 * r + 1), Endomorphism::trivial(g));
  endos[static_cast<std::size_t>(offset + r)] = Endomorphism::identity(g);
  return Gca(g, r, std::move(endos));
}

const Endomorphism& Gca::endo(int offset) const {
  static thread_local std::optional<Endomorphism> trivial_cache;
  if (offset < -radius_ || offset > radius_) {
    if (!trivial_cache || !trivial_cache->group().same_as(group_))
      trivial_cache = Endomorphism::trivial(group_);
    return *trivial_cache;
  }
  return endos_[static_cast<std::size_t>(offset + radius_)];
}

RuleKind Gca::kind() const {
  if (radius_ == 0) return RuleKind::IdentityLike;
  auto nontrivial = std::count_if(endos_.begin(), endos_.end(), [](const Endomorphism& h) { return !h.is_trivial(); });
  return nontrivial == 1 ? RuleKind::ShiftLike : RuleKind::General;
}

std::optional<int> Gca::pure_shift_offset() const {
  std::optional<int> found;
  for (int i = -radius_; i <= radius_; ++i) {
    const auto& h = endos_[static_cast<std::size_t>(i + radius_)];
    if (h.is_trivial()) continue;
    if (found || !h.is_identity()) return std::nullopt;
    found = i;
  }
  return found;
}

Elem Gca::apply_window(std::span<const Elem> window) const {
  Elem out = 0;
  for (std::size_t k = 0; k < endos_.size(); ++k) out = group_.op(out, endos_[k](window[k]));
  return out;
}

Gca validate_rule(const FiniteGroup& g, int radius, std::vector<Endomorphism> endos) {
  return Gca(g, radius, std::move(endos));
}

Configuration apply(const Gca& f, const Configuration& c) {
  const int r = f.radius();
  std::vector<Elem> window(static_cast<std::size_t>(2 * r + 1));
  return Configuration::tabulate(c.core_start() - r, c.core_end() + r, c.left().size(), c.right().size(),
                                 [&](long long i) {
                                   for (int k = -r; k <= r; ++k)
                                     window[static_cast<std::size_t>(k + r)] = c.at(i + k);
                                   return f.apply_window(window);
                                 });
}

Configuration iterate(const Gca& f, const Configuration& c, long long steps) {
  Configuration x = c;
  for (long long t = 0; t < steps; ++t) x = apply(f, x);
  return x;
}

Gca compose(const Gca& f, const Gca& g) {
  if (!f.group().equivalent(g.group()))
    throw Error(ErrorKind::InvalidArgument, "compose: rules over different groups");
  const int r = f.radius() + g.radius();
  if (r > limits().compose_radius + limits().invert_radius)
    throw Error(ErrorKind::SizeLimit, "composed radius " + std::to_string(r) + " exceeds cap");
  std::vector<Endomorphism> endos;
  endos.reserve(static_cast<std::size_t>(2 * r + 1));
  for (int d = -r; d <= r; ++d) {
    std::vector<Endomorphism> terms;
    for (int a = -f.radius(); a <= f.radius(); ++a) {
      int b = d - a;
      if (b < -g.radius() || b > g.radius()) continue;
      terms.push_back(f.endo(a).after(g.endo(b)));
    }
    endos.push_back(pointwise_product(terms));
  }
  Gca out(f.group(), r, std::move(endos));
  if (out.radius() > limits().compose_radius)
    throw Error(ErrorKind::SizeLimit, "composed radius " + std::to_string(out.radius()) + " exceeds cap " +
                                          std::to_string(limits().compose_radius));
  return out;
}

Gca power(const Gca& f, int t) {
  if (t < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  Gca result = Gca::identity(f.group());
  Gca base = f;
  while (t > 0) {
    if (t & 1) result = compose(result, base);
    t >>= 1;
    if (t > 0) base = compose(base, base);
  }
  return result;
}

bool preserves_subgroup(const Gca& f, const Subgroup& h) {
  for (const auto& e : f.endos())
    for (Elem x : h.elements())
      if (!h.contains(e(x))) return false;
  return true;
}

Gca restrict_to(const Gca& f, const Subgroup& h) {
  if (!preserves_subgroup(f, h))
    throw Error(ErrorKind::NotInvariant, "rule does not preserve the subgroup");
  std::vector<Endomorphism> endos;
  for (const auto& e : f.endos()) endos.push_back(endo_restrict(e, h));
  return Gca(h.as_group(), f.radius(), std::move(endos));
}

Gca quotient_gca(const Gca& f, const QuotientGroup& q) {
  if (!preserves_subgroup(f, q.normal))
    throw Error(ErrorKind::NotInvariant, "rule does not preserve the normal subgroup");
  std::vector<Endomorphism> endos;
  for (const auto& e : f.endos()) endos.push_back(endo_quotient(e, q));
  return Gca(q.group, f.radius(), std::move(endos));
}

Configuration project(const QuotientGroup& q, const Configuration& c) {
  return map_cells(c, [&](Elem x) { return q.projection[x]; });
}

Configuration to_subgroup(const Subgroup& h, const Configuration& c) {
  return map_cells(c, [&](Elem x) { return h.local_index(x); });
}

}  // namespace gca
