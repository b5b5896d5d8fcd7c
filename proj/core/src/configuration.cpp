#include "gca/configuration.hpp"

#include <algorithm>
#include <numeric>

#include "gca/error.hpp"

namespace gca {

namespace {

long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<Elem> primitive_root(const std::vector<Elem>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return std::vector<Elem>(w.begin(), w.begin() + static_cast<long>(d));
  }
  return w;
}

}  // namespace

Configuration::Configuration() = default;

Configuration Configuration::finite(const std::map<long long, Elem>& support) {
  Configuration c;
  if (support.empty()) return c;
  long long lo = support.begin()->first, hi = support.rbegin()->first;
  c.start_ = lo;
  c.core_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [pos, v] : support) c.core_[static_cast<std::size_t>(pos - lo)] = v;
  c.canonicalize();
  return c;
}

Configuration Configuration::eventually_periodic(std::vector<Elem> left, std::vector<Elem> core,
                                                 long long core_start, std::vector<Elem> right) {
  if (left.empty() || right.empty())
    throw Error(ErrorKind::InvalidArgument, "period words must be non-empty");
  Configuration c;
  c.left_ = std::move(left);
  c.core_ = std::move(core);
  c.start_ = core_start;
  c.right_ = std::move(right);
  c.canonicalize();
  return c;
}

Configuration Configuration::periodic(std::vector<Elem> word, long long anchor) {
  if (word.empty()) throw Error(ErrorKind::InvalidArgument, "period word must be non-empty");
  auto w = word;
  return eventually_periodic(std::move(word), {}, anchor, std::move(w));
}

Configuration Configuration::tabulate(long long from, long long to, std::size_t left_period,
                                      std::size_t right_period,
                                      const std::function<Elem(long long)>& at) {
  if (to < from) to = from;
  Configuration c;
  c.start_ = from;
  c.left_.resize(left_period);
  for (std::size_t k = 0; k < left_period; ++k)
    c.left_[k] = at(from - static_cast<long long>(left_period) + static_cast<long long>(k));
  // Anchor: c_i = left[(i - from) mod L]; position from-L+k has residue k.
  c.core_.resize(static_cast<std::size_t>(to - from));
  for (long long i = from; i < to; ++i) c.core_[static_cast<std::size_t>(i - from)] = at(i);
  c.right_.resize(right_period);
  for (std::size_t k = 0; k < right_period; ++k) c.right_[k] = at(to + static_cast<long long>(k));
  c.canonicalize();
  return c;
}

Elem Configuration::at(long long i) const {
  if (i < start_) return left_[static_cast<std::size_t>(floor_mod(i - start_, static_cast<long long>(left_.size())))];
  long long e = core_end();
  if (i < e) return core_[static_cast<std::size_t>(i - start_)];
  return right_[static_cast<std::size_t>(floor_mod(i - e, static_cast<long long>(right_.size())))];
}

void Configuration::canonicalize() {
  left_ = primitive_root(left_);
  right_ = primitive_root(right_);
  const long long L = static_cast<long long>(left_.size());
  const long long R = static_cast<long long>(right_.size());
  const long long s = start_, e = core_end();
  auto left_pattern = [&](long long i) { return left_[static_cast<std::size_t>(floor_mod(i - s, L))]; };
  auto right_pattern = [&](long long i) { return right_[static_cast<std::size_t>(floor_mod(i - e, R))]; };

  // Extend the right tail leftwards as far as it agrees.
  long long r0 = e;
  const long long floor_pos = s - L * R - 1;
  bool fully_periodic = false;
  while (at(r0 - 1) == right_pattern(r0 - 1)) {
    --r0;
    if (r0 < floor_pos) {
      fully_periodic = true;
      break;
    }
  }
  if (fully_periodic) {
    std::vector<Elem> w(static_cast<std::size_t>(R));
    for (long long j = 0; j < R; ++j) w[static_cast<std::size_t>(j)] = right_pattern(j);
    left_ = w;
    right_ = std::move(w);
    core_.clear();
    start_ = 0;
    return;
  }
  long long l0 = s;
  if (l0 > r0) l0 = r0;
  while (l0 < r0 && at(l0) == left_pattern(l0)) ++l0;

  std::vector<Elem> new_left(static_cast<std::size_t>(L)), new_right(static_cast<std::size_t>(R));
  for (long long k = 0; k < L; ++k) new_left[static_cast<std::size_t>(k)] = left_pattern(l0 + k);
  for (long long k = 0; k < R; ++k) new_right[static_cast<std::size_t>(k)] = right_pattern(r0 + k);
  std::vector<Elem> new_core(static_cast<std::size_t>(r0 - l0));
  for (long long i = l0; i < r0; ++i) new_core[static_cast<std::size_t>(i - l0)] = at(i);
  left_ = std::move(new_left);
  right_ = std::move(new_right);
  core_ = std::move(new_core);
  start_ = l0;
}

bool Configuration::is_identity() const {
  return core_.empty() && left_.size() == 1 && left_[0] == 0 && right_.size() == 1 && right_[0] == 0;
}

bool Configuration::is_finite() const {
  return left_.size() == 1 && left_[0] == 0 && right_.size() == 1 && right_[0] == 0;
}

std::map<long long, Elem> Configuration::support() const {
  if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "configuration is not finite");
  std::map<long long, Elem> out;
  for (std::size_t k = 0; k < core_.size(); ++k)
    if (core_[k] != 0) out.emplace(start_ + static_cast<long long>(k), core_[k]);
  return out;
}

std::optional<long long> Configuration::rightmost_nonidentity() const {
  if (right_.size() != 1 || right_[0] != 0 || is_identity()) return std::nullopt;
  return core_end() - 1;
}

std::optional<long long> Configuration::leftmost_nonidentity() const {
  if (left_.size() != 1 || left_[0] != 0 || is_identity()) return std::nullopt;
  return start_;
}

Configuration Configuration::shifted(long long s) const {
  Configuration c = *this;
  if (left_ == right_ && core_.empty()) {
    // Spatially periodic: keep the anchor at 0 by rotating.
    const long long P = static_cast<long long>(left_.size());
    std::vector<Elem> w(left_.size());
    for (long long j = 0; j < P; ++j) w[static_cast<std::size_t>(j)] = at(j + s);
    return periodic(std::move(w), 0);
  }
  c.start_ -= s;
  return c;
}

Configuration pointwise_op(const FiniteGroup& g, const Configuration& a, const Configuration& b) {
  const std::size_t L = std::lcm(a.left().size(), b.left().size());
  const std::size_t R = std::lcm(a.right().size(), b.right().size());
  const long long from = std::min(a.core_start(), b.core_start());
  const long long to = std::max(a.core_end(), b.core_end());
  return Configuration::tabulate(from, to, L, R, [&](long long i) { return g.op(a.at(i), b.at(i)); });
}

Configuration map_cells(const Configuration& c, const std::function<Elem(Elem)>& f) {
  return Configuration::tabulate(c.core_start(), c.core_end(), c.left().size(), c.right().size(),
                                 [&](long long i) { return f(c.at(i)); });
}

std::optional<long long> distance_exponent(const Configuration& a, const Configuration& b) {
  if (a == b) return std::nullopt;
  // Beyond `reach` both are in their tails; the tails then repeat with period
  // lcm, so scanning one further lcm block is exhaustive.
  const long long reach = std::max({std::abs(a.core_start()), std::abs(a.core_end()),
                                    std::abs(b.core_start()), std::abs(b.core_end())});
  const long long block = static_cast<long long>(
      std::lcm(std::lcm(a.left().size(), b.left().size()), std::lcm(a.right().size(), b.right().size())));
  const long long limit = reach + block + 1;
  for (long long j = 0; j <= limit; ++j) {
    if (a.at(j) != b.at(j) || a.at(-j) != b.at(-j)) return j;
  }
  return std::nullopt;  // unreachable for canonical distinct values
}

}  // namespace gca
