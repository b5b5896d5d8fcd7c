#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gca/group.hpp"

namespace gca {

// Eventually periodic bi-infinite word over element indices:
//
//   c_i = left[(i - core_start) mod |left|]    for i <  core_start
//   c_i = core[i - core_start]                 for core_start <= i < core_end
//   c_i = right[(i - core_end) mod |right|]    for i >= core_end
//
// Values are always canonical (primitive periods, tails extended as far as
// possible toward the core), so structural equality is configuration equality.
// A configuration with both tails equal to [e] is finite.
class Configuration {
 public:
  Configuration();  // e^Z

  static Configuration finite(const std::map<long long, Elem>& support);
  static Configuration eventually_periodic(std::vector<Elem> left, std::vector<Elem> core,
                                           long long core_start, std::vector<Elem> right);
  // Spatially periodic: c_i = word[(i - anchor) mod |word|].
  static Configuration periodic(std::vector<Elem> word, long long anchor = 0);
  // Builds from a pointwise description `at`, which must be left-periodic with
  // period `left_period` on (-inf, from) and right-periodic with period
  // `right_period` on [to, inf).
  static Configuration tabulate(long long from, long long to, std::size_t left_period,
                                std::size_t right_period, const std::function<Elem(long long)>& at);

  Elem at(long long i) const;
  bool is_identity() const;
  bool is_finite() const;
  // Finite configurations only: non-identity positions.
  std::map<long long, Elem> support() const;

  const std::vector<Elem>& left() const { return left_; }
  const std::vector<Elem>& core() const { return core_; }
  const std::vector<Elem>& right() const { return right_; }
  long long core_start() const { return start_; }
  long long core_end() const { return start_ + static_cast<long long>(core_.size()); }

  // Rightmost non-identity position; defined when the right tail is e and the
  // configuration is not e^Z.
  std::optional<long long> rightmost_nonidentity() const;
  std::optional<long long> leftmost_nonidentity() const;

  // σ^s: result_i = c_{i+s}.
  Configuration shifted(long long s) const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.start_ == b.start_ && a.left_ == b.left_ && a.core_ == b.core_ && a.right_ == b.right_;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    if (a.start_ != b.start_) return a.start_ < b.start_;
    if (a.left_ != b.left_) return a.left_ < b.left_;
    if (a.core_ != b.core_) return a.core_ < b.core_;
    return a.right_ < b.right_;
  }

 private:
  void canonicalize();

  std::vector<Elem> left_{0};
  std::vector<Elem> core_;
  long long start_ = 0;
  std::vector<Elem> right_{0};
};

// Pointwise group operation a ⊙ b.
Configuration pointwise_op(const FiniteGroup& g, const Configuration& a, const Configuration& b);
// Applies a symbol map cell by cell.
Configuration map_cells(const Configuration& c, const std::function<Elem(Elem)>& f);

// Tychonoff distance 2^-min{|j| : c_j != c'_j}: returns the exponent, or
// nullopt when the configurations are equal.
std::optional<long long> distance_exponent(const Configuration& a, const Configuration& b);

}  // namespace gca
