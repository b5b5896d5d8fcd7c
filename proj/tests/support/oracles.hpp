#pragma once

// Brute-force reference procedures shared by the unit and acceptance suites.
// They only use the group table and the local rule, never the deciders.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "gca/group.hpp"
#include "gca/laurent.hpp"
#include "gca/rule.hpp"

namespace oracle {

using gca::Elem;

// One step of F on the cyclic word `w` (a spatially periodic configuration),
// straight from the local rule.
inline std::vector<Elem> cyclic_step(const gca::Gca& f, const std::vector<Elem>& w) {
  const auto& g = f.group();
  const long long p = static_cast<long long>(w.size());
  const int r = f.radius();
  std::vector<Elem> out(w.size());
  for (long long i = 0; i < p; ++i) {
    Elem acc = 0;
    for (int d = -r; d <= r; ++d) acc = g.op(acc, f.endo(d)(w[((i + d) % p + p) % p]));
    out[i] = acc;
  }
  return out;
}

// Calls fn on every word of length len over {0..n-1}.
inline void for_each_word(std::size_t n, std::size_t len, const std::function<void(const std::vector<Elem>&)>& fn) {
  std::vector<Elem> w(len, 0);
  for (;;) {
    fn(w);
    std::size_t i = len;
    while (i > 0 && ++w[i - 1] == n) w[--i] = 0;
    if (i == 0) return;
  }
}

// F is injective on the configurations of every period p <= max_period.
inline bool periodic_injective(const gca::Gca& f, int max_period) {
  const std::size_t n = f.group().order();
  for (int p = 1; p <= max_period; ++p) {
    std::size_t total = 1;
    for (int i = 0; i < p; ++i) total *= n;
    std::vector<bool> seen(total, false);
    bool clash = false;
    for_each_word(n, p, [&](const std::vector<Elem>& w) {
      if (clash) return;
      std::size_t code = 0;
      for (Elem x : cyclic_step(f, w)) code = code * n + x;
      if (seen[code]) clash = true;
      seen[code] = true;
    });
    if (clash) return false;
  }
  return true;
}

// Every word of length period - 2r shows up in the image of some
// configuration of the given period (any preimage window of length `period`
// closes up periodically, so this finds every orphan of that length).
inline bool no_short_orphan(const gca::Gca& f, int period) {
  const int len = period - 2 * f.radius();
  if (len < 1) return true;
  const std::size_t n = f.group().order();
  std::set<std::vector<Elem>> seen;
  for_each_word(n, period, [&](const std::vector<Elem>& w) {
    auto img = cyclic_step(f, w);
    seen.insert(std::vector<Elem>(img.begin(), img.begin() + len));
  });
  std::size_t total = 1;
  for (int i = 0; i < len; ++i) total *= n;
  return seen.size() == total;
}

// Mixing search: for every pair of width-`width` cylinders U, V at [0, width)
// some spatially periodic x in U has F^t(x) in V for some 1 <= t <= steps.
inline bool cylinder_mixing(const gca::Gca& f, int width, int steps, int min_period, int max_period) {
  const std::size_t n = f.group().order();
  std::size_t cyl = 1;
  for (int i = 0; i < width; ++i) cyl *= n;
  std::vector<bool> hit(cyl * cyl, false);
  std::size_t hits = 0;
  auto code = [&](const std::vector<Elem>& w) {
    std::size_t c = 0;
    for (int i = 0; i < width; ++i) c = c * n + w[i];
    return c;
  };
  for (int p = std::max(min_period, width); p <= max_period && hits < hit.size(); ++p) {
    for_each_word(n, p, [&](const std::vector<Elem>& w) {
      const std::size_t u = code(w);
      std::vector<Elem> x = w;
      for (int t = 1; t <= steps; ++t) {
        x = cyclic_step(f, x);
        const std::size_t k = u * cyl + code(x);
        if (!hit[k]) {
          hit[k] = true;
          ++hits;
        }
      }
    });
  }
  return hits == hit.size();
}

// Every n×n matrix over F_p whose entries have degrees in [lo, hi].
inline std::vector<gca::LaurentMatrix> matrix_corpus(std::uint32_t p, std::size_t n, int lo, int hi) {
  const std::size_t slots = n * n * static_cast<std::size_t>(hi - lo + 1);
  std::vector<gca::LaurentMatrix> out;
  for_each_word(p, slots, [&](const std::vector<Elem>& w) {
    std::map<int, std::vector<std::vector<std::uint32_t>>> coeffs;
    std::size_t k = 0;
    for (int d = lo; d <= hi; ++d) {
      auto& a = coeffs[d];
      a.assign(n, std::vector<std::uint32_t>(n, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = w[k++];
    }
    out.push_back(gca::LaurentMatrix::from_coefficients(p, n, coeffs));
  });
  return out;
}

}  // namespace oracle
