#pragma once

// Small groups and brute-force structure for the unit tests.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gca/configuration.hpp"
#include "gca/group.hpp"

namespace fixture {

using gca::Elem;
using gca::FiniteGroup;

inline FiniteGroup s3() { return FiniteGroup::permutation(3, {{1, 0, 2}, {1, 2, 0}}); }
inline FiniteGroup a5() { return FiniteGroup::permutation(5, {{1, 2, 0, 3, 4}, {1, 2, 3, 4, 0}}); }

// Closure of `gens` under the group law.
inline std::set<Elem> closure(const FiniteGroup& g, std::vector<Elem> gens) {
  std::set<Elem> s{0};
  std::vector<Elem> todo{0};
  while (!todo.empty()) {
    Elem x = todo.back();
    todo.pop_back();
    for (Elem y : gens) {
      Elem z = g.op(x, y);
      if (s.insert(z).second) todo.push_back(z);
    }
  }
  return s;
}

// Every map G -> G respecting the law (exhaustive, tiny groups only).
inline std::vector<std::vector<Elem>> all_homomorphisms(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> m(n, 0);
  for (;;) {
    bool hom = m[0] == 0;
    for (Elem a = 0; a < n && hom; ++a)
      for (Elem b = 0; b < n && hom; ++b) hom = m[g.op(a, b)] == g.op(m[a], m[b]);
    if (hom) out.push_back(m);
    std::size_t i = n;
    while (i > 0 && ++m[i - 1] == n) m[--i] = 0;
    if (i == 0) return out;
  }
}

// Subsets closed under the law (exhaustive, |G| <= 12).
inline std::vector<std::set<Elem>> all_subgroups(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::set<Elem>> out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (!(mask & 1)) continue;
    bool closed = true;
    for (Elem a = 0; a < n && closed; ++a)
      for (Elem b = 0; b < n && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1)) closed = mask >> g.op(a, b) & 1;
    if (!closed) continue;
    std::set<Elem> s;
    for (Elem a = 0; a < n; ++a)
      if (mask >> a & 1) s.insert(a);
    out.push_back(s);
  }
  return out;
}

// Finite configuration with random support on [lo, hi].
inline gca::Configuration random_finite(std::mt19937& rng, std::size_t order, long long lo, long long hi) {
  std::map<long long, Elem> sup;
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(order - 1));
  for (long long i = lo; i <= hi; ++i) sup[i] = pick(rng);
  return gca::Configuration::finite(sup);
}

// Eventually periodic configuration with random tails and core.
inline gca::Configuration random_ep(std::mt19937& rng, std::size_t order) {
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(order - 1));
  std::uniform_int_distribution<int> len(1, 3);
  auto word = [&](int k) {
    std::vector<Elem> w(k);
    for (auto& x : w) x = pick(rng);
    return w;
  };
  return gca::Configuration::eventually_periodic(word(len(rng)), word(len(rng) + 2), -2, word(len(rng)));
}

}  // namespace fixture
