#pragma once

#include <vector>

#include "gca/rule.hpp"
#include "gca/verdict.hpp"

namespace gca {

// Injectivity through the kernel of F: windows with f(w) = e form a subgraph of
// the de Bruijn graph on G^(2r); F is injective iff after trimming dead ends
// only the all-e loop survives. NO evidence is a configuration c != e^Z with
// F(c) = e^Z. Above the vertex cap the decision is delegated (linear algebra
// for elementary abelian groups, the diagonal map for products of non-abelian
// simple groups); otherwise throws SizeLimit.
Verdict is_injective(const Gca& f);

// Subset construction over the de Bruijn graph read through output labels.
// NO evidence is an orphan word.
Verdict is_surjective(const Gca& f);

// The inverse rule. Throws NotInjective, or SizeLimit when no inverse of radius
// <= limits().invert_radius exists.
Gca invert(const Gca& f);

// True iff no window sequence of length |word| + 2r maps onto `word`.
bool is_orphan(const Gca& f, const std::vector<Elem>& word);

}  // namespace gca
