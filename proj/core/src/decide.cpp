#include "gca/decide.hpp"

#include <algorithm>
#include <functional>

#include "gca/debruijn.hpp"
#include "gca/error.hpp"
#include "gca/limits.hpp"
#include "gca/linear.hpp"

namespace gca {

using nlohmann::json;

std::string_view to_string(LeafKind k) {
  switch (k) {
    case LeafKind::AbelianElementary: return "abelianElementary";
    case LeafKind::NonAbelianSimpleProduct: return "nonAbelianSimpleProduct";
    case LeafKind::Unsupported: return "unsupported";
  }
  return "unsupported";
}

// ---- decomposition ----

LeafKind classify_leaf(const FiniteGroup& g) {
  if (elementary_abelian_basis(g)) return LeafKind::AbelianElementary;
  if (g.kind() == GroupKind::Product) {
    const auto& fs = g.factors();
    bool ok = !fs.empty();
    for (std::size_t t = 0; ok && t < fs.size(); ++t)
      ok = !is_abelian(fs[t]) && is_simple(fs[t]) && (t == 0 || are_isomorphic(fs[0], fs[t]).has_value());
    if (ok) return LeafKind::NonAbelianSimpleProduct;
  }
  if (g.order() > 1 && !is_abelian(g) && is_simple(g)) return LeafKind::NonAbelianSimpleProduct;
  return LeafKind::Unsupported;
}

namespace {

DecompNode build_node(const Gca& f, std::string role, SplitChoice choice) {
  DecompNode node{f, std::move(role), std::nullopt, {}, LeafKind::Unsupported};
  const FiniteGroup& g = f.group();
  if (is_invariantly_simple(g)) {
    node.kind = classify_leaf(g);
    return node;
  }
  std::vector<Subgroup> candidates;
  for (auto& h : fully_invariant_subgroups(g))
    if (!h.is_trivial() && !h.is_whole()) candidates.push_back(std::move(h));
  const Subgroup& h = choice == SplitChoice::SmallestFirst ? candidates.front() : candidates.back();
  if (!preserves_subgroup(f, h))
    throw Error(ErrorKind::AssumptionViolated, "fully invariant subgroup not preserved by the rule");
  node.split_order = h.order();
  QuotientGroup q = quotient(g, h);
  node.children.push_back(build_node(quotient_gca(f, q), "quotient", choice));
  node.children.push_back(build_node(restrict_to(f, h), "restriction", choice));
  return node;
}

json node_json(const DecompNode& n) {
  json j{{"role", n.role}, {"group", describe(n.rule.group())}, {"order", n.rule.group().order()},
         {"radius", n.rule.radius()}};
  if (n.is_leaf()) {
    j["kind"] = std::string(to_string(n.kind));
  } else {
    j["splitOrder"] = *n.split_order;
    j["children"] = json::array();
    for (const auto& c : n.children) j["children"].push_back(node_json(c));
  }
  return j;
}

void collect(const DecompNode& n, std::vector<const DecompNode*>& out) {
  if (n.is_leaf()) out.push_back(&n);
  for (const auto& c : n.children) collect(c, out);
}

int node_depth(const DecompNode& n) {
  int d = 0;
  for (const auto& c : n.children) d = std::max(d, 1 + node_depth(c));
  return d;
}

}  // namespace

std::vector<const DecompNode*> DecompositionTree::leaves() const {
  std::vector<const DecompNode*> out;
  collect(root, out);
  return out;
}

int DecompositionTree::depth() const { return node_depth(root); }

json DecompositionTree::to_json() const { return node_json(root); }

DecompositionTree decompose(const Gca& f, SplitChoice choice) { return {build_node(f, "root", choice)}; }

// ---- non-abelian leaves ----

namespace {

// Factor coordinates for S_1 × ... × S_m, or a single simple group.
struct Factoring {
  FiniteGroup g;
  bool single;
  std::size_t m;

  explicit Factoring(const FiniteGroup& grp)
      : g(grp), single(grp.kind() != GroupKind::Product), m(single ? 1 : grp.factors().size()) {}
  std::vector<Elem> comps(Elem x) const { return single ? std::vector<Elem>{x} : g.components(x); }
  Elem from(const std::vector<Elem>& c) const { return single ? c[0] : g.from_components(c); }
  const FiniteGroup& factor(std::size_t t) const { return single ? g : g.factors()[t]; }
  // Generators of S_t placed in coordinate t.
  std::vector<Elem> factor_generators(std::size_t t) const {
    std::vector<Elem> out;
    for (Elem x : factor(t).generators()) {
      std::vector<Elem> c(m, 0);
      c[t] = x;
      out.push_back(from(c));
    }
    return out;
  }
  // All elements of the sub-product over `block`.
  std::vector<Elem> subproduct(const std::vector<std::size_t>& block) const {
    std::vector<Elem> out{0};
    for (std::size_t t : block) {
      std::vector<Elem> next;
      for (Elem x : out) {
        auto c = comps(x);
        for (Elem s = 0; s < factor(t).order(); ++s) {
          c[t] = s;
          next.push_back(from(c));
        }
      }
      out = std::move(next);
    }
    return out;
  }
};

}  // namespace

json NonAbelianAnalysis::to_json() const {
  json blocks_json = json::array();
  for (const auto& b : blocks) {
    json J = json::object();
    for (int i = -radius; i <= radius; ++i) {
      std::vector<std::size_t> one_based;
      for (auto t : b.J[static_cast<std::size_t>(i + radius)]) one_based.push_back(t + 1);
      J[std::to_string(i)] = one_based;
    }
    std::vector<std::size_t> fac;
    for (auto t : b.factors) fac.push_back(t + 1);
    json bj{{"factors", fac}, {"J", J}, {"delta", b.delta}, {"surjective", b.surjective}};
    if (b.shift_power) bj["shiftPower"] = {{"K", b.shift_power->first}, {"exponent", b.shift_power->second}};
    blocks_json.push_back(bj);
  }
  return {{"factorCount", factor_count}, {"minimalBlocks", blocks_json}};
}

NonAbelianAnalysis analyze_nonabelian(const Gca& f, bool search_shift_power) {
  const Factoring fac(f.group());
  const int r = f.radius();
  if (fac.m > 12) throw Error(ErrorKind::SizeLimit, "more than 12 simple factors");
  NonAbelianAnalysis out;
  out.factor_count = fac.m;
  out.radius = r;

  // J_i from the images
  std::vector<std::vector<std::size_t>> J;
  for (int i = -r; i <= r; ++i) {
    Subgroup img = endo_image(f.endo(i));
    std::vector<bool> hit(fac.m, false);
    for (Elem x : img.elements()) {
      auto c = fac.comps(x);
      for (std::size_t t = 0; t < fac.m; ++t)
        if (c[t]) hit[t] = true;
    }
    std::vector<std::size_t> ji;
    std::size_t expected = 1;
    for (std::size_t t = 0; t < fac.m; ++t)
      if (hit[t]) {
        ji.push_back(t);
        expected *= fac.factor(t).order();
      }
    if (img.order() != expected)
      throw Error(ErrorKind::AssumptionViolated, "image of h_" + std::to_string(i) + " has order " +
                                                     std::to_string(img.order()) +
                                                     " and is not a product of simple factors");
    J.push_back(std::move(ji));
  }

  // minimal blocks: split while some bipartition has both sides invariant
  auto invariant = [&](const std::vector<std::size_t>& side) {
    std::vector<bool> in(fac.m, false);
    for (auto t : side) in[t] = true;
    for (auto t : side)
      for (Elem x : fac.factor_generators(t))
        for (int i = -r; i <= r; ++i) {
          auto c = fac.comps(f.endo(i)(x));
          for (std::size_t u = 0; u < fac.m; ++u)
            if (c[u] && !in[u]) return false;
        }
    return true;
  };
  std::vector<std::vector<std::size_t>> blocks;
  std::function<void(const std::vector<std::size_t>&)> split = [&](const std::vector<std::size_t>& block) {
    const std::size_t k = block.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
      if (!(mask & 1)) continue;  // the first index stays on the left
      std::vector<std::size_t> a, b;
      for (std::size_t s = 0; s < k; ++s) (mask >> s & 1 ? a : b).push_back(block[s]);
      if (invariant(a) && invariant(b)) {
        split(a);
        split(b);
        return;
      }
    }
    blocks.push_back(block);
  };
  std::vector<std::size_t> all(fac.m);
  for (std::size_t t = 0; t < fac.m; ++t) all[t] = t;
  split(all);
  std::sort(blocks.begin(), blocks.end());

  for (const auto& block : blocks) {
    BlockAnalysis ba;
    ba.factors = block;
    for (int i = -r; i <= r; ++i) {
      std::vector<std::size_t> ji;
      for (auto t : J[static_cast<std::size_t>(i + r)])
        if (std::find(block.begin(), block.end(), t) != block.end()) ji.push_back(t);
      ba.delta += i * static_cast<int>(ji.size());
      ba.J.push_back(std::move(ji));
    }
    // The block rule acts cell-wise through x -> f(x, ..., x); it is
    // surjective iff that map is a bijection of the sub-product.
    auto elems = fac.subproduct(block);
    if (elems.size() > limits().max_order)
      throw Error(ErrorKind::SizeLimit, "block of order " + std::to_string(elems.size()));
    ba.surjective = true;
    for (Elem x : elems) {
      if (x == 0) continue;
      Elem y = 0;
      for (int i = -r; i <= r; ++i) y = f.group().op(y, f.endo(i)(x));
      if (y == 0) {
        ba.surjective = false;
        break;
      }
    }
    if (search_shift_power && ba.surjective) {
      Gca fb = block.size() == fac.m ? f : restrict_to(f, Subgroup(f.group(), elems));
      try {
        Gca pw = fb;
        for (int t = 1; t <= limits().shift_power_cap; ++t) {
          if (t > 1) pw = compose(pw, fb);
          if (auto s = pw.pure_shift_offset()) {
            ba.shift_power = std::make_pair(t, *s);
            break;
          }
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SizeLimit) throw;
      }
    }
    out.blocks.push_back(std::move(ba));
  }
  return out;
}

// ---- leaf deciders and reports ----

Verdict decide_leaf(const DecompNode& leaf, Property prop, int budget) {
  switch (leaf.kind) {
    case LeafKind::AbelianElementary: {
      LaurentMatrix m = linearize(leaf.rule);
      Verdict v = prop == Property::Expansivity ? lin_is_expansive(m, budget) : lin_is_transitive(m);
      v.evidence["matrix"] = m.to_strings();
      v.evidence["prime"] = m.prime();
      return v;
    }
    case LeafKind::NonAbelianSimpleProduct: {
      NonAbelianAnalysis a;
      try {
        a = analyze_nonabelian(leaf.rule);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::AssumptionViolated) throw;
        return Verdict::unknown(json::object(), e.what());
      }
      json ev = a.to_json();
      for (const auto& b : a.blocks)
        if (!b.surjective) return Verdict::no(ev, "not surjective");
      for (const auto& b : a.blocks)
        if (b.delta == 0) return Verdict::no(ev, "a minimal block has delta = 0, so some power of F is the identity");
      return Verdict::yes(ev, "every minimal block has non-zero delta, so some power of F is a non-trivial shift");
    }
    case LeafKind::Unsupported:
      break;
  }
  return Verdict::unknown({{"leafOrder", leaf.rule.group().order()}},
                          "leaf " + describe(leaf.rule.group()) +
                              " is neither elementary abelian nor a product of isomorphic non-abelian simple groups");
}

Verdict decide_positive_expansive(const Gca& f, int budget) {
  if (elementary_abelian_basis(f.group())) {
    LaurentMatrix m = linearize(f);
    PosExpOptions opt;
    opt.budget = budget;
    Verdict v = lin_pos_expansive(m, opt).as_verdict();
    v.evidence["matrix"] = m.to_strings();
    v.evidence["prime"] = m.prime();
    return v;
  }
  Verdict inj = is_injective(f);
  if (inj.answer == Answer::Yes)
    return Verdict::no({{"witness", "injective"}, {"injectivity", inj.to_json()}},
                       "injective rules on the full shift are never positively expansive");
  Verdict sur = is_surjective(f);
  if (sur.answer == Answer::No)
    return Verdict::no({{"witness", "notSurjective"}, {"surjectivity", sur.to_json()}}, "not surjective");
  return Verdict::unknown({{"group", describe(f.group())}},
                          "no positive-expansivity procedure for non-linear surjective rules");
}

json Report::to_json() const {
  json leaves_json = json::array();
  for (const auto& l : leaves) {
    json lj{{"group", l.group}, {"kind", std::string(to_string(l.kind))}, {"path", l.role_path},
            {"verdict", std::string(to_string(l.verdict.answer))}, {"evidence", l.verdict.evidence}};
    if (!l.verdict.reason.empty()) lj["reason"] = l.verdict.reason;
    if (!l.verdict.budget.empty()) lj["budgetUsed"] = l.verdict.budget;
    leaves_json.push_back(lj);
  }
  json j{{"property", property},
         {"combined", std::string(to_string(combined.answer))},
         {"tree", tree.to_json()},
         {"leaves", leaves_json},
         {"narrative", narrative},
         {"assumptions", assumptions}};
  if (!combined.reason.empty()) j["reason"] = combined.reason;
  if (!combined.evidence.empty()) j["evidence"] = combined.evidence;
  return j;
}

namespace {

void leaf_paths(const DecompNode& n, const std::string& prefix, std::vector<std::pair<const DecompNode*, std::string>>& out) {
  const std::string path = prefix.empty() ? n.role : prefix + "/" + n.role;
  if (n.is_leaf()) out.emplace_back(&n, path);
  for (const auto& c : n.children) leaf_paths(c, path, out);
}

void narrate_tree(const DecompNode& n, std::vector<std::string>& out) {
  if (n.is_leaf()) return;
  out.push_back("Split " + describe(n.rule.group()) + " on a fully invariant subgroup of order " +
                std::to_string(*n.split_order) + ": quotient " + describe(n.children[0].rule.group()) +
                ", restriction " + describe(n.children[1].rule.group()) + ".");
  for (const auto& c : n.children) narrate_tree(c, out);
}

Report run_pipeline(const Gca& f, Property prop, int budget, SplitChoice choice) {
  const bool exp = prop == Property::Expansivity;
  Report rep{exp ? "expansivity" : "transitivity", decompose(f, choice), {}, {}, {}, {}};
  if (exp) {
    try {
      Verdict inj = is_injective(f);
      if (inj.answer != Answer::Yes) {
        rep.narrative.push_back("Injectivity gate: F is not injective, and expansivity is only defined for injective rules.");
        rep.combined = Verdict::no({{"injectivity", inj.to_json()}}, "NotInjective");
        return rep;
      }
      rep.narrative.push_back("Injectivity gate: F is injective (" + inj.evidence.value("method", std::string("?")) + ").");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeLimit) throw;
      rep.narrative.push_back("Injectivity gate skipped at the root (" + std::string(e.what()) +
                              "); each leaf decider checks injectivity itself.");
    }
  }
  narrate_tree(rep.tree.root, rep.narrative);
  std::vector<std::pair<const DecompNode*, std::string>> leaves;
  leaf_paths(rep.tree.root, "", leaves);
  bool any_no = false, all_yes = true;
  for (const auto& [leaf, path] : leaves) {
    Verdict v = decide_leaf(*leaf, prop, budget);
    const std::string g = describe(leaf->rule.group());
    std::string how;
    if (leaf->kind == LeafKind::AbelianElementary)
      how = exp ? "F is expansive iff H = F - F^-1 is positively expansive" :
                  "transitive iff det M != 0 and the gcd of the X-coefficients of det(tI - M) is a power of t";
    else if (leaf->kind == LeafKind::NonAbelianSimpleProduct)
      how = "surjective rules on products of isomorphic non-abelian simple groups are expansive and transitive iff every minimal block has delta != 0";
    else
      how = "no decider for this leaf";
    rep.narrative.push_back("Leaf " + g + " (" + std::string(to_string(leaf->kind)) + "): " + how + " => " +
                            std::string(to_string(v.answer)) + (v.reason.empty() ? "" : " (" + v.reason + ")") + ".");
    any_no = any_no || v.answer == Answer::No;
    all_yes = all_yes && v.answer == Answer::Yes;
    rep.leaves.push_back({g, leaf->kind, path, std::move(v)});
  }
  const Answer combined = any_no ? Answer::No : all_yes ? Answer::Yes : Answer::Unknown;
  rep.narrative.push_back(std::string(exp ? "F is expansive" : "F is transitive") +
                          " iff every leaf rule is; combined verdict " + std::string(to_string(combined)) + ".");
  if (!exp && rep.tree.depth() > 0)
    rep.assumptions.push_back(
        "transitivity is combined across decomposition levels using a cited external result, not one proved here");
  rep.combined.answer = combined;
  rep.combined.reason = any_no ? "some leaf is NO" : all_yes ? "every leaf is YES" : "some leaf is UNKNOWN";
  if (combined == Answer::Unknown) {
    json used = json::array();
    for (const auto& l : rep.leaves)
      if (l.verdict.answer == Answer::Unknown) used.push_back({{"path", l.role_path}, {"budget", l.verdict.budget}});
    rep.combined.budget = {{"unknownLeaves", used}};
  }
  return rep;
}

}  // namespace

Report decide_expansive(const Gca& f, int budget, SplitChoice choice) {
  return run_pipeline(f, Property::Expansivity, budget, choice);
}

Report decide_transitive(const Gca& f, int budget, SplitChoice choice) {
  return run_pipeline(f, Property::Transitivity, budget, choice);
}

json check_exp_implies_trans(const std::vector<NamedRule>& corpus, int budget) {
  json rows = json::array(), violations = json::array();
  for (const auto& [name, rule] : corpus) {
    Report e = decide_expansive(rule, budget), t = decide_transitive(rule, budget);
    const auto ea = to_string(e.combined.answer), ta = to_string(t.combined.answer);
    rows.push_back({{"name", name}, {"expansive", ea}, {"transitive", ta}});
    if (e.combined.answer == Answer::Yes && t.combined.answer == Answer::No)
      violations.push_back({{"name", name}, {"expansive", e.to_json()}, {"transitive", t.to_json()}});
  }
  return {{"instances", corpus.size()}, {"violations", violations}, {"rows", rows}};
}

}  // namespace gca
