#include "gca/linear.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "gca/error.hpp"
#include "gca/limits.hpp"

namespace gca {

using nlohmann::json;

// ---- Z/pZ linear algebra ----

std::size_t gf_rref(GfMatrix& a, std::uint32_t p) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = inverse_mod(a[rank][c], p);
    for (auto& v : a[rank]) v = static_cast<std::uint32_t>(v * inv % p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c];
      for (std::size_t k = c; k < cols; ++k)
        a[r][k] = static_cast<std::uint32_t>((a[r][k] + p - f * a[rank][k] % p) % p);
    }
    ++rank;
  }
  a.resize(rank);
  return rank;
}

GfMatrix gf_nullspace(GfMatrix a, std::size_t cols, std::uint32_t p) {
  for (auto& row : a) row.resize(cols, 0);
  gf_rref(a, p);
  std::vector<long> pivot_of(cols, -1);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (a[r][c]) {
        pivot_of[c] = static_cast<long>(r);
        break;
      }
  GfMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_of[f] >= 0) continue;
    std::vector<std::uint32_t> x(cols, 0);
    x[f] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of[c] >= 0) x[c] = (p - a[static_cast<std::size_t>(pivot_of[c])][f]) % p;
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace {

std::uint32_t gf_det(GfMatrix a, std::uint32_t p) {
  const std::size_t n = a.size();
  std::uint64_t d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = (p - d) % p;
    }
    d = d * a[c][c] % p;
    const std::uint64_t inv = inverse_mod(a[c][c], p);
    for (std::size_t r = c + 1; r < n; ++r) {
      const std::uint64_t f = a[r][c] * inv % p;
      for (std::size_t k = c; k < n; ++k) a[r][k] = static_cast<std::uint32_t>((a[r][k] + p - f * a[c][k] % p) % p);
    }
  }
  return static_cast<std::uint32_t>(d);
}

int matrix_radius(const LaurentMatrix& m) {
  if (m.is_zero()) return 0;
  return std::max(std::abs(*m.min_degree()), std::abs(*m.max_degree()));
}

bool is_zero_vec(const std::vector<std::uint32_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

VecConfig delta(std::size_t n, long long at) {
  std::vector<std::uint32_t> v(n, 0);
  v[0] = 1;
  return VecConfig{{at, v}};
}

}  // namespace

nlohmann::json vec_config_to_json(const VecConfig& c) {
  json support = json::object();
  for (const auto& [q, v] : c) support[std::to_string(q)] = v;
  return {{"kind", "finite"}, {"support", support}};
}

VecConfig vec_config_from_json(const nlohmann::json& j) {
  VecConfig c;
  for (auto it = j.at("support").begin(); it != j.at("support").end(); ++it) {
    auto v = it.value().get<std::vector<std::uint32_t>>();
    if (!is_zero_vec(v)) c[std::stoll(it.key())] = v;
  }
  return c;
}

// ---- GCA <-> matrix ----

LaurentMatrix linearize(const Gca& f) {
  auto basis = elementary_abelian_basis(f.group());
  if (!basis || basis->dimension == 0)
    throw Error(ErrorKind::NotElementaryAbelian, describe(f.group()) + " is not elementary abelian");
  const std::size_t n = basis->dimension;
  std::map<int, GfMatrix> coeffs;
  for (int d = -f.radius(); d <= f.radius(); ++d) {
    GfMatrix a(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
      const auto& img = basis->coords[f.endo(d)(basis->basis[j])];
      for (std::size_t i = 0; i < n; ++i) a[i][j] = img[i];
    }
    coeffs[d] = std::move(a);
  }
  return LaurentMatrix::from_coefficients(basis->prime, n, coeffs);
}

Gca to_gca(const FiniteGroup& g, const LaurentMatrix& m) {
  auto basis = elementary_abelian_basis(g);
  if (!basis) throw Error(ErrorKind::NotElementaryAbelian, describe(g) + " is not elementary abelian");
  if (basis->dimension != m.dim() || basis->prime != m.prime())
    throw Error(ErrorKind::InvalidArgument, "matrix does not match " + describe(g));
  const int r = matrix_radius(m);
  const std::uint32_t p = m.prime();
  std::vector<Endomorphism> endos;
  for (int d = -r; d <= r; ++d) {
    auto a = m.coefficient(d);
    std::vector<Elem> images(g.order());
    std::vector<std::uint32_t> y(m.dim());
    for (Elem x = 0; x < g.order(); ++x) {
      const auto& cx = basis->coords[x];
      for (std::size_t i = 0; i < m.dim(); ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < m.dim(); ++j) s += static_cast<std::uint64_t>(a[i][j]) * cx[j];
        y[i] = static_cast<std::uint32_t>(s % p);
      }
      images[x] = basis->from_coords(y);
    }
    endos.emplace_back(g, std::move(images));
  }
  return Gca(g, r, std::move(endos));
}

VecConfig lin_apply(const LaurentMatrix& m, const VecConfig& c) {
  const std::size_t n = m.dim();
  const std::uint32_t p = m.prime();
  std::map<long long, std::vector<std::uint64_t>> acc;
  for (const auto& [q, v] : c)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        if (!v[s]) continue;
        for (auto [d, coef] : m.at(r, s).terms()) {
          auto& slot = acc.try_emplace(q - d, std::vector<std::uint64_t>(n, 0)).first->second;
          slot[r] = (slot[r] + static_cast<std::uint64_t>(coef) * v[s]) % p;
        }
      }
  VecConfig out;
  for (auto& [i, v] : acc) {
    std::vector<std::uint32_t> w(v.begin(), v.end());
    if (!is_zero_vec(w)) out[i] = std::move(w);
  }
  return out;
}

// ---- injectivity / surjectivity / inverse ----

Verdict lin_is_injective(const LaurentMatrix& m) {
  LaurentPoly d = det(m);
  json ev{{"method", "determinant"}, {"det", d.to_string()}};
  if (d.as_monomial()) return Verdict::yes(ev, "det is a unit monomial");
  return Verdict::no(ev, d.is_zero() ? "det is zero" : "det is not a monomial");
}

Verdict lin_is_surjective(const LaurentMatrix& m) {
  LaurentPoly d = det(m);
  json ev{{"method", "determinant"}, {"det", d.to_string()}};
  if (!d.is_zero()) return Verdict::yes(ev, "det is non-zero");
  auto w = finite_kernel_vector(m, static_cast<int>(m.dim() * 2 + 1) * std::max(1, 2 * matrix_radius(m)));
  if (w) ev["kernelWitness"] = vec_config_to_json(*w);
  return Verdict::no(ev, "det is zero");
}

LaurentMatrix lin_invert(const LaurentMatrix& m) {
  LaurentPoly d = det(m);
  auto mono = d.as_monomial();
  if (!mono) throw Error(ErrorKind::NotInjective, "det " + d.to_string() + " is not a unit monomial");
  LaurentPoly scale = LaurentPoly::monomial(m.prime(), inverse_mod(mono->first, m.prime()), -mono->second);
  LaurentMatrix inv = adjugate(m).scaled(scale);
  if (!(m * inv == LaurentMatrix::identity(m.prime(), m.dim())))
    throw Error(ErrorKind::AssumptionViolated, "adjugate inverse fails M*M^-1 = I");
  return inv;
}

std::optional<VecConfig> finite_kernel_vector(const LaurentMatrix& m, int max_width) {
  const std::size_t n = m.dim();
  const std::uint32_t p = m.prime();
  if (m.is_zero()) return delta(n, 0);
  const int dmin = *m.min_degree(), dmax = *m.max_degree();
  for (int w = 1; w <= max_width; ++w) {
    const std::size_t vars = n * static_cast<std::size_t>(w);
    if (vars > limits().linear_variables) break;
    GfMatrix rows;
    for (long long i = -dmax; i <= w - 1 - dmin; ++i)
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::uint32_t> row(vars, 0);
        for (std::size_t s = 0; s < n; ++s)
          for (auto [d, coef] : m.at(r, s).terms()) {
            long long q = i + d;
            if (q >= 0 && q < w) row[static_cast<std::size_t>(q) * n + s] = coef;
          }
        rows.push_back(std::move(row));
      }
    auto ns = gf_nullspace(rows, vars, p);
    if (ns.empty()) continue;
    VecConfig c;
    for (int q = 0; q < w; ++q) {
      std::vector<std::uint32_t> v(ns[0].begin() + q * static_cast<long>(n), ns[0].begin() + (q + 1) * static_cast<long>(n));
      if (!is_zero_vec(v)) c[q] = v;
    }
    return c;
  }
  return std::nullopt;
}

// ---- positive expansivity ----

Verdict scalar_pos_expansive(const LaurentPoly& f) {
  json ev{{"method", "scalar-degrees"}, {"poly", f.to_string()}};
  if (f.is_zero()) return Verdict::no(ev, "zero rule");
  ev["minDegree"] = f.min_degree();
  ev["maxDegree"] = f.max_degree();
  if (f.min_degree() >= 0) return Verdict::no(ev, "no negative degree: left fronts never advance");
  if (f.max_degree() <= 0) return Verdict::no(ev, "no positive degree: right fronts never advance");
  return Verdict::yes(ev, "both extreme degrees straddle 0");
}

namespace {

// Projection onto x_0 of the windows c supported in (-inf, 0] with
// P(c)_j = 0 for every j >= 1 and every P in `powers`.
GfMatrix trapped_core(const std::vector<LaurentMatrix>& powers, std::size_t n, std::uint32_t p) {
  long long lo = 0;
  for (const auto& P : powers)
    if (!P.is_zero() && *P.min_degree() < 0) lo = std::min<long long>(lo, 1 + *P.min_degree());
  const std::size_t vars = n * static_cast<std::size_t>(1 - lo);
  if (vars > limits().linear_variables)
    throw Error(ErrorKind::SizeLimit, "trapped-window system with " + std::to_string(vars) + " variables");
  GfMatrix rows;
  for (const auto& P : powers) {
    if (P.is_zero() || *P.min_degree() >= 0) continue;
    for (long long j = 1; j <= -*P.min_degree(); ++j)
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::uint32_t> row(vars, 0);
        bool any = false;
        for (std::size_t s = 0; s < n; ++s)
          for (auto [d, coef] : P.at(r, s).terms()) {
            long long q = j + d;
            if (q > 0) continue;
            row[static_cast<std::size_t>(q - lo) * n + s] = coef;
            any = true;
          }
        if (any) rows.push_back(std::move(row));
      }
  }
  GfMatrix proj;
  for (auto& v : gf_nullspace(rows, vars, p)) {
    std::vector<std::uint32_t> x0(v.end() - static_cast<long>(n), v.end());
    if (!is_zero_vec(x0)) proj.push_back(std::move(x0));
  }
  gf_rref(proj, p);
  return proj;
}

std::vector<LaurentMatrix> powers_up_to(const LaurentMatrix& m, int k) {
  std::vector<LaurentMatrix> out;
  LaurentMatrix cur = m;
  for (int t = 1; t <= k; ++t) {
    out.push_back(cur);
    if (t < k) cur = cur * m;
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> box_rows_out(const LaurentMatrix& m, int len, GfMatrix& fin) {
  const std::size_t n = m.dim();
  const std::size_t N = n * static_cast<std::size_t>(len + 1);
  GfMatrix out;
  fin.assign(N, std::vector<std::uint32_t>(N, 0));
  if (m.is_zero()) return out;
  const int dmin = *m.min_degree(), dmax = *m.max_degree();
  for (long long i = -len - dmax; i <= -dmin; ++i)
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<std::uint32_t> row(N, 0);
      for (std::size_t s = 0; s < n; ++s)
        for (auto [d, coef] : m.at(r, s).terms()) {
          long long q = i + d;
          if (q < -len || q > 0) continue;
          row[static_cast<std::size_t>(q + len) * n + s] = coef;
        }
      if (i >= -len && i <= 0)
        fin[static_cast<std::size_t>(i + len) * n + r] = std::move(row);
      else if (!is_zero_vec(row))
        out.push_back(std::move(row));
    }
  return out;
}

json boxed_witness(const LaurentMatrix& m, int len, const std::vector<std::uint32_t>& v) {
  const std::size_t n = m.dim();
  VecConfig c;
  for (int q = 0; q <= len; ++q) {
    std::vector<std::uint32_t> cell(v.begin() + q * static_cast<long>(n), v.begin() + (q + 1) * static_cast<long>(n));
    if (!is_zero_vec(cell)) c[q - len] = cell;
  }
  // move the rightmost non-zero cell to position 0
  const long long s = c.rbegin()->first;
  VecConfig shifted;
  for (auto& [q, cell] : c) shifted[q - s] = cell;
  return {{"config", vec_config_to_json(shifted)}, {"box", {-len - s, -s}}};
}

bool within(const VecConfig& c, long long lo, long long hi) {
  return c.empty() || (c.begin()->first >= lo && c.rbegin()->first <= hi);
}

}  // namespace

GfMatrix trapped_projection(const LaurentMatrix& m, int k, Side side) {
  const LaurentMatrix base = side == Side::Left ? m : m.mirrored();
  if (base.is_zero()) {
    GfMatrix all(m.dim(), std::vector<std::uint32_t>(m.dim(), 0));
    for (std::size_t i = 0; i < m.dim(); ++i) all[i][i] = 1;
    return all;
  }
  return trapped_core(powers_up_to(base, k), m.dim(), m.prime());
}

GfMatrix boxed_subspace(const LaurentMatrix& m, int len) {
  const std::size_t N = m.dim() * static_cast<std::size_t>(len + 1);
  if (N > limits().linear_variables) throw Error(ErrorKind::SizeLimit, "boxed-orbit system too large");
  GfMatrix fin;
  GfMatrix rows = box_rows_out(m, len, fin);
  std::size_t rank = gf_rref(rows, m.prime());
  for (;;) {
    GfMatrix next = rows;
    for (const auto& row : rows) {
      std::vector<std::uint64_t> acc(N, 0);
      for (std::size_t k = 0; k < N; ++k) {
        if (!row[k]) continue;
        for (std::size_t c = 0; c < N; ++c) acc[c] = (acc[c] + static_cast<std::uint64_t>(row[k]) * fin[k][c]) % m.prime();
      }
      next.emplace_back(acc.begin(), acc.end());
    }
    std::size_t r = gf_rref(next, m.prime());
    rows = std::move(next);
    if (r == rank) break;
    rank = r;
  }
  auto basis = gf_nullspace(rows, N, m.prime());
  gf_rref(basis, m.prime());
  return basis;
}

bool recheck_witness(const LaurentMatrix& m, const std::string& kind, const json& payload, int horizon,
                     bool two_sided) {
  std::optional<LaurentMatrix> inv;
  if (two_sided) inv = lin_invert(m);
  if (kind == "singularDeterminant") {
    if (!det(m).is_zero()) return false;
    if (!payload.contains("kernel")) return true;
    VecConfig c = vec_config_from_json(payload.at("kernel"));
    return !c.empty() && lin_apply(m, c).empty();
  }
  if (kind == "injective") return det(m).as_monomial().has_value();
  if (kind == "oneSidedDegrees") {
    const bool left = payload.at("side") == "left";
    VecConfig start = delta(m.dim(), 0);
    auto ok = [&](const VecConfig& c) {
      return c.empty() || (left ? c.rbegin()->first <= 0 : c.begin()->first >= 0);
    };
    VecConfig c = start;
    for (int t = 0; t < horizon; ++t)
      if (!ok(c = lin_apply(m, c))) return false;
    if (inv) {
      c = start;
      for (int t = 0; t < horizon; ++t)
        if (!ok(c = lin_apply(*inv, c))) return false;
    }
    return true;
  }
  if (kind == "boxedOrbit") {
    VecConfig start = vec_config_from_json(payload.at("config"));
    const long long lo = payload.at("box")[0], hi = payload.at("box")[1];
    if (start.empty() || !within(start, lo, hi)) return false;
    for (const LaurentMatrix* step : std::vector<const LaurentMatrix*>{&m, inv ? &*inv : nullptr}) {
      if (!step) continue;
      std::set<VecConfig> seen{start};
      VecConfig c = start;
      for (int t = 0; t < horizon; ++t) {
        c = lin_apply(*step, c);
        if (!within(c, lo, hi)) return false;
        if (!seen.insert(c).second) break;
      }
    }
    return true;
  }
  return false;
}

Verdict PosExpVerdict::as_verdict() const {
  json ev = payload;
  if (!witness_kind.empty()) ev["witness"] = witness_kind;
  if (left_bound) ev["leftBound"] = *left_bound;
  if (right_bound) ev["rightBound"] = *right_bound;
  return {answer, ev, budget, reason};
}

PosExpVerdict lin_pos_expansive(const LaurentMatrix& m, const PosExpOptions& opt) {
  PosExpVerdict v;
  const std::size_t n = m.dim();
  LaurentPoly d = det(m);
  if (d.is_zero()) {
    v.answer = Answer::No;
    v.witness_kind = "singularDeterminant";
    v.payload = {{"det", "0"}};
    const int span = m.is_zero() ? 0 : *m.max_degree() - *m.min_degree();
    if (auto k = finite_kernel_vector(m, static_cast<int>(n - 1) * span + 1)) v.payload["kernel"] = vec_config_to_json(*k);
    v.reason = "not surjective";
    return v;
  }
  if (opt.injectivity_shortcut && d.as_monomial()) {
    v.answer = Answer::No;
    v.witness_kind = "injective";
    v.payload = {{"det", d.to_string()}};
    v.reason = "injective rules on the full shift are never positively expansive";
    return v;
  }
  const int dmin = *m.min_degree(), dmax = *m.max_degree();
  if (dmax <= 0 || dmin >= 0) {
    v.answer = Answer::No;
    v.witness_kind = "oneSidedDegrees";
    v.payload = dmax <= 0 ? json{{"side", "right"}, {"maxDegree", dmax}} : json{{"side", "left"}, {"minDegree", dmin}};
    v.reason = dmax <= 0 ? "right fronts never move left" : "left fronts never move right";
    return v;
  }
  if (opt.fast_path && gf_det(m.coefficient(dmin), m.prime()) && gf_det(m.coefficient(dmax), m.prime())) {
    v.answer = Answer::Yes;
    v.left_bound = v.right_bound = 1;
    v.payload = {{"method", "extreme-coefficients"}, {"minDegree", dmin}, {"maxDegree", dmax}};
    v.reason = "extreme coefficient matrices are invertible";
    return v;
  }
  const int rho = matrix_radius(m);
  int reached = 0;
  try {
    std::vector<LaurentMatrix> left_pows, right_pows;
    const LaurentMatrix mirror = m.mirrored();
    for (int k = 1; k <= opt.budget; ++k) {
      reached = k;
      left_pows.push_back(k == 1 ? m : left_pows.back() * m);
      right_pows.push_back(k == 1 ? mirror : right_pows.back() * mirror);
      if (!v.left_bound && trapped_core(left_pows, n, m.prime()).empty()) v.left_bound = k;
      if (!v.right_bound && trapped_core(right_pows, n, m.prime()).empty()) v.right_bound = k;
      if (v.left_bound && v.right_bound) {
        v.answer = Answer::Yes;
        v.payload = {{"method", "trapped-window"}};
        v.reason = "every front escapes within the bounds";
        return v;
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeLimit) throw;
  }
  for (int len = 0; len <= opt.budget * rho; ++len) {
    GfMatrix basis;
    try {
      basis = boxed_subspace(m, len);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeLimit) throw;
      break;
    }
    if (basis.empty()) continue;
    v.answer = Answer::No;
    v.witness_kind = "boxedOrbit";
    v.payload = boxed_witness(m, len, basis[0]);
    v.reason = "finite configuration whose orbit stays in a bounded box";
    v.left_bound.reset();
    v.right_bound.reset();
    return v;
  }
  v.answer = Answer::Unknown;
  v.budget = {{"K", reached}, {"boxLength", opt.budget * rho}};
  v.reason = "budget exhausted";
  return v;
}

Verdict lin_is_expansive(const LaurentMatrix& m, int budget) {
  Verdict inj = lin_is_injective(m);
  if (inj.answer != Answer::Yes) {
    Verdict out = Verdict::no({{"injectivity", inj.evidence}}, "NotInjective");
    return out;
  }
  LaurentMatrix h = m - lin_invert(m);
  PosExpOptions opt;
  opt.budget = budget;
  Verdict inner = lin_pos_expansive(h, opt).as_verdict();
  json ev{{"reduction", "H = F - F^-1"}, {"H", h.to_strings()}, {"positiveExpansivityOfH", inner.to_json()}};
  return {inner.answer, ev, inner.budget, inner.reason};
}

Verdict lin_expansive_direct(const LaurentMatrix& m, int budget) {
  Verdict inj = lin_is_injective(m);
  if (inj.answer != Answer::Yes) return Verdict::no({{"injectivity", inj.evidence}}, "NotInjective");
  const LaurentMatrix inv = lin_invert(m);
  const std::size_t n = m.dim();
  auto one_sided = [&](bool left) {
    for (const auto* x : {&m, &inv})
      if (left ? *x->min_degree() < 0 : *x->max_degree() > 0) return false;
    return true;
  };
  for (bool left : {true, false})
    if (one_sided(left)) {
      json ev{{"witness", "oneSidedDegrees"}, {"side", left ? "left" : "right"}};
      return Verdict::no(ev, left ? "neither F nor F^-1 moves left fronts right"
                                  : "neither F nor F^-1 moves right fronts left");
    }
  std::optional<int> lb, rb;
  int reached = 0;
  try {
    std::vector<LaurentMatrix> lp, rp;
    const LaurentMatrix mm = m.mirrored(), im = inv.mirrored();
    LaurentMatrix f = m, b = inv, fm = mm, bm = im;
    for (int k = 1; k <= budget; ++k) {
      reached = k;
      lp.push_back(f);
      lp.push_back(b);
      rp.push_back(fm);
      rp.push_back(bm);
      if (!lb && trapped_core(lp, n, m.prime()).empty()) lb = k;
      if (!rb && trapped_core(rp, n, m.prime()).empty()) rb = k;
      if (lb && rb)
        return Verdict::yes({{"method", "two-sided trapped window"}, {"leftBound", *lb}, {"rightBound", *rb}},
                            "every front escapes in one time direction within the bounds");
      f = f * m;
      b = b * inv;
      fm = fm * mm;
      bm = bm * im;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeLimit) throw;
  }
  const int rho = std::max(matrix_radius(m), matrix_radius(inv));
  for (int len = 0; len <= budget * rho; ++len) {
    GfMatrix basis;
    try {
      basis = boxed_subspace(m, len);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeLimit) throw;
      break;
    }
    if (basis.empty()) continue;
    json ev = boxed_witness(m, len, basis[0]);
    ev["witness"] = "boxedOrbit";
    return Verdict::no(ev, "two-sided orbit confined to a bounded box");
  }
  return Verdict::unknown({{"K", reached}, {"boxLength", budget * rho}}, "budget exhausted");
}

Verdict lin_is_transitive(const LaurentMatrix& m) {
  LaurentPoly d = det(m);
  json ev{{"det", d.to_string()}};
  if (d.is_zero()) return Verdict::no(ev, "not surjective");
  CharPoly chi = char_poly(m);
  TPoly g{m.prime(), {}};
  json qs = json::object();
  for (const auto& [k, q] : chi.by_x_degree) {
    qs[std::to_string(k)] = q.to_string();
    g = tpoly_gcd(g, q);
  }
  ev["charPoly"] = qs;
  ev["gcd"] = g.to_string();
  if (g.is_power_of_t()) return Verdict::yes(ev, "gcd of the X-coefficients of the characteristic polynomial is a power of t");
  return Verdict::no(ev, "gcd has an irreducible factor other than t");
}

}  // namespace gca
