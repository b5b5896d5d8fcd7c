#include "gca/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "gca/error.hpp"
#include "gca/limits.hpp"

namespace gca {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// ---- LaurentPoly ----

LaurentPoly LaurentPoly::monomial(std::uint32_t p, std::uint32_t coeff, int degree) {
  LaurentPoly r(p);
  r.set(degree, coeff % p);
  return r;
}

void LaurentPoly::set(int d, std::uint32_t c) {
  if (c == 0)
    terms_.erase(d);
  else
    terms_[d] = c;
}

std::uint32_t LaurentPoly::coeff(int d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? 0 : it->second;
}

std::optional<std::pair<std::uint32_t, int>> LaurentPoly::as_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  return std::make_pair(terms_.begin()->second, terms_.begin()->first);
}

LaurentPoly LaurentPoly::mirrored() const {
  LaurentPoly r(p_);
  for (auto [d, c] : terms_) r.terms_[-d] = c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto [d, c] : o.terms_) set(d, (coeff(d) + c) % p_);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto [d, c] : o.terms_) set(d, (coeff(d) + p_ - c) % p_);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r(a.p_);
  if (a.is_zero() || b.is_zero()) return r;
  const int lo = a.min_degree() + b.min_degree();
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(a.max_degree() + b.max_degree() - lo + 1), 0);
  for (auto [da, ca] : a.terms_)
    for (auto [db, cb] : b.terms_) {
      auto& slot = acc[static_cast<std::size_t>(da + db - lo)];
      slot = (slot + static_cast<std::uint64_t>(ca) * cb) % a.p_;
    }
  for (std::size_t k = 0; k < acc.size(); ++k)
    if (acc[k]) r.terms_[lo + static_cast<int>(k)] = static_cast<std::uint32_t>(acc[k]);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(p_);
  for (auto [d, c] : terms_) r.terms_[d] = p_ - c;
  return r;
}

LaurentPoly LaurentPoly::scaled(std::uint32_t c) const {
  LaurentPoly r(p_);
  for (auto [d, v] : terms_) r.set(d, static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * c % p_));
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r(p_);
  for (auto [d, c] : terms_) r.terms_[d + k] = c;
  return r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto [d, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (d == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "X";
    if (d != 1) out += "^" + std::to_string(d);
  }
  return out;
}

LaurentPoly LaurentPoly::parse(std::string_view text, std::uint32_t p) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "Laurent polynomial \"" + std::string(text) + "\": " + why);
  };
  if (s.empty()) fail("empty");
  LaurentPoly r(p);
  std::size_t pos = 0;
  auto number = [&](bool allow_sign) -> std::optional<long long> {
    std::size_t start = pos;
    if (allow_sign && pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (allow_sign && pos == start + 1 && s[start] == '-')) {
      pos = start;
      return std::nullopt;
    }
    return std::stoll(s.substr(start, pos - start));
  };
  while (pos <= s.size()) {
    long long c = 1;
    int d = 0;
    auto coef = number(false);
    if (coef) {
      c = *coef;
      if (c < 0 || c >= static_cast<long long>(p)) fail("coefficient outside [0, p)");
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (pos < s.size() && (s[pos] == 'X' || s[pos] == 'x')) {
      ++pos;
      d = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        auto e = number(true);
        if (!e) fail("bad exponent");
        d = static_cast<int>(*e);
      }
    } else if (!coef) {
      fail("expected a term");
    }
    r += monomial(p, static_cast<std::uint32_t>(c), d);
    if (pos == s.size()) break;
    if (s[pos] != '+') fail("unexpected character '" + std::string(1, s[pos]) + "'");
    ++pos;
    if (pos == s.size()) fail("trailing '+'");
  }
  return r;
}

// ---- TPoly ----

void TPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

bool TPoly::is_power_of_t() const {
  if (c.empty()) return false;
  return std::count_if(c.begin(), c.end(), [](std::uint32_t v) { return v != 0; }) == 1;
}

std::string TPoly::to_string() const {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k]) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += std::to_string(c[k]);
      continue;
    }
    if (c[k] != 1) out += std::to_string(c[k]) + "*";
    out += "t";
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

TPoly tpoly_mod(TPoly a, const TPoly& b) {
  a.trim();
  const std::uint32_t p = a.p;
  const std::uint32_t lead_inv = inverse_mod(b.c.back(), p);
  while (!a.c.empty() && a.degree() >= b.degree()) {
    const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
    const std::uint64_t q = static_cast<std::uint64_t>(a.c.back()) * lead_inv % p;
    for (std::size_t k = 0; k < b.c.size(); ++k)
      a.c[k + shift] = static_cast<std::uint32_t>((a.c[k + shift] + p - q * b.c[k] % p) % p);
    a.trim();
  }
  return a;
}

TPoly tpoly_gcd(TPoly a, TPoly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    TPoly r = tpoly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    const std::uint64_t inv = inverse_mod(a.c.back(), a.p);
    for (auto& v : a.c) v = static_cast<std::uint32_t>(v * inv % a.p);
  }
  return a;
}

// ---- LaurentMatrix ----

LaurentMatrix::LaurentMatrix(std::uint32_t p, std::size_t n) : p_(p), n_(n), e_(n * n, LaurentPoly(p)) {}

LaurentMatrix LaurentMatrix::identity(std::uint32_t p, std::size_t n) {
  LaurentMatrix m(p, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(p, 1);
  return m;
}

LaurentMatrix LaurentMatrix::parse(const std::vector<std::vector<std::string>>& rows, std::uint32_t p) {
  const std::size_t n = rows.size();
  LaurentMatrix m(p, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorKind::ParseError, "Laurent matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = LaurentPoly::parse(rows[i][j], p);
  }
  return m;
}

LaurentMatrix LaurentMatrix::from_coefficients(std::uint32_t p, std::size_t n,
                                               const std::map<int, std::vector<std::vector<std::uint32_t>>>& a) {
  LaurentMatrix m(p, n);
  for (const auto& [d, A] : a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) += LaurentPoly::monomial(p, A[i][j] % p, d);
  return m;
}

bool LaurentMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const LaurentPoly& x) { return x.is_zero(); });
}

std::optional<int> LaurentMatrix::min_degree() const {
  std::optional<int> r;
  for (const auto& x : e_)
    if (!x.is_zero()) r = r ? std::min(*r, x.min_degree()) : x.min_degree();
  return r;
}

std::optional<int> LaurentMatrix::max_degree() const {
  std::optional<int> r;
  for (const auto& x : e_)
    if (!x.is_zero()) r = r ? std::max(*r, x.max_degree()) : x.max_degree();
  return r;
}

std::vector<std::vector<std::uint32_t>> LaurentMatrix::coefficient(int d) const {
  std::vector<std::vector<std::uint32_t>> a(n_, std::vector<std::uint32_t>(n_, 0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) a[i][j] = at(i, j).coeff(d);
  return a;
}

LaurentMatrix LaurentMatrix::mirrored() const {
  LaurentMatrix m(p_, n_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].mirrored();
  return m;
}

std::vector<std::vector<std::string>> LaurentMatrix::to_strings() const {
  std::vector<std::vector<std::string>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i].push_back(at(i, j).to_string());
  return rows;
}

std::string LaurentMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < n_; ++j) out += (j ? ", " : "") + at(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  LaurentMatrix r = a;
  for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] += b.e_[k];
  return r;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
  LaurentMatrix r = a;
  for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] -= b.e_[k];
  return r;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  LaurentMatrix r(a.p_, a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

LaurentMatrix LaurentMatrix::scaled(const LaurentPoly& s) const {
  LaurentMatrix r(p_, n_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * s;
  return r;
}

LaurentMatrix matrix_power(const LaurentMatrix& m, int t) {
  if (t < 0) throw Error(ErrorKind::InvalidArgument, "negative matrix power");
  LaurentMatrix result = LaurentMatrix::identity(m.prime(), m.dim()), base = m;
  while (t > 0) {
    if (t & 1) result = result * base;
    t >>= 1;
    if (t) base = base * base;
  }
  return result;
}

namespace {

// Cofactor expansion along rows, memoized on the set of remaining columns.
template <class T>
T laplace(const std::vector<const T*>& a, std::size_t n, const T& zero, const T& one) {
  if (n == 0) return one;
  std::vector<std::optional<T>> memo(std::size_t{1} << n);
  memo[0] = one;
  auto rec = [&](auto&& self, std::size_t mask) -> const T& {
    if (memo[mask]) return *memo[mask];
    const std::size_t row = n - static_cast<std::size_t>(__builtin_popcountll(mask));
    T acc = zero;
    int seen = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const T& entry = *a[row * n + j];
      if (!entry.is_zero()) {
        T term = entry * self(self, mask & ~(std::size_t{1} << j));
        if (seen % 2) acc -= term;
        else acc += term;
      }
      ++seen;
    }
    memo[mask] = std::move(acc);
    return *memo[mask];
  };
  return rec(rec, (std::size_t{1} << n) - 1);
}

void check_dimension(std::size_t n) {
  if (n > static_cast<std::size_t>(limits().det_dimension))
    throw Error(ErrorKind::SizeLimit, "matrix dimension " + std::to_string(n) + " exceeds cofactor cap " +
                                          std::to_string(limits().det_dimension));
}

LaurentPoly minor_det(const LaurentMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = m.dim();
  std::vector<const LaurentPoly*> a;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (j != skip_col) a.push_back(&m.at(i, j));
  }
  return laplace(a, n - 1, LaurentPoly(m.prime()), LaurentPoly::constant(m.prime(), 1));
}

// Polynomial in t with Laurent coefficients in X.
struct BiPoly {
  std::uint32_t p;
  std::map<int, LaurentPoly> by_t;

  bool is_zero() const { return by_t.empty(); }
  void put(int k, LaurentPoly v) {
    if (v.is_zero())
      by_t.erase(k);
    else
      by_t.insert_or_assign(k, std::move(v));
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [k, v] : o.by_t) {
      auto it = by_t.find(k);
      put(k, it == by_t.end() ? v : it->second + v);
    }
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [k, v] : o.by_t) {
      auto it = by_t.find(k);
      put(k, it == by_t.end() ? -v : it->second - v);
    }
    return *this;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r{a.p, {}};
    for (const auto& [ka, va] : a.by_t)
      for (const auto& [kb, vb] : b.by_t) {
        auto it = r.by_t.find(ka + kb);
        LaurentPoly prod = va * vb;
        r.put(ka + kb, it == r.by_t.end() ? prod : it->second + prod);
      }
    return r;
  }
};

}  // namespace

LaurentPoly det(const LaurentMatrix& m) {
  check_dimension(m.dim());
  std::vector<const LaurentPoly*> a;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) a.push_back(&m.at(i, j));
  return laplace(a, m.dim(), LaurentPoly(m.prime()), LaurentPoly::constant(m.prime(), 1));
}

LaurentMatrix adjugate(const LaurentMatrix& m) {
  check_dimension(m.dim());
  const std::size_t n = m.dim();
  LaurentMatrix adj(m.prime(), n);
  if (n == 1) {
    adj.at(0, 0) = LaurentPoly::constant(m.prime(), 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentPoly c = minor_det(m, i, j);
      adj.at(j, i) = (i + j) % 2 ? -c : c;
    }
  return adj;
}

CharPoly char_poly(const LaurentMatrix& m) {
  check_dimension(m.dim());
  const std::size_t n = m.dim();
  const std::uint32_t p = m.prime();
  std::vector<BiPoly> entries(n * n, BiPoly{p, {}});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BiPoly& b = entries[i * n + j];
      b.put(0, -m.at(i, j));
      if (i == j) b.put(1, LaurentPoly::constant(p, 1));
    }
  std::vector<const BiPoly*> a;
  for (auto& e : entries) a.push_back(&e);
  BiPoly one{p, {}};
  one.put(0, LaurentPoly::constant(p, 1));
  BiPoly chi = laplace(a, n, BiPoly{p, {}}, one);
  CharPoly out;
  out.p = p;
  for (const auto& [k, coeffs] : chi.by_t)
    for (auto [d, c] : coeffs.terms()) {
      TPoly& q = out.by_x_degree[d];
      q.p = p;
      if (q.c.size() <= static_cast<std::size_t>(k)) q.c.resize(static_cast<std::size_t>(k) + 1, 0);
      q.c[static_cast<std::size_t>(k)] = c;
    }
  return out;
}

std::string CharPoly::to_string() const {
  std::string out;
  for (const auto& [k, q] : by_x_degree) {
    if (!out.empty()) out += " + ";
    out += "(" + q.to_string() + ")";
    if (k != 0) out += k == 1 ? "X" : "X^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace gca
