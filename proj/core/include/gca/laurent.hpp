#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gca {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

// Σ c_d X^d over Z/pZ; no zero coefficients are stored.
class LaurentPoly {
 public:
  explicit LaurentPoly(std::uint32_t p = 2) : p_(p) {}
  static LaurentPoly monomial(std::uint32_t p, std::uint32_t coeff, int degree);
  static LaurentPoly constant(std::uint32_t p, std::uint32_t c) { return monomial(p, c, 0); }
  // "1", "X", "X^-1", "2*X^3+1", "3X^-2 + X". Coefficients must lie in [0, p).
  static LaurentPoly parse(std::string_view text, std::uint32_t p);

  std::uint32_t prime() const { return p_; }
  const std::map<int, std::uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_degree() const { return terms_.begin()->first; }
  int max_degree() const { return terms_.rbegin()->first; }
  std::uint32_t coeff(int d) const;
  // (c, k) when the value is c·X^k with c != 0.
  std::optional<std::pair<std::uint32_t, int>> as_monomial() const;
  // X -> X^-1
  LaurentPoly mirrored() const;
  std::string to_string() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  LaurentPoly scaled(std::uint32_t c) const;
  LaurentPoly shifted(int k) const;  // times X^k
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_;
  }

 private:
  void set(int d, std::uint32_t c);
  std::uint32_t p_;
  std::map<int, std::uint32_t> terms_;
};

// Polynomial in t over Z/pZ, coefficients from degree 0 upward, trimmed.
struct TPoly {
  std::uint32_t p = 2;
  std::vector<std::uint32_t> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  void trim();
  // Monic c·t^s for some s (the zero polynomial is not).
  bool is_power_of_t() const;
  std::string to_string() const;
  friend bool operator==(const TPoly& a, const TPoly& b) { return a.p == b.p && a.c == b.c; }
};

TPoly tpoly_mod(TPoly a, const TPoly& b);
// Monic gcd; gcd(0, 0) = 0.
TPoly tpoly_gcd(TPoly a, TPoly b);

// n×n matrix over Z/pZ[X, X^-1]. Convention: M = Σ_d A_d X^d where
// F(c)_i = Σ_d A_d c_{i+d}, so the shift σ is X·I.
class LaurentMatrix {
 public:
  LaurentMatrix(std::uint32_t p, std::size_t n);
  static LaurentMatrix identity(std::uint32_t p, std::size_t n);
  // Entries as Laurent strings, row-major.
  static LaurentMatrix parse(const std::vector<std::vector<std::string>>& rows, std::uint32_t p);
  // From coefficient matrices A_d (each n×n), keyed by offset d.
  static LaurentMatrix from_coefficients(std::uint32_t p, std::size_t n,
                                         const std::map<int, std::vector<std::vector<std::uint32_t>>>& a);

  std::uint32_t prime() const { return p_; }
  std::size_t dim() const { return n_; }
  LaurentPoly& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const LaurentPoly& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  bool is_zero() const;
  // Over all entries; nullopt for the zero matrix.
  std::optional<int> min_degree() const;
  std::optional<int> max_degree() const;
  // A_d
  std::vector<std::vector<std::uint32_t>> coefficient(int d) const;
  LaurentMatrix mirrored() const;
  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  LaurentMatrix scaled(const LaurentPoly& s) const;
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.e_ == b.e_;
  }

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::vector<LaurentPoly> e_;
};

LaurentMatrix matrix_power(const LaurentMatrix& m, int t);

// Cofactor expansion; SizeLimit above limits().det_dimension.
LaurentPoly det(const LaurentMatrix& m);
LaurentMatrix adjugate(const LaurentMatrix& m);

// χ(t) = det(tI - M) = Σ_k q_k(t) X^k.
struct CharPoly {
  std::uint32_t p = 2;
  std::map<int, TPoly> by_x_degree;
  std::string to_string() const;
};
CharPoly char_poly(const LaurentMatrix& m);

}  // namespace gca
