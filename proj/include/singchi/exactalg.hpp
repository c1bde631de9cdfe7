#pragma once

// Exact arithmetic kernel: big rationals, univariate/bivariate/multivariate
// polynomials, Laurent polynomials in the class L of the affine line, and
// exact matrix rank.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace singchi {

using BigInt = mpz_class;
// mpq_class keeps itself canonical (reduced, positive denominator) as long as
// every value is built through its arithmetic or canonicalize().
using BigRat = mpq_class;

BigRat parse_rational(const std::string& text);
std::string to_string(const BigInt& value);
std::string to_string(const BigRat& value);

/// Sparse univariate polynomial over Q in the parameter t.
class UniPoly {
 public:
  using Terms = std::map<unsigned, BigRat>;

  UniPoly() = default;
  explicit UniPoly(Terms terms);

  static UniPoly monomial(unsigned exponent, const BigRat& coefficient = 1);
  static UniPoly constant(const BigRat& c) { return monomial(0, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// nullopt stands for degree -infinity (zero polynomial).
  std::optional<unsigned> degree() const;
  /// Lowest exponent with nonzero coefficient; nullopt for zero.
  std::optional<unsigned> order() const;
  BigRat coefficient(unsigned exponent) const;

  /// Drops every term of degree >= bound.
  UniPoly truncated(unsigned bound) const;
  /// Product with all terms of degree >= bound dropped.
  static UniPoly multiply_truncated(const UniPoly& a, const UniPoly& b, unsigned bound);

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

  /// Canonical curve-file form, e.g. "t^2", "-3/2t^5 + t^7", "0".
  std::string to_string() const;

 private:
  Terms terms_;
};

/// Sparse polynomial in x, y over Q; a test germ g.
class BiPoly {
 public:
  using Exponent = std::pair<unsigned, unsigned>;
  using Terms = std::map<Exponent, BigRat>;

  BiPoly() = default;
  explicit BiPoly(Terms terms);

  static BiPoly monomial(unsigned a, unsigned b, const BigRat& coefficient = 1);
  static BiPoly constant(const BigRat& c) { return monomial(0, 0, c); }
  static BiPoly x() { return monomial(1, 0); }
  static BiPoly y() { return monomial(0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Lowest total degree of a term (the s with g in m^s); nullopt for zero.
  std::optional<unsigned> order() const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) = default;

  std::string to_string() const;

 private:
  Terms terms_;
};

/// Graded lexicographic order: lower total degree first; within a degree,
/// larger exponent vectors first (t1^2 < t1*t2 < t2^2 in iteration order).
struct GradedLexLess {
  bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const;
};

/// Sparse polynomial in t_1..t_r with integer coefficients.
class MultiPoly {
 public:
  using Exponent = std::vector<unsigned>;
  using Terms = std::map<Exponent, BigInt, GradedLexLess>;

  explicit MultiPoly(std::size_t arity) : arity_(arity) {}
  MultiPoly(std::size_t arity, const std::vector<std::pair<Exponent, BigInt>>& terms);

  static MultiPoly one(std::size_t arity);
  static MultiPoly monomial(const Exponent& exponent, const BigInt& coefficient = 1);

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(const Exponent& exponent) const;
  /// Adds c * t^exponent in place.
  void add_term(const Exponent& exponent, const BigInt& c);
  BigInt value_at_zero() const { return coefficient(Exponent(arity_, 0)); }
  /// Maximum total degree; nullopt for zero.
  std::optional<unsigned> total_degree() const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  /// Human form with explicit signs, e.g. "1 - t + t^2" or "1 + t1*t2".
  /// Variables are "t" when arity is 1 and "t1".."tr" otherwise.
  std::string to_string() const;

 private:
  std::size_t arity_;
  Terms terms_;
};

/// t_i := t for all i; the result has arity 1.
MultiPoly diagonal_substitute(const MultiPoly& p);

/// Laurent polynomial in L over Z; classes in the localized Grothendieck ring
/// that only involve powers of the affine line.
class MotivicClass {
 public:
  using Terms = std::map<int, BigInt>;

  MotivicClass() = default;
  explicit MotivicClass(Terms terms);

  static MotivicClass L_power(int exponent, const BigInt& coefficient = 1);
  static MotivicClass one() { return L_power(0); }
  /// [P^m] = 1 + L + ... + L^m; the empty space P^{-1} has class 0.
  static MotivicClass projective_space(int m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(int exponent) const;
  /// Specialization L -> 1, i.e. the ordinary Euler characteristic.
  BigInt at_one() const;

  friend MotivicClass operator+(const MotivicClass& a, const MotivicClass& b);
  friend MotivicClass operator-(const MotivicClass& a, const MotivicClass& b);
  friend MotivicClass operator*(const MotivicClass& a, const MotivicClass& b);
  friend bool operator==(const MotivicClass& a, const MotivicClass& b) = default;

  /// e.g. "L^-2 - L^-1 + 1"; ascending exponents.
  std::string to_string() const;

 private:
  Terms terms_;
};

/// Exact quotient p / (L - 1). Throws NotDivisible unless p(1) = 0.
MotivicClass motivic_div_Lminus1(const MotivicClass& p);

/// g(x(t), y(t)). Exact since all inputs are polynomials.
UniPoly poly_compose(const BiPoly& g, const UniPoly& x, const UniPoly& y);

/// Dense row-major matrix over Q.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<BigRat> entries);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BigRat& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  BigRat& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  RatMatrix transpose() const;

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRat> entries_;
};

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t matrix_rank_exact(const RatMatrix& m);

/// Rank over F_p. Cross-check only; never a substitute for the exact rank.
/// Throws std::domain_error if some denominator is divisible by p.
std::size_t matrix_rank_mod_prime(const RatMatrix& m, std::uint64_t prime);

/// A random prime in [2^31, 2^32).
std::uint64_t random_prime_above_2_31(std::mt19937_64& rng);

}  // namespace singchi
