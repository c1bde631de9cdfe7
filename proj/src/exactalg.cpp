#include "singchi/exactalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "singchi/errors.hpp"

namespace singchi {

BigRat parse_rational(const std::string& text) {
  BigRat value;
  if (value.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (value.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  value.canonicalize();
  return value;
}

std::string to_string(const BigInt& value) { return value.get_str(10); }
std::string to_string(const BigRat& value) { return value.get_str(10); }

namespace {

template <class Map>
void erase_zeros(Map& terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
}

template <class Map, class Key, class Value>
void accumulate(Map& terms, const Key& key, const Value& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

// Appends " + c*mono" / " - c*mono" pieces with explicit signs. `mono` is
// empty for the constant term.
void append_signed_term(std::string& out, bool first, const std::string& abs_coeff, bool negative,
                        const std::string& mono, const char* joiner) {
  if (first) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (mono.empty()) {
    out += abs_coeff;
  } else if (abs_coeff == "1") {
    out += mono;
  } else {
    out += abs_coeff + joiner + mono;
  }
}

std::string power_string(const std::string& var, long long e) {
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

}  // namespace

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(Terms terms) : terms_(std::move(terms)) { erase_zeros(terms_); }

UniPoly UniPoly::monomial(unsigned exponent, const BigRat& coefficient) {
  UniPoly p;
  if (coefficient != 0) p.terms_.emplace(exponent, coefficient);
  return p;
}

std::optional<unsigned> UniPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

std::optional<unsigned> UniPoly::order() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

BigRat UniPoly::coefficient(unsigned exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigRat(0) : it->second;
}

UniPoly UniPoly::truncated(unsigned bound) const {
  UniPoly p;
  p.terms_.insert(terms_.begin(), terms_.lower_bound(bound));
  return p;
}

UniPoly UniPoly::multiply_truncated(const UniPoly& a, const UniPoly& b, unsigned bound) {
  UniPoly p;
  for (const auto& [ea, ca] : a.terms_) {
    if (ea >= bound) break;
    for (const auto& [eb, cb] : b.terms_) {
      if (ea + eb >= bound) break;
      accumulate(p.terms_, ea + eb, BigRat(ca * cb));
    }
  }
  return p;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  UniPoly p = a;
  for (const auto& [e, c] : b.terms_) accumulate(p.terms_, e, c);
  return p;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  UniPoly p;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) accumulate(p.terms_, ea + eb, BigRat(ca * cb));
  }
  return p;
}

UniPoly UniPoly::operator-() const {
  UniPoly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

std::string UniPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigRat mag = abs(c);
    append_signed_term(out, first, mag.get_str(), c < 0, e == 0 ? "" : power_string("t", e), "");
    first = false;
  }
  return out;
}

// ----------------------------------------------------------------- BiPoly

BiPoly::BiPoly(Terms terms) : terms_(std::move(terms)) { erase_zeros(terms_); }

BiPoly BiPoly::monomial(unsigned a, unsigned b, const BigRat& coefficient) {
  BiPoly p;
  if (coefficient != 0) p.terms_.emplace(Exponent{a, b}, coefficient);
  return p;
}

std::optional<unsigned> BiPoly::order() const {
  std::optional<unsigned> best;
  for (const auto& [e, c] : terms_) {
    unsigned d = e.first + e.second;
    if (!best || d < *best) best = d;
  }
  return best;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  BiPoly p = a;
  for (const auto& [e, c] : b.terms_) accumulate(p.terms_, e, c);
  return p;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  BiPoly p = a;
  for (const auto& [e, c] : b.terms_) accumulate(p.terms_, e, BigRat(-c));
  return p;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly p;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      accumulate(p.terms_, BiPoly::Exponent{ea.first + eb.first, ea.second + eb.second},
                 BigRat(ca * cb));
    }
  }
  return p;
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    if (e.first > 0) mono = power_string("x", e.first);
    if (e.second > 0) mono += (mono.empty() ? "" : "*") + power_string("y", e.second);
    append_signed_term(out, first, BigRat(abs(c)).get_str(), c < 0, mono, "*");
    first = false;
  }
  return out;
}

// -------------------------------------------------------------- MultiPoly

bool GradedLexLess::operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
  auto da = std::accumulate(a.begin(), a.end(), 0ULL);
  auto db = std::accumulate(b.begin(), b.end(), 0ULL);
  if (da != db) return da < db;
  return b < a;
}

MultiPoly::MultiPoly(std::size_t arity, const std::vector<std::pair<Exponent, BigInt>>& terms)
    : arity_(arity) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

MultiPoly MultiPoly::one(std::size_t arity) {
  MultiPoly p(arity);
  p.add_term(Exponent(arity, 0), 1);
  return p;
}

MultiPoly MultiPoly::monomial(const Exponent& exponent, const BigInt& coefficient) {
  MultiPoly p(exponent.size());
  p.add_term(exponent, coefficient);
  return p;
}

BigInt MultiPoly::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void MultiPoly::add_term(const Exponent& exponent, const BigInt& c) {
  if (exponent.size() != arity_) {
    throw std::invalid_argument("exponent vector length " + std::to_string(exponent.size()) +
                                " does not match arity " + std::to_string(arity_));
  }
  accumulate(terms_, exponent, c);
}

std::optional<unsigned> MultiPoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0U);
}

namespace {
void check_same_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("MultiPoly arity mismatch");
}
}  // namespace

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  check_same_arity(a, b);
  MultiPoly p = a;
  for (const auto& [e, c] : b.terms_) p.add_term(e, c);
  return p;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  check_same_arity(a, b);
  MultiPoly p = a;
  for (const auto& [e, c] : b.terms_) p.add_term(e, BigInt(-c));
  return p;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_same_arity(a, b);
  MultiPoly p(a.arity_);
  MultiPoly::Exponent e(a.arity_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, BigInt(ca * cb));
    }
  }
  return p;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string var = arity_ == 1 ? "t" : "t" + std::to_string(i + 1);
      mono += (mono.empty() ? "" : "*") + power_string(var, e[i]);
    }
    append_signed_term(out, first, BigInt(abs(c)).get_str(), c < 0, mono, "*");
    first = false;
  }
  return out;
}

MultiPoly diagonal_substitute(const MultiPoly& p) {
  MultiPoly q(1);
  for (const auto& [e, c] : p.terms()) {
    q.add_term({std::accumulate(e.begin(), e.end(), 0U)}, c);
  }
  return q;
}

// ----------------------------------------------------------- MotivicClass

MotivicClass::MotivicClass(Terms terms) : terms_(std::move(terms)) { erase_zeros(terms_); }

MotivicClass MotivicClass::L_power(int exponent, const BigInt& coefficient) {
  MotivicClass m;
  if (coefficient != 0) m.terms_.emplace(exponent, coefficient);
  return m;
}

MotivicClass MotivicClass::projective_space(int m) {
  MotivicClass p;
  for (int e = 0; e <= m; ++e) p.terms_.emplace(e, 1);
  return p;
}

BigInt MotivicClass::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt MotivicClass::at_one() const {
  BigInt s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

MotivicClass operator+(const MotivicClass& a, const MotivicClass& b) {
  MotivicClass m = a;
  for (const auto& [e, c] : b.terms_) accumulate(m.terms_, e, c);
  return m;
}

MotivicClass operator-(const MotivicClass& a, const MotivicClass& b) {
  MotivicClass m = a;
  for (const auto& [e, c] : b.terms_) accumulate(m.terms_, e, BigInt(-c));
  return m;
}

MotivicClass operator*(const MotivicClass& a, const MotivicClass& b) {
  MotivicClass m;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) accumulate(m.terms_, ea + eb, BigInt(ca * cb));
  }
  return m;
}

std::string MotivicClass::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    append_signed_term(out, first, BigInt(abs(c)).get_str(), c < 0,
                       e == 0 ? "" : power_string("L", e), "*");
    first = false;
  }
  return out;
}

MotivicClass motivic_div_Lminus1(const MotivicClass& p) {
  if (p.at_one() != 0) {
    throw NotDivisible("motivic class " + p.to_string() + " does not vanish at L = 1");
  }
  // Synthetic division from the top: q_{e-1} = p_e + q_e.
  MotivicClass::Terms q;
  if (p.is_zero()) return MotivicClass{};
  const int top = p.terms().rbegin()->first;
  const int bottom = p.terms().begin()->first;
  BigInt carry = 0;
  for (int e = top; e > bottom; --e) {
    carry += p.coefficient(e);
    if (carry != 0) q.emplace(e - 1, carry);
  }
  return MotivicClass(std::move(q));
}

// ----------------------------------------------------------- composition

UniPoly poly_compose(const BiPoly& g, const UniPoly& x, const UniPoly& y) {
  std::vector<UniPoly> xpow{UniPoly::constant(1)};
  std::vector<UniPoly> ypow{UniPoly::constant(1)};
  UniPoly result;
  for (const auto& [e, c] : g.terms()) {
    while (xpow.size() <= e.first) xpow.push_back(xpow.back() * x);
    while (ypow.size() <= e.second) ypow.push_back(ypow.back() * y);
    result = result + UniPoly::constant(c) * xpow[e.first] * ypow[e.second];
  }
  return result;
}

// ---------------------------------------------------------------- matrices

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<BigRat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("RatMatrix: entry count does not match shape");
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

namespace {

// Row i scaled by the lcm of its denominators; all-zero rows are dropped.
std::vector<std::vector<BigInt>> integer_rows(const RatMatrix& m) {
  bool integral = true;
  for (std::size_t i = 0; i < m.rows() && integral; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).get_den() != 1) {
        integral = false;
        break;
      }
    }
  }
  std::vector<std::vector<BigInt>> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt scale = 1;
    if (!integral) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m.at(i, j).get_den_mpz_t());
      }
    }
    std::vector<BigInt> row(m.cols());
    bool nonzero = false;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const BigRat& q = m.at(i, j);
      if (q == 0) continue;
      nonzero = true;
      row[j] = integral ? BigInt(q.get_num()) : BigInt(q.get_num() * (scale / q.get_den()));
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t leading_column(const std::vector<BigInt>& row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != 0) return j;
  }
  return row.size();
}

}  // namespace

std::size_t matrix_rank_exact(const RatMatrix& m) {
  auto rows = integer_rows(m);
  if (rows.empty()) return 0;
  // Staircase order: rows with earlier leading columns first.
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return leading_column(a) < leading_column(b);
  });

  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = m.cols();
  std::size_t rank = 0;
  BigInt previous_pivot = 1;
  BigInt tmp;
  for (std::size_t col = 0; col < n_cols && rank < n_rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < n_rows && rows[pivot][col] == 0) ++pivot;
    if (pivot == n_rows) continue;
    std::swap(rows[rank], rows[pivot]);
    const auto& prow = rows[rank];
    const BigInt& p = prow[col];
    bool any_left = false;
    for (std::size_t i = rank + 1; i < n_rows; ++i) {
      auto& row = rows[i];
      const BigInt factor = row[col];
      // Bareiss update: every entry is a minor of the original matrix, so the
      // division by the previous pivot is exact.
      for (std::size_t j = col + 1; j < n_cols; ++j) {
        tmp = p * row[j];
        tmp -= factor * prow[j];
        mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), previous_pivot.get_mpz_t());
        if (row[j] != 0) any_left = true;
      }
      row[col] = 0;
    }
    previous_pivot = p;
    ++rank;
    if (!any_left) break;
  }
  return rank;
}

std::size_t matrix_rank_mod_prime(const RatMatrix& m, std::uint64_t prime) {
  using u128 = unsigned __int128;
  const BigInt p_big(std::to_string(prime));
  auto reduce = [&](const BigInt& z) -> std::uint64_t {
    BigInt r;
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), p_big.get_mpz_t());
    return std::stoull(r.get_str());
  };
  auto pow_mod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t result = 1;
    while (e > 0) {
      if (e & 1) result = static_cast<std::uint64_t>(u128(result) * b % prime);
      b = static_cast<std::uint64_t>(u128(b) * b % prime);
      e >>= 1;
    }
    return result;
  };
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const BigRat& q = m.at(i, j);
      if (q == 0) continue;
      std::uint64_t den = reduce(q.get_den());
      if (den == 0) throw std::domain_error("denominator divisible by the chosen prime");
      a[i][j] = static_cast<std::uint64_t>(u128(reduce(q.get_num())) * pow_mod(den, prime - 2) % prime);
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && a[pivot][col] == 0) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(a[rank], a[pivot]);
    const std::uint64_t inv = pow_mod(a[rank][col], prime - 2);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (a[i][col] == 0) continue;
      const std::uint64_t f = static_cast<std::uint64_t>(u128(a[i][col]) * inv % prime);
      for (std::size_t j = col; j < m.cols(); ++j) {
        const std::uint64_t sub = static_cast<std::uint64_t>(u128(f) * a[rank][j] % prime);
        a[i][j] = (a[i][j] + prime - sub) % prime;
      }
    }
    ++rank;
  }
  return rank;
}

std::uint64_t random_prime_above_2_31(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << 31, (1ULL << 32) - (1ULL << 20));
  BigInt candidate(std::to_string(dist(rng)));
  mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
  return std::stoull(candidate.get_str());
}

}  // namespace singchi
