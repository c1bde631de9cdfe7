#pragma once

// The multi-index filtration J(v) = {g : v(g) >= v} over jet spaces.
//
// A germ g lies in J(v) iff the Taylor coefficients of g(x_i(t), y_i(t)) in
// degrees 0..v_i-1 vanish for every branch i. Each such coefficient is a
// linear functional on the jet space J^k = O/m^{k+1}, so
//
//   c(v) = dim O/J(v) = rank of the matrix of these functionals.
//
// A monomial of degree d satisfies v_i >= d on every branch, so monomials of
// degree >= max_i v_i give zero columns: the rank is the same at every jet
// level k >= max_i v_i - 1. The default level k(v) = max(1, max_i v_i) is
// the smallest one at which every stratum {v(g) = w} with w <= v + 1 is the
// preimage of a constructible subset of P(J^k).

#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "singchi/curve.hpp"
#include "singchi/exactalg.hpp"

namespace singchi {

/// A finite value vector (v_1, ..., v_r).
using MultiIndex = std::vector<unsigned>;

/// dim J^k for functions of two variables: (k+1)(k+2)/2.
unsigned jet_dim(unsigned k);

/// Monomials x^a y^b with a + b <= k, graded lexicographically:
/// 1, x, y, x^2, xy, y^2, ...
std::vector<std::pair<unsigned, unsigned>> jet_monomials(unsigned k);

/// max(1, max_i v_i).
unsigned default_jet_level(const MultiIndex& v);

/// One row per (branch i, 0 <= j < v_i), one column per monomial of degree
/// <= k; entry = coefficient of t^j in (x^a y^b)(x_i(t), y_i(t)).
RatMatrix valuation_matrix(const Curve& curve, const MultiIndex& v, unsigned jet_level);
RatMatrix valuation_matrix(const Curve& curve, const MultiIndex& v);

/// Memoized c(v) for a fixed curve. Reads and inserts are thread-safe; the
/// rank for a missing entry is computed outside the lock and inserted with
/// insert-if-absent semantics.
class CodimTable {
 public:
  explicit CodimTable(Curve curve);
  CodimTable(const CodimTable&) = delete;
  CodimTable& operator=(const CodimTable&) = delete;

  const Curve& curve() const { return curve_; }
  std::size_t r() const { return curve_.r(); }

  /// c(v) at the default jet level k(v).
  unsigned codim(const MultiIndex& v) const;
  /// Rank of the valuation matrix with columns up to degree `jet_level`.
  unsigned codim_at_level(const MultiIndex& v, unsigned jet_level) const;

  /// Computes c on the whole box [0, bound]^r using `threads` workers.
  void prefill(unsigned bound, unsigned threads = 1) const;
  void prefill(const std::vector<MultiIndex>& vectors, unsigned threads = 1) const;

  /// Overwrites a memo entry. Only meant for fault-injection tests.
  void seed(const MultiIndex& v, unsigned value);

  std::size_t cached_entries() const;

 private:
  void check_arity(const MultiIndex& v) const;

  Curve curve_;
  mutable std::shared_mutex mutex_;
  mutable std::map<MultiIndex, unsigned> memo_;
  mutable std::map<std::pair<MultiIndex, unsigned>, unsigned> level_memo_;
};

/// True iff some germ has value vector exactly v, i.e. c(v + e_i) > c(v) for
/// every i. The stratum is J(v) minus the union of the J(v + e_i); a vector
/// space over an infinite field is never a finite union of proper subspaces.
bool is_realizable(const CodimTable& table, const MultiIndex& v);

/// Smallest gamma in [0, max_bound]^r (by total degree, then graded-lex)
/// such that c(w + e_i) = c(w) + 1 for every i and every w with
/// gamma <= w <= gamma + T, where T = max(2, m - 1) and m is the largest
/// branch multiplicity. Multiplying by a generic linear form shifts values by
/// the multiplicities, so for one branch a run of m unit increments is exact;
/// a shell of 2 alone accepts false plateaus such as 12..14 in <4, 6, 13>.
/// Throws NotStabilized(max_bound) if none exists.
MultiIndex conductor(const CodimTable& table, unsigned max_bound);

/// All vectors of [0, bound]^r in graded-lex order.
std::vector<MultiIndex> box_vectors(std::size_t r, unsigned bound);
/// All vectors of [lo, hi] (componentwise) in graded-lex order.
std::vector<MultiIndex> box_vectors(const MultiIndex& lo, const MultiIndex& hi);

}  // namespace singchi
