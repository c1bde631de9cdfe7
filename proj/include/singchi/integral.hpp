#pragma once

// Integration with respect to the Euler characteristic over P(O_{C^2,0}).
//
// Fiber formula. Fix v and a jet level k >= max_i v_i. Inside J^k the set
// {g : v(g) >= w} is a linear subspace of dimension N_k - c(w) for every
// w <= v + 1, and
//
//   {v(g) = v} = J(v) \ (J(v + e_1) u ... u J(v + e_r)),
//   J(v + e_i) n J(v + e_j) = J(v + e_i + e_j).
//
// The Euler characteristic of the projectivization of a d-dimensional
// complex space is d. Additivity (inclusion-exclusion over subsets S) gives
//
//   chi(P{v(g) = v}) = sum_S (-1)^|S| (N_k - c(v + e_S))
//                    = sum_S (-1)^(|S|+1) c(v + e_S),
//
// since sum_S (-1)^|S| = 0 for r >= 1. The Euler characteristic used here is
// the additive (compactly supported) one; on differences of closed projective
// subspaces it coincides with the topological one.
//
// Germs with some v_i(g) = infinity contribute t^inf = 0 and are never
// enumerated.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "singchi/exactalg.hpp"
#include "singchi/filtration.hpp"

namespace singchi {

/// Options shared by the integral-based computations.
struct IntegralOptions {
  /// Explicit scan bound B (box [0, B]^r). Overrides the conductor search and
  /// suppresses NotStabilized.
  std::optional<unsigned> bound;
  unsigned threads = 1;
  /// Largest per-coordinate box tried by the doubling conductor search.
  unsigned ceiling = 256;
};

struct IntegralResult {
  /// sum over v in [0, bound_used]^r of chi(v) t^v.
  MultiPoly series{1};
  unsigned bound_used = 0;
  /// r > 1: every coefficient outside [0, conductor] inside the scanned box
  /// vanishes. r = 1: (1 - t) * series vanishes in degrees (conductor, B].
  bool stabilized = false;
  std::optional<MultiIndex> conductor;
};

struct AlexanderResult {
  MultiPoly delta{1};
  IntegralResult integral;
};

/// zeta(t) = numerator / (1 - t) when has_denominator (r = 1), otherwise
/// zeta(t) = numerator.
struct ZetaResult {
  MultiPoly numerator{1};
  bool has_denominator = false;
  IntegralResult integral;
};

/// chi(P{v(g) = v}) at the default jet level.
std::int64_t fiber_chi(const CodimTable& table, const MultiIndex& v);
/// Same, with every codimension computed from jets of order `jet_level`.
/// Requires jet_level >= max(1, max_i v_i).
std::int64_t fiber_chi_at_level(const CodimTable& table, const MultiIndex& v, unsigned jet_level);

/// Conductor with a doubling box search 8, 16, ... up to `ceiling`.
MultiIndex find_conductor(const CodimTable& table, unsigned ceiling);

IntegralResult euler_integral(const CodimTable& table, const IntegralOptions& options = {});

/// Delta^C(t_1..t_r), normalized so Delta(0) = 1. Throws NotStabilized when
/// no explicit bound is given and the certificate fails, and
/// NormalizationViolation when Delta(0) != 1.
AlexanderResult alexander_detailed(const CodimTable& table, const IntegralOptions& options = {});
MultiPoly alexander(const CodimTable& table, const IntegralOptions& options = {});

/// sum over |v| <= max_degree of chi(v) t^|v|: the integral of t^{|v(g)|}
/// computed directly over the simplex rather than from Delta.
MultiPoly direct_single_variable_integral(const CodimTable& table, unsigned max_degree,
                                          unsigned threads = 1);

/// Monodromy zeta function. Cross-checks the result against
/// direct_single_variable_integral and throws InternalMismatch on
/// disagreement.
ZetaResult zeta(const CodimTable& table, const IntegralOptions& options = {});

/// [P{v(g) = v}] in Z[L, L^-1], computed from jets of order `jet_level` both
/// as an alternating sum of projective space classes times L^{-N_k} and as
/// (sum_S (-1)^|S| L^{-c(v + e_S)}) / (L - 1). Throws InternalMismatch if the
/// two disagree. Requires jet_level >= max(1, max_i v_i).
MotivicClass motivic_fiber_class(const CodimTable& table, const MultiIndex& v, unsigned jet_level);

using MotivicIntegral = std::map<MultiIndex, MotivicClass, GradedLexLess>;

/// Termwise motivic_fiber_class over [0, bound]^r at default jet levels.
/// Zero classes are omitted.
MotivicIntegral motivic_integral(const CodimTable& table, unsigned bound, unsigned threads = 1);

}  // namespace singchi
