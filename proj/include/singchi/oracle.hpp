#pragma once

// Classical invariants of plane branches, computed from Puiseux data alone.
// Nothing here touches valuation matrices or ranks, so agreement with the
// integral route is an independent check.

#include <string>
#include <vector>

#include "singchi/curve.hpp"
#include "singchi/exactalg.hpp"
#include "singchi/integral.hpp"

namespace singchi {

struct CharacteristicExponents {
  unsigned n = 1;
  std::vector<unsigned> betas;

  friend bool operator==(const CharacteristicExponents&, const CharacteristicExponents&) = default;
};

/// e_0 = n; beta_{k+1} = min{j : y_j != 0, e_k does not divide j},
/// e_{k+1} = gcd(e_k, beta_{k+1}); stops when e_g = 1.
/// Throws std::invalid_argument unless the branch is in Puiseux form.
CharacteristicExponents char_exponents(const Branch& branch);

/// A numerical semigroup given by generators (gcd 1).
class SemigroupData {
 public:
  explicit SemigroupData(std::vector<unsigned> generators);

  const std::vector<unsigned>& generators() const { return generators_; }
  /// Smallest c with c + Z>=0 inside the semigroup, by gap enumeration.
  unsigned conductor() const { return conductor_; }
  bool contains(unsigned s) const;
  std::vector<unsigned> elements_up_to(unsigned bound) const;
  std::vector<unsigned> gaps() const;

 private:
  std::vector<unsigned> generators_;
  std::vector<bool> below_conductor_;
  unsigned conductor_ = 0;
};

/// Value semigroup of a Puiseux-form branch via the Zariski recursion
/// b_0 = n, b_1 = beta_1, b_{k+1} = (e_{k-1}/e_k) b_k + beta_{k+1} - beta_k.
SemigroupData semigroup_generators(const Branch& branch);

/// (1 - t) * sum_{s in semigroup, s <= bound} t^s, truncated to degree <= bound.
MultiPoly alexander_r1_oracle(const Branch& branch, unsigned bound);

/// (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)). Throws NotCoprime.
MultiPoly torus_knot_alexander(unsigned p, unsigned q);

struct VerificationItem {
  std::string name;
  bool passed = false;
  bool applicable = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<VerificationItem> items;

  bool all_passed() const;
  /// Name of the first failing applicable item, or empty.
  std::string first_failure() const;
};

/// Cross-checks the integral route against the classical oracles and its own
/// identities. Failures become report entries; nothing is thrown.
VerificationReport verify(const CodimTable& table, const IntegralOptions& options = {});
VerificationReport verify(const Curve& curve, const IntegralOptions& options = {});

}  // namespace singchi
