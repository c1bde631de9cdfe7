#include "singchi/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "singchi/errors.hpp"

namespace singchi {

CharacteristicExponents char_exponents(const Branch& branch) {
  const auto n = branch.puiseux_degree();
  if (!n) throw std::invalid_argument("characteristic exponents need a branch with x = t^n");
  CharacteristicExponents out;
  out.n = *n;
  unsigned e = *n;
  for (const auto& [j, c] : branch.y.terms()) {
    if (e == 1) break;
    if (j % e == 0) continue;
    out.betas.push_back(j);
    e = std::gcd(e, j);
  }
  if (e != 1) throw std::invalid_argument("branch is not primitive");
  return out;
}

// ------------------------------------------------------------ semigroups

SemigroupData::SemigroupData(std::vector<unsigned> generators) : generators_(std::move(generators)) {
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  std::erase(generators_, 0U);
  unsigned g = 0;
  for (unsigned a : generators_) g = std::gcd(g, a);
  if (g != 1) throw std::invalid_argument("semigroup generators must have gcd 1");

  // Membership by dynamic programming; the conductor is the start of the
  // first run of `smallest` consecutive members.
  const unsigned smallest = generators_.front();
  std::vector<bool> member{true};
  unsigned run = 1;
  unsigned run_start = 0;
  for (unsigned s = 1; run < smallest; ++s) {
    bool in = false;
    for (unsigned a : generators_) {
      if (a <= s && member[s - a]) {
        in = true;
        break;
      }
    }
    member.push_back(in);
    if (in) {
      if (run == 0) run_start = s;
      ++run;
    } else {
      run = 0;
    }
  }
  conductor_ = run_start;
  member.resize(conductor_);
  below_conductor_ = std::move(member);
}

bool SemigroupData::contains(unsigned s) const {
  return s >= conductor_ || below_conductor_[s];
}

std::vector<unsigned> SemigroupData::elements_up_to(unsigned bound) const {
  std::vector<unsigned> out;
  for (unsigned s = 0; s <= bound; ++s) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

std::vector<unsigned> SemigroupData::gaps() const {
  std::vector<unsigned> out;
  for (unsigned s = 0; s < conductor_; ++s) {
    if (!below_conductor_[s]) out.push_back(s);
  }
  return out;
}

SemigroupData semigroup_generators(const Branch& branch) {
  const auto ce = char_exponents(branch);
  if (ce.betas.empty()) return SemigroupData({1});
  std::vector<unsigned> gens{ce.n, ce.betas[0]};
  std::vector<unsigned> e{ce.n, std::gcd(ce.n, ce.betas[0])};
  for (std::size_t k = 1; k < ce.betas.size(); ++k) {
    e.push_back(std::gcd(e.back(), ce.betas[k]));
    // gens[k] is the k-th Zariski generator, e[k] = gcd(n, beta_1..beta_k).
    gens.push_back((e[k - 1] / e[k]) * gens[k] + ce.betas[k] - ce.betas[k - 1]);
  }
  return SemigroupData(std::move(gens));
}

MultiPoly alexander_r1_oracle(const Branch& branch, unsigned bound) {
  const auto semigroup = semigroup_generators(branch);
  MultiPoly delta(1);
  for (unsigned s = 0; s <= bound; ++s) {
    if (semigroup.contains(s)) delta.add_term({s}, 1);
    if (s > 0 && semigroup.contains(s - 1)) delta.add_term({s}, -1);
  }
  return delta;
}

// ------------------------------------------------------------ torus knots

namespace {

using Dense = std::vector<BigInt>;

Dense dense_multiply(const Dense& a, const Dense& b) {
  Dense out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Dense t_power_minus_one(unsigned k) {
  Dense out(k + 1);
  out[0] = -1;
  out[k] = 1;
  return out;
}

// Exact division by a polynomial with leading coefficient 1.
Dense dense_divide_exact(Dense num, const Dense& den) {
  const std::size_t dn = den.size() - 1;
  Dense quotient(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt q = num[i];
    quotient[i - dn] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= q * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw InternalMismatch("torus knot division left a remainder");
  }
  return quotient;
}

}  // namespace

MultiPoly torus_knot_alexander(unsigned p, unsigned q) {
  if (p < 2 || q < 2) throw std::invalid_argument("torus knot parameters must be >= 2");
  if (std::gcd(p, q) != 1) {
    throw NotCoprime("torus knot parameters " + std::to_string(p) + ", " + std::to_string(q) +
                     " are not coprime");
  }
  const Dense num = dense_multiply(t_power_minus_one(p * q), t_power_minus_one(1));
  const Dense den = dense_multiply(t_power_minus_one(p), t_power_minus_one(q));
  const Dense quotient = dense_divide_exact(num, den);
  MultiPoly out(1);
  for (unsigned s = 0; s < quotient.size(); ++s) out.add_term({s}, quotient[s]);
  return out;
}

// ---------------------------------------------------------------- verify

bool VerificationReport::all_passed() const {
  return std::all_of(items.begin(), items.end(),
                     [](const VerificationItem& it) { return !it.applicable || it.passed; });
}

std::string VerificationReport::first_failure() const {
  for (const auto& it : items) {
    if (it.applicable && !it.passed) return it.name;
  }
  return {};
}

namespace {

std::string vec_string(const MultiIndex& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// (p, q) when the branch is (t^p, t^q) with p, q >= 2.
std::optional<std::pair<unsigned, unsigned>> torus_type(const Branch& b) {
  const auto n = b.puiseux_degree();
  if (!n || *n < 2 || b.y.terms().size() != 1) return std::nullopt;
  const auto& [q, c] = *b.y.terms().begin();
  if (c != 1 || q < 2) return std::nullopt;
  return std::make_pair(*n, q);
}

template <class Check>
VerificationItem run_item(const std::string& name, Check&& check) {
  VerificationItem item{name, false, true, {}};
  try {
    check(item);
  } catch (const std::exception& ex) {
    item.passed = false;
    item.detail = std::string("exception: ") + ex.what();
  }
  return item;
}

VerificationItem not_applicable(const std::string& name, const std::string& why) {
  return VerificationItem{name, true, false, why};
}

}  // namespace

VerificationReport verify(const CodimTable& table, const IntegralOptions& options) {
  VerificationReport report;
  const Curve& curve = table.curve();
  const std::size_t r = curve.r();
  const bool one_puiseux_branch = r == 1 && curve.branch(0).puiseux_form();

  std::optional<AlexanderResult> alex;
  std::string alex_error;
  try {
    alex = alexander_detailed(table, options);
  } catch (const std::exception& ex) {
    alex_error = ex.what();
  }
  auto need_alexander = [&]() -> const AlexanderResult& {
    if (!alex) throw InternalMismatch("alexander failed: " + alex_error);
    return *alex;
  };
  const unsigned bound = alex ? alex->integral.bound_used : options.bound.value_or(8);

  if (one_puiseux_branch) {
    report.items.push_back(run_item("alexander_matches_semigroup_oracle", [&](VerificationItem& it) {
      const auto& a = need_alexander();
      const auto semigroup = semigroup_generators(curve.branch(0));
      const MultiPoly oracle = alexander_r1_oracle(curve.branch(0), a.integral.bound_used);
      std::ostringstream msg;
      msg << "integral " << a.delta.to_string() << ", oracle " << oracle.to_string();
      it.passed = a.delta == oracle && a.delta.total_degree() == semigroup.conductor();
      if (auto pq = torus_type(curve.branch(0))) {
        const MultiPoly closed = torus_knot_alexander(pq->first, pq->second);
        msg << ", torus(" << pq->first << "," << pq->second << ") " << closed.to_string();
        it.passed = it.passed && closed == a.delta;
      }
      it.detail = msg.str();
    }));
  } else {
    report.items.push_back(not_applicable("alexander_matches_semigroup_oracle",
                                          "needs a single branch in Puiseux form"));
  }

  if (r > 1) {
    report.items.push_back(run_item("diagonal_identity", [&](VerificationItem& it) {
      const auto& a = need_alexander();
      const MultiPoly diag = diagonal_substitute(a.delta);
      const unsigned degree = std::max(bound, diag.total_degree().value_or(0));
      const MultiPoly direct = direct_single_variable_integral(table, degree, options.threads);
      it.passed = diag == direct;
      it.detail = "Delta(t,...,t) = " + diag.to_string() + ", direct = " + direct.to_string();
    }));
  } else {
    report.items.push_back(not_applicable("diagonal_identity", "needs r > 1"));
  }

  report.items.push_back(run_item("normalization", [&](VerificationItem& it) {
    const auto& a = need_alexander();
    it.passed = a.delta.value_at_zero() == 1;
    it.detail = "Delta(0) = " + to_string(a.delta.value_at_zero());
  }));

  const auto box = box_vectors(r, bound);

  report.items.push_back(run_item("jet_level_independence", [&](VerificationItem& it) {
    it.passed = true;
    for (const auto& v : box) {
      const unsigned k = default_jet_level(v);
      const auto base = fiber_chi(table, v);
      const auto at_k = fiber_chi_at_level(table, v, k);
      const auto at_k1 = fiber_chi_at_level(table, v, k + 1);
      if (base != at_k || at_k != at_k1) {
        it.passed = false;
        it.detail = "v = " + vec_string(v) + ": chi = " + std::to_string(base) + ", level " +
                    std::to_string(k) + ": " + std::to_string(at_k) + ", level " +
                    std::to_string(k + 1) + ": " + std::to_string(at_k1);
        return;
      }
    }
    it.detail = std::to_string(box.size()) + " vectors checked";
  }));

  if (one_puiseux_branch) {
    report.items.push_back(run_item("realizable_set_is_semigroup", [&](VerificationItem& it) {
      const auto semigroup = semigroup_generators(curve.branch(0));
      it.passed = true;
      for (unsigned s = 0; s <= bound; ++s) {
        if (is_realizable(table, {s}) != semigroup.contains(s)) {
          it.passed = false;
          it.detail = "s = " + std::to_string(s) + ": realizable " +
                      (is_realizable(table, {s}) ? "yes" : "no") + ", in semigroup " +
                      (semigroup.contains(s) ? "yes" : "no");
          return;
        }
      }
      it.detail = "checked 0.." + std::to_string(bound);
    }));
  } else {
    report.items.push_back(not_applicable("realizable_set_is_semigroup",
                                          "needs a single branch in Puiseux form"));
  }

  report.items.push_back(run_item("motivic_specialization", [&](VerificationItem& it) {
    it.passed = true;
    for (const auto& v : box) {
      const auto cls = motivic_fiber_class(table, v, default_jet_level(v));
      const auto chi = fiber_chi(table, v);
      if (cls.at_one() != chi) {
        it.passed = false;
        it.detail = "v = " + vec_string(v) + ": [X](L=1) = " + to_string(cls.at_one()) +
                    ", chi = " + std::to_string(chi);
        return;
      }
    }
    it.detail = std::to_string(box.size()) + " vectors checked";
  }));

  return report;
}

VerificationReport verify(const Curve& curve, const IntegralOptions& options) {
  CodimTable table(curve);
  return verify(table, options);
}

}  // namespace singchi
