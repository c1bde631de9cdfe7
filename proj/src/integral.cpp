#include "singchi/integral.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "singchi/detail/parallel.hpp"
#include "singchi/errors.hpp"

namespace singchi {

namespace {

// Calls fn(w, sign) for w = v + e_S over all subsets S, sign = (-1)^|S|.
template <class Fn>
void for_each_corner(const MultiIndex& v, Fn&& fn) {
  const std::size_t r = v.size();
  MultiIndex w(r);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    for (std::size_t i = 0; i < r; ++i) w[i] = v[i] + ((mask >> i) & 1U);
    fn(w, std::popcount(mask) % 2 == 0 ? 1 : -1);
  }
}

void check_level(const MultiIndex& v, unsigned jet_level) {
  if (jet_level < default_jet_level(v)) {
    throw std::invalid_argument("jet level " + std::to_string(jet_level) +
                                " is below max(1, max_i v_i) = " +
                                std::to_string(default_jet_level(v)));
  }
}

unsigned max_entry(const MultiIndex& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

std::int64_t fiber_chi(const CodimTable& table, const MultiIndex& v) {
  std::int64_t chi = 0;
  for_each_corner(v, [&](const MultiIndex& w, int sign) {
    chi -= sign * static_cast<std::int64_t>(table.codim(w));
  });
  return chi;
}

std::int64_t fiber_chi_at_level(const CodimTable& table, const MultiIndex& v, unsigned jet_level) {
  check_level(v, jet_level);
  std::int64_t chi = 0;
  for_each_corner(v, [&](const MultiIndex& w, int sign) {
    chi -= sign * static_cast<std::int64_t>(table.codim_at_level(w, jet_level));
  });
  return chi;
}

MultiIndex find_conductor(const CodimTable& table, unsigned ceiling) {
  unsigned box = std::min(8U, ceiling);
  while (true) {
    try {
      return conductor(table, box);
    } catch (const NotStabilized&) {
      if (box >= ceiling) throw;
      box = std::min(2 * box, ceiling);
    }
  }
}

IntegralResult euler_integral(const CodimTable& table, const IntegralOptions& options) {
  const std::size_t r = table.r();
  IntegralResult result;
  result.series = MultiPoly(r);
  if (options.bound) {
    result.bound_used = *options.bound;
    try {
      result.conductor = conductor(table, *options.bound);
    } catch (const NotStabilized&) {
    }
  } else {
    result.conductor = find_conductor(table, options.ceiling);
    result.bound_used = max_entry(*result.conductor) + 2;
  }
  const unsigned bound = result.bound_used;

  table.prefill(bound + 1, options.threads);
  const auto vectors = box_vectors(r, bound);
  std::vector<std::int64_t> chi(vectors.size());
  detail::parallel_for(vectors.size(), options.threads,
                       [&](std::size_t i) { chi[i] = fiber_chi(table, vectors[i]); });
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (chi[i] != 0) result.series.add_term(vectors[i], BigInt(static_cast<long>(chi[i])));
  }

  if (result.conductor && bound >= max_entry(*result.conductor) + 2) {
    const MultiIndex& gamma = *result.conductor;
    if (r > 1) {
      result.stabilized = std::all_of(result.series.terms().begin(), result.series.terms().end(),
                                      [&](const auto& term) {
                                        for (std::size_t i = 0; i < r; ++i) {
                                          if (term.first[i] > gamma[i]) return false;
                                        }
                                        return true;
                                      });
    } else {
      result.stabilized = true;
      for (unsigned s = gamma[0] + 1; s <= bound; ++s) {
        if (result.series.coefficient({s}) != result.series.coefficient({s - 1})) {
          result.stabilized = false;
        }
      }
    }
  }
  return result;
}

AlexanderResult alexander_detailed(const CodimTable& table, const IntegralOptions& options) {
  AlexanderResult out;
  out.integral = euler_integral(table, options);
  const unsigned bound = out.integral.bound_used;
  if (!options.bound && !out.integral.stabilized) throw NotStabilized(bound);

  if (table.r() > 1) {
    out.delta = out.integral.series;
  } else {
    // (1 - t) * series, keeping degrees <= B where the product is exact.
    out.delta = MultiPoly(1);
    for (unsigned s = 0; s <= bound; ++s) {
      BigInt c = out.integral.series.coefficient({s});
      if (s > 0) c -= out.integral.series.coefficient({s - 1});
      out.delta.add_term({s}, c);
    }
  }
  if (out.delta.value_at_zero() != 1) {
    throw NormalizationViolation("Delta(0) = " + to_string(out.delta.value_at_zero()) +
                                 ", expected 1");
  }
  return out;
}

MultiPoly alexander(const CodimTable& table, const IntegralOptions& options) {
  return alexander_detailed(table, options).delta;
}

MultiPoly direct_single_variable_integral(const CodimTable& table, unsigned max_degree,
                                          unsigned threads) {
  const std::size_t r = table.r();
  std::vector<MultiIndex> simplex;
  for (const auto& v : box_vectors(r, max_degree)) {
    if (std::accumulate(v.begin(), v.end(), 0U) <= max_degree) simplex.push_back(v);
  }
  std::vector<std::int64_t> chi(simplex.size());
  detail::parallel_for(simplex.size(), threads,
                       [&](std::size_t i) { chi[i] = fiber_chi(table, simplex[i]); });
  MultiPoly series(1);
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    const unsigned s = std::accumulate(simplex[i].begin(), simplex[i].end(), 0U);
    series.add_term({s}, BigInt(static_cast<long>(chi[i])));
  }
  return series;
}

ZetaResult zeta(const CodimTable& table, const IntegralOptions& options) {
  auto alex = alexander_detailed(table, options);
  ZetaResult out;
  out.integral = alex.integral;
  const unsigned bound = alex.integral.bound_used;
  if (table.r() > 1) {
    out.numerator = diagonal_substitute(alex.delta);
    if (alex.integral.stabilized) {
      const unsigned degree = std::max(bound, out.numerator.total_degree().value_or(0));
      const MultiPoly direct = direct_single_variable_integral(table, degree, options.threads);
      if (direct != out.numerator) {
        throw InternalMismatch("Delta(t,...,t) = " + out.numerator.to_string() +
                               " but the direct integral of t^|v(g)| is " + direct.to_string());
      }
    }
  } else {
    out.numerator = alex.delta;
    out.has_denominator = true;
    // Delta / (1 - t) expanded to degree B must give back the integral.
    const MultiPoly direct = direct_single_variable_integral(table, bound, options.threads);
    BigInt partial = 0;
    for (unsigned s = 0; s <= bound; ++s) {
      partial += out.numerator.coefficient({s});
      if (partial != direct.coefficient({s})) {
        throw InternalMismatch("Delta(t)/(1-t) and the direct integral differ at degree " +
                               std::to_string(s));
      }
    }
  }
  return out;
}

MotivicClass motivic_fiber_class(const CodimTable& table, const MultiIndex& v, unsigned jet_level) {
  check_level(v, jet_level);
  const int n_k = static_cast<int>(jet_dim(jet_level));
  const MotivicClass normalizer = MotivicClass::L_power(-n_k);
  MotivicClass via_projective;
  MotivicClass alternating;
  for_each_corner(v, [&](const MultiIndex& w, int sign) {
    const int c = static_cast<int>(table.codim_at_level(w, jet_level));
    const MotivicClass term = MotivicClass::projective_space(n_k - c - 1) * normalizer;
    const MotivicClass corner = MotivicClass::L_power(-c);
    via_projective = sign > 0 ? via_projective + term : via_projective - term;
    alternating = sign > 0 ? alternating + corner : alternating - corner;
  });
  const MotivicClass closed_form = motivic_div_Lminus1(alternating);
  if (closed_form != via_projective) {
    throw InternalMismatch("motivic fiber class routes disagree: " + via_projective.to_string() +
                           " vs " + closed_form.to_string());
  }
  return closed_form;
}

MotivicIntegral motivic_integral(const CodimTable& table, unsigned bound, unsigned threads) {
  const auto vectors = box_vectors(table.r(), bound);
  std::vector<MotivicClass> classes(vectors.size());
  detail::parallel_for(vectors.size(), threads, [&](std::size_t i) {
    classes[i] = motivic_fiber_class(table, vectors[i], default_jet_level(vectors[i]));
  });
  MotivicIntegral out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!classes[i].is_zero()) out.emplace(vectors[i], std::move(classes[i]));
  }
  return out;
}

}  // namespace singchi
