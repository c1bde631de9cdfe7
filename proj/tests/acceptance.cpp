// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "singchi/errors.hpp"
#include "singchi/filtration.hpp"
#include "singchi/integral.hpp"
#include "singchi/oracle.hpp"
#include "support/corpus.hpp"

using namespace singchi;
using testing::curve_from;

namespace {

// Thrown by check() with a description of the first violated expectation.
struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

struct Criterion {
  int id;
  std::string title;
  double seconds_limit;  // 0 means no runtime requirement
  std::function<std::string()> body;
};

std::string vec_string(const MultiIndex& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

MultiPoly one(std::size_t arity) {
  MultiPoly p(arity);
  p.add_term(MultiIndex(arity, 0), 1);
  return p;
}

MultiPoly poly1(std::initializer_list<std::pair<unsigned, long>> terms) {
  MultiPoly p(1);
  for (auto [e, c] : terms) p.add_term({e}, c);
  return p;
}

// Coefficients of numerator / (1 - t) up to degree n.
std::vector<BigInt> geometric_expansion(const MultiPoly& numerator, unsigned n) {
  std::vector<BigInt> out(n + 1);
  BigInt acc = 0;
  for (unsigned s = 0; s <= n; ++s) {
    acc += numerator.coefficient({s});
    out[s] = acc;
  }
  return out;
}

unsigned stable_box(const CodimTable& table) { return alexander_detailed(table).integral.bound_used; }

// Both routes to [P{v(g) = v}] recomputed here from raw codimensions.
std::pair<MotivicClass, MotivicClass> motivic_routes(const CodimTable& table, const MultiIndex& v,
                                                     unsigned k) {
  const std::size_t r = v.size();
  const int n = static_cast<int>(jet_dim(k));
  MotivicClass projective, numerator;
  for (unsigned mask = 0; mask < (1U << r); ++mask) {
    MultiIndex w = v;
    int sign = 1;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask & (1U << i)) {
        ++w[i];
        sign = -sign;
      }
    }
    const int c = static_cast<int>(table.codim_at_level(w, k));
    const MotivicClass p = MotivicClass::projective_space(n - c - 1) * MotivicClass::L_power(-n);
    const MotivicClass l = MotivicClass::L_power(-c);
    projective = sign > 0 ? projective + p : projective - p;
    numerator = sign > 0 ? numerator + l : numerator - l;
  }
  return {projective, motivic_div_Lminus1(numerator)};
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> out;

  out.push_back({1, "unknot: Delta = 1, zeta = 1/(1-t)", 1.0, [] {
    const CodimTable table(testing::smooth());
    const MultiPoly d = alexander(table);
    const ZetaResult z = zeta(table);
    check(d == one(1), "Delta = " + d.to_string());
    check(z.has_denominator && z.numerator == one(1),
          "zeta numerator " + z.numerator.to_string());
    return std::string("Delta = 1, zeta = (1)/(1 - t)");
  }});

  out.push_back({2, "cusp: Delta = 1 - t + t^2 via integral, torus formula and semigroup", 5.0, [] {
    const Curve c = testing::cusp();
    const CodimTable table(c);
    const MultiPoly d = alexander(table);
    const MultiPoly expected = poly1({{0, 1}, {1, -1}, {2, 1}});
    check(d == expected, "Delta = " + d.to_string());
    check(d == torus_knot_alexander(2, 3), "torus(2,3) differs");
    check(d == alexander_r1_oracle(c.branch(0), 8), "semigroup oracle differs");
    const ZetaResult z = zeta(table);
    const auto series = geometric_expansion(z.numerator, 4);
    check(z.has_denominator && series == std::vector<BigInt>{1, 0, 1, 1, 1}, "zeta series wrong");
    return "Delta = " + d.to_string() + ", zeta = 1 + t^2 + t^3 + t^4 + ...";
  }});

  out.push_back({3, "torus knots (2,5) (2,7) (3,4) (3,5): integral = closed form", 60.0, [] {
    std::ostringstream msg;
    for (auto [p, q] : std::vector<std::pair<unsigned, unsigned>>{{2, 5}, {2, 7}, {3, 4}, {3, 5}}) {
      const auto start = std::chrono::steady_clock::now();
      const CodimTable table(testing::monomial_branch(p, q));
      const MultiPoly d = alexander(table);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
      check(d == torus_knot_alexander(p, q), tag + " Delta = " + d.to_string());
      check(d.total_degree() == (p - 1) * (q - 1), tag + " wrong degree");
      check(secs < 60.0, tag + " took " + std::to_string(secs) + " s");
      msg << tag << " deg " << (p - 1) * (q - 1) << " ";
    }
    return msg.str();
  }});

  out.push_back({4, "node: Delta = 1, zeta = 1", 5.0, [] {
    const CodimTable table(testing::node());
    const MultiPoly d = alexander(table);
    const ZetaResult z = zeta(table);
    check(d == one(2), "Delta = " + d.to_string());
    check(!z.has_denominator && z.numerator == one(1),
          "zeta = " + z.numerator.to_string());
    return std::string("Delta(t1,t2) = 1, zeta = 1");
  }});

  out.push_back({5, "diagonal identity Delta(t,...,t) = direct simplex integral", 0.0, [] {
    std::ostringstream msg;
    const std::pair<const char*, Curve> curves[] = {{"node", testing::node()},
                                                    {"tacnode", testing::tacnode()},
                                                    {"line_cusp", testing::line_cusp()},
                                                    {"three_lines", testing::three_lines()}};
    for (const auto& [name, c] : curves) {
      const CodimTable table(c);
      const auto a = alexander_detailed(table);
      const MultiPoly diag = diagonal_substitute(a.delta);
      const unsigned degree = std::max(a.integral.bound_used, diag.total_degree().value_or(0));
      const MultiPoly direct = direct_single_variable_integral(table, degree);
      check(diag == direct, std::string(name) + ": " + diag.to_string() + " vs " + direct.to_string());
      msg << name << " ";
    }
    return msg.str();
  }});

  out.push_back({6, "jet-level independence of fiber_chi at k, k+1, k+2", 0.0, [] {
    std::size_t checked = 0;
    for (const auto& entry : testing::corpus()) {
      const CodimTable table(curve_from(entry.text));
      for (const auto& v : box_vectors(table.r(), stable_box(table))) {
        const unsigned k = default_jet_level(v);
        const auto a = fiber_chi_at_level(table, v, k);
        const auto b = fiber_chi_at_level(table, v, k + 1);
        const auto c = fiber_chi_at_level(table, v, k + 2);
        check(a == b && b == c, entry.name + " v = " + vec_string(v));
        ++checked;
      }
    }
    return std::to_string(checked) + " vectors";
  }});

  out.push_back({7, "normalization Delta(0) = 1 on the corpus", 0.0, [] {
    for (const auto& entry : testing::corpus()) {
      const CodimTable table(curve_from(entry.text));
      check(alexander(table).value_at_zero() == 1, entry.name);
    }
    return std::to_string(testing::corpus().size()) + " curves";
  }});

  out.push_back({8, "semigroup equivalence, symmetry, deg Delta = conductor", 0.0, [] {
    const std::vector<std::string> branches = {
        "branch { x = t^2, y = t^3 }", "branch { x = t^2, y = t^5 }", "branch { x = t^3, y = t^4 }",
        "branch { x = t^3, y = t^5 }", "branch { x = t^4, y = t^6 + t^7 }"};
    std::ostringstream msg;
    for (const auto& text : branches) {
      const Curve c = curve_from(text);
      const CodimTable table(c);
      const SemigroupData sg = semigroup_generators(c.branch(0));
      const unsigned gamma = sg.conductor();
      for (unsigned s = 0; s <= gamma + 2; ++s) {
        check(is_realizable(table, {s}) == sg.contains(s), text + ": s = " + std::to_string(s));
      }
      for (unsigned s = 0; s < gamma; ++s) {
        check(sg.contains(s) != sg.contains(gamma - 1 - s), text + ": not symmetric at " + std::to_string(s));
      }
      const auto a = alexander_detailed(table);
      check(a.integral.conductor && (*a.integral.conductor)[0] == gamma, text + ": conductor");
      check(a.delta.total_degree() == gamma, text + ": deg Delta = " + a.delta.to_string());
      msg << "c=" << gamma << " ";
    }
    return msg.str();
  }});

  out.push_back({9, "motivic routes agree, specialize to chi, level k = k+1", 0.0, [] {
    std::size_t checked = 0;
    for (const auto& entry : testing::corpus()) {
      const CodimTable table(curve_from(entry.text));
      for (const auto& v : box_vectors(table.r(), stable_box(table))) {
        const unsigned k = default_jet_level(v);
        const auto [proj, closed] = motivic_routes(table, v, k);
        const std::string where = entry.name + " v = " + vec_string(v);
        check(proj == closed, where + ": routes differ");
        check(motivic_fiber_class(table, v, k) == closed, where + ": library class differs");
        check(closed.at_one() == fiber_chi(table, v), where + ": specialization");
        check(motivic_fiber_class(table, v, k + 1) == closed, where + ": level k+1 differs");
        ++checked;
      }
    }
    return std::to_string(checked) + " vectors";
  }});

  out.push_back({10, "Bareiss rank = modular rank (1000 matrices); serial = parallel", 0.0, [] {
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<int> dim(1, 10), entry(-9, 9);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t rows = dim(rng), cols = dim(rng);
      const std::size_t inner = std::uniform_int_distribution<std::size_t>(1, std::min(rows, cols))(rng);
      // Product of random rows x inner and inner x cols factors, so low ranks occur.
      RatMatrix a(rows, inner), b(inner, cols), m(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < inner; ++j) a.at(i, j) = entry(rng);
      for (std::size_t i = 0; i < inner; ++i)
        for (std::size_t j = 0; j < cols; ++j) b.at(i, j) = entry(rng);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          for (std::size_t l = 0; l < inner; ++l) m.at(i, j) += a.at(i, l) * b.at(l, j);
      const auto exact = matrix_rank_exact(m);
      const auto modular = matrix_rank_mod_prime(m, random_prime_above_2_31(rng));
      check(exact == modular, "trial " + std::to_string(trial) + ": " + std::to_string(exact) +
                                  " vs " + std::to_string(modular));
    }
    for (const Curve& c : {testing::three_lines(), testing::line_cusp(), testing::two_pairs()}) {
      const CodimTable serial_table(c), parallel_table(c);
      IntegralOptions serial, parallel;
      parallel.threads = 8;
      const auto s = euler_integral(serial_table, serial);
      const auto p = euler_integral(parallel_table, parallel);
      check(s.series.to_string() == p.series.to_string() && s.bound_used == p.bound_used,
            "serial and parallel differ on " + c.to_string());
    }
    return std::string("1000 matrices, 3 curves");
  }});

  out.push_back({11, "performance: Delta of (t^4, t^6 + t^7)", 60.0, [] {
    const CodimTable table(testing::two_pairs());
    const auto a = alexander_detailed(table);
    check(a.integral.conductor && (*a.integral.conductor)[0] == 16, "conductor");
    check(a.delta == alexander_r1_oracle(table.curve().branch(0), a.integral.bound_used), "oracle differs");
    return "Delta = " + a.delta.to_string();
  }});

  return out;
}

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.seconds_limit > 0 && secs >= c.seconds_limit) {
      ok = false;
      detail += " (over the " + std::to_string(c.seconds_limit) + " s limit)";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << timing << "): " << detail
              << std::endl;
    if (!ok) ++failures;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
