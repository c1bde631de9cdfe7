#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "singchi/errors.hpp"
#include "singchi/filtration.hpp"
#include "singchi/oracle.hpp"
#include "support/corpus.hpp"

using namespace singchi;
using singchi::testing::corpus;
using singchi::testing::curve_from;

namespace {

std::vector<BigRat> row(const RatMatrix& m, std::size_t i) {
  std::vector<BigRat> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.at(i, j));
  return out;
}

unsigned box_bound_for(const Curve& c) { return c.r() == 1 ? 10 : (c.r() == 2 ? 5 : 3); }

}  // namespace

TEST_CASE("jet_dim examples") {
  CHECK(jet_dim(0) == 1);
  CHECK(jet_dim(1) == 3);
  CHECK(jet_dim(4) == 15);
  CHECK(jet_monomials(2) == std::vector<std::pair<unsigned, unsigned>>{
                                {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("valuation_matrix examples") {
  const RatMatrix node = valuation_matrix(testing::node(), {1, 1});
  REQUIRE(node.rows() == 2);
  REQUIRE(node.cols() == 3);
  CHECK(row(node, 0) == std::vector<BigRat>{1, 0, 0});
  CHECK(row(node, 1) == std::vector<BigRat>{1, 0, 0});

  const RatMatrix cusp1 = valuation_matrix(testing::cusp(), {1});
  REQUIRE(cusp1.rows() == 1);
  CHECK(row(cusp1, 0) == std::vector<BigRat>{1, 0, 0});

  const RatMatrix cusp2 = valuation_matrix(testing::cusp(), {2});
  REQUIRE(cusp2.rows() == 2);
  REQUIRE(cusp2.cols() == 6);
  CHECK(row(cusp2, 1) == std::vector<BigRat>(6, 0));
}

TEST_CASE("codim examples") {
  for (const auto& entry : corpus()) {
    const CodimTable table(curve_from(entry.text));
    CHECK(table.codim(MultiIndex(table.r(), 0)) == 0);
  }
  const CodimTable cusp(testing::cusp());
  CHECK(cusp.codim({2}) == 1);
  CHECK(matrix_rank_exact(valuation_matrix(testing::cusp(), {2})) == 1);
  const CodimTable node(testing::node());
  CHECK(node.codim({1, 1}) == 1);
  CHECK_THROWS_AS(node.codim({1}), std::invalid_argument);
}

TEST_CASE("one-branch codimension counts semigroup elements below v") {
  // Oracle: c(v) = #{s in Gamma : s < v}, Gamma from the Zariski recursion.
  for (const auto& entry : corpus()) {
    const Curve c = curve_from(entry.text);
    if (c.r() != 1) continue;
    CAPTURE(entry.name);
    const auto semigroup = semigroup_generators(c.branch(0));
    const CodimTable table(c);
    for (unsigned v = 0; v <= 22; ++v) {
      unsigned count = 0;
      for (unsigned s = 0; s < v; ++s) count += semigroup.contains(s) ? 1 : 0;
      CHECK(table.codim({v}) == count);
    }
  }
}

TEST_CASE("is_realizable examples") {
  const CodimTable cusp(testing::cusp());
  CHECK_FALSE(is_realizable(cusp, {1}));
  CHECK(is_realizable(cusp, {2}));
  for (const auto& entry : corpus()) {
    const CodimTable table(curve_from(entry.text));
    CHECK(is_realizable(table, MultiIndex(table.r(), 0)));
  }
}

TEST_CASE("conductor examples") {
  CHECK(conductor(CodimTable(testing::smooth()), 8) == MultiIndex{0});
  CHECK(conductor(CodimTable(testing::cusp()), 8) == MultiIndex{2});
  CHECK(conductor(CodimTable(testing::node()), 8) == MultiIndex{1, 1});
  CHECK(conductor(CodimTable(testing::tacnode()), 8) == MultiIndex{2, 2});
  CHECK(conductor(CodimTable(testing::two_pairs()), 20) == MultiIndex{16});
  try {
    conductor(CodimTable(testing::two_pairs()), 5);
    FAIL("expected NotStabilized");
  } catch (const NotStabilized& e) {
    CHECK(e.bound_tried() == 5);
  }
}

TEST_CASE("valuation matrix rank is independent of the jet level") {
  for (const auto& entry : corpus()) {
    const Curve c = curve_from(entry.text);
    CAPTURE(entry.name);
    for (const auto& v : box_vectors(c.r(), box_bound_for(c))) {
      const unsigned k = default_jet_level(v);
      const auto base = matrix_rank_exact(valuation_matrix(c, v, k));
      CHECK(matrix_rank_exact(valuation_matrix(c, v, k + 1)) == base);
      CHECK(matrix_rank_exact(valuation_matrix(c, v, k + 2)) == base);
    }
  }
}

TEST_CASE("codimension monotonicity and unit increments") {
  for (const auto& entry : corpus()) {
    const Curve c = curve_from(entry.text);
    CAPTURE(entry.name);
    const CodimTable table(c);
    const auto box = box_vectors(c.r(), box_bound_for(c));
    for (const auto& v : box) {
      for (std::size_t i = 0; i < c.r(); ++i) {
        MultiIndex w = v;
        ++w[i];
        const unsigned step = table.codim(w) - table.codim(v);
        CHECK((table.codim(w) >= table.codim(v) && step <= 1));
      }
    }
    // v <= w  =>  c(v) <= c(w) <= c(v) + |w - v| on random pairs.
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, box.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      MultiIndex v = box[pick(rng)], w = box[pick(rng)];
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > w[i]) std::swap(v[i], w[i]);
      }
      const unsigned dist = std::accumulate(w.begin(), w.end(), 0U) - std::accumulate(v.begin(), v.end(), 0U);
      CHECK(table.codim(v) <= table.codim(w));
      CHECK(table.codim(w) <= table.codim(v) + dist);
    }
  }
}

TEST_CASE("one-branch increment set is closed under addition") {
  for (const auto& entry : corpus()) {
    const Curve c = curve_from(entry.text);
    if (c.r() != 1) continue;
    CAPTURE(entry.name);
    const CodimTable table(c);
    const unsigned prefix = 24;
    std::set<unsigned> increments;
    for (unsigned s = 0; s <= prefix; ++s) {
      if (table.codim({s + 1}) == table.codim({s}) + 1) increments.insert(s);
    }
    for (unsigned a : increments) {
      for (unsigned b : increments) {
        if (a + b <= prefix) CHECK(increments.count(a + b) == 1);
      }
    }
  }
}

// Basis of the kernel of m over Q, by reduced row echelon form.
static std::vector<std::vector<BigRat>> kernel_basis(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    const BigRat lead = m.at(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(row, j) /= lead;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      const BigRat f = m.at(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::vector<BigRat>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<BigRat> vec(m.cols());
    vec[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) vec[pivots[i]] = -m.at(i, free);
    basis.push_back(std::move(vec));
  }
  return basis;
}

// A generic element of J(v) has value vector exactly v whenever v is
// realizable, so a few random kernel combinations must hit it.
TEST_CASE("realizable vectors have explicit witnesses") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (const auto& entry : corpus()) {
    const Curve c = curve_from(entry.text);
    CAPTURE(entry.name);
    const CodimTable table(c);
    for (const auto& v : box_vectors(c.r(), box_bound_for(c))) {
      const bool realizable = is_realizable(table, v);
      const unsigned k = default_jet_level(v);
      const auto monomials = jet_monomials(k);
      const auto basis = kernel_basis(valuation_matrix(c, v, k));
      ValueVector target;
      for (unsigned vi : v) target.entries.emplace_back(vi);
      bool found = false;
      for (int trial = 0; trial < 50 && !found && !basis.empty(); ++trial) {
        std::vector<BigRat> combo(monomials.size());
        for (const auto& b : basis) {
          const int w = coeff(rng);
          for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += w * b[j];
        }
        BiPoly g;
        for (std::size_t j = 0; j < combo.size(); ++j) {
          if (combo[j] != 0) g = g + BiPoly::monomial(monomials[j].first, monomials[j].second, combo[j]);
        }
        found = value_vector(c, g) == target;
      }
      INFO("v = ", target.to_string());
      CHECK(found == realizable);
    }
  }
}

TEST_CASE("parallel prefill matches serial codimensions") {
  const Curve c = testing::three_lines();
  const CodimTable serial(c);
  const CodimTable parallel(c);
  parallel.prefill(4, 8);
  CHECK(parallel.cached_entries() == 125);
  for (const auto& v : box_vectors(3, 4)) CHECK(parallel.codim(v) == serial.codim(v));
}

TEST_CASE("box_vectors enumerates in graded-lex order") {
  const auto box = box_vectors(2, 1);
  CHECK(box == std::vector<MultiIndex>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(box_vectors({1, 2}, {0, 3}).empty());
}
