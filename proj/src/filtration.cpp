#include "singchi/filtration.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "singchi/detail/parallel.hpp"
#include "singchi/errors.hpp"

namespace singchi {

unsigned jet_dim(unsigned k) { return (k + 1) * (k + 2) / 2; }

std::vector<std::pair<unsigned, unsigned>> jet_monomials(unsigned k) {
  std::vector<std::pair<unsigned, unsigned>> monomials;
  monomials.reserve(jet_dim(k));
  for (unsigned d = 0; d <= k; ++d) {
    for (unsigned b = 0; b <= d; ++b) monomials.emplace_back(d - b, b);
  }
  return monomials;
}

unsigned default_jet_level(const MultiIndex& v) {
  unsigned k = 1;
  for (unsigned vi : v) k = std::max(k, vi);
  return k;
}

RatMatrix valuation_matrix(const Curve& curve, const MultiIndex& v, unsigned jet_level) {
  if (v.size() != curve.r()) throw std::invalid_argument("value vector length does not match r");
  const auto monomials = jet_monomials(jet_level);
  std::size_t rows = 0;
  for (unsigned vi : v) rows += vi;
  RatMatrix m(rows, monomials.size());
  std::size_t row0 = 0;
  for (std::size_t i = 0; i < curve.r(); ++i) {
    const unsigned bound = v[i];
    if (bound == 0) continue;
    const Branch& b = curve.branch(i);
    std::vector<UniPoly> xpow{UniPoly::constant(1)};
    std::vector<UniPoly> ypow{UniPoly::constant(1)};
    for (unsigned a = 1; a <= jet_level; ++a) {
      xpow.push_back(UniPoly::multiply_truncated(xpow.back(), b.x, bound));
      ypow.push_back(UniPoly::multiply_truncated(ypow.back(), b.y, bound));
    }
    for (std::size_t col = 0; col < monomials.size(); ++col) {
      const auto [a, bb] = monomials[col];
      const UniPoly image = UniPoly::multiply_truncated(xpow[a], ypow[bb], bound);
      for (const auto& [j, c] : image.terms()) m.at(row0 + j, col) = c;
    }
    row0 += bound;
  }
  return m;
}

RatMatrix valuation_matrix(const Curve& curve, const MultiIndex& v) {
  return valuation_matrix(curve, v, default_jet_level(v));
}

// -------------------------------------------------------------- CodimTable

CodimTable::CodimTable(Curve curve) : curve_(std::move(curve)) {}

void CodimTable::check_arity(const MultiIndex& v) const {
  if (v.size() != curve_.r()) {
    throw std::invalid_argument("value vector has length " + std::to_string(v.size()) +
                                " but the curve has " + std::to_string(curve_.r()) + " branches");
  }
}

unsigned CodimTable::codim(const MultiIndex& v) const {
  check_arity(v);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
  }
  const auto rank = static_cast<unsigned>(matrix_rank_exact(valuation_matrix(curve_, v)));
  std::unique_lock lock(mutex_);
  return memo_.try_emplace(v, rank).first->second;
}

unsigned CodimTable::codim_at_level(const MultiIndex& v, unsigned jet_level) const {
  check_arity(v);
  auto key = std::make_pair(v, jet_level);
  {
    std::shared_lock lock(mutex_);
    if (auto it = level_memo_.find(key); it != level_memo_.end()) return it->second;
  }
  const auto rank = static_cast<unsigned>(matrix_rank_exact(valuation_matrix(curve_, v, jet_level)));
  std::unique_lock lock(mutex_);
  return level_memo_.try_emplace(std::move(key), rank).first->second;
}

void CodimTable::prefill(unsigned bound, unsigned threads) const {
  prefill(box_vectors(curve_.r(), bound), threads);
}

void CodimTable::prefill(const std::vector<MultiIndex>& vectors, unsigned threads) const {
  detail::parallel_for(vectors.size(), threads, [&](std::size_t i) { codim(vectors[i]); });
}

void CodimTable::seed(const MultiIndex& v, unsigned value) {
  check_arity(v);
  std::unique_lock lock(mutex_);
  memo_[v] = value;
}

std::size_t CodimTable::cached_entries() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

// --------------------------------------------------------------- queries

bool is_realizable(const CodimTable& table, const MultiIndex& v) {
  const unsigned base = table.codim(v);
  MultiIndex w = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ++w[i];
    const bool grows = table.codim(w) > base;
    --w[i];
    if (!grows) return false;
  }
  return true;
}

std::vector<MultiIndex> box_vectors(const MultiIndex& lo, const MultiIndex& hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box corners differ in length");
  std::vector<MultiIndex> out;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) return out;
  }
  MultiIndex v = lo;
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < v.size() && v[i] == hi[i]) {
      v[i] = lo[i];
      ++i;
    }
    if (i == v.size()) break;
    ++v[i];
  }
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::vector<MultiIndex> box_vectors(std::size_t r, unsigned bound) {
  return box_vectors(MultiIndex(r, 0), MultiIndex(r, bound));
}

namespace {

bool increments_are_one_from(const CodimTable& table, const MultiIndex& gamma, unsigned shell) {
  MultiIndex hi = gamma;
  for (auto& h : hi) h += shell;
  for (const auto& w : box_vectors(gamma, hi)) {
    const unsigned base = table.codim(w);
    MultiIndex u = w;
    for (std::size_t i = 0; i < w.size(); ++i) {
      ++u[i];
      const bool ok = table.codim(u) == base + 1;
      --u[i];
      if (!ok) return false;
    }
  }
  return true;
}

// Visits the vectors of [0, cap]^r with total degree `remaining` in
// lexicographically descending order, stopping when visit returns true.
template <class Visit>
bool for_each_of_degree(MultiIndex& v, std::size_t pos, unsigned remaining, unsigned cap,
                        Visit&& visit) {
  if (pos + 1 == v.size()) {
    if (remaining > cap) return false;
    v[pos] = remaining;
    return visit(v);
  }
  for (unsigned x = std::min(remaining, cap) + 1; x-- > 0;) {
    v[pos] = x;
    if (for_each_of_degree(v, pos + 1, remaining - x, cap, visit)) return true;
  }
  return false;
}

}  // namespace

unsigned branch_multiplicity(const Branch& b) {
  unsigned m = 0;
  for (const auto* p : {&b.x, &b.y}) {
    if (auto o = p->order()) m = m == 0 ? *o : std::min(m, *o);
  }
  return m;
}

unsigned conductor_shell(const Curve& curve) {
  unsigned shell = 2;
  for (const auto& b : curve.branches()) shell = std::max(shell, branch_multiplicity(b) - 1);
  return shell;
}

MultiIndex conductor(const CodimTable& table, unsigned max_bound) {
  const std::size_t r = table.r();
  const unsigned shell = conductor_shell(table.curve());
  MultiIndex v(r, 0);
  MultiIndex found;
  for (unsigned degree = 0; degree <= r * max_bound; ++degree) {
    const bool hit = for_each_of_degree(v, 0, degree, max_bound, [&](const MultiIndex& gamma) {
      if (!increments_are_one_from(table, gamma, shell)) return false;
      found = gamma;
      return true;
    });
    if (hit) return found;
  }
  throw NotStabilized(max_bound);
}

}  // namespace singchi
