#pragma once

// Independent reference computations used only by tests. They work on raw
// polynomial-ring linear algebra and never touch Gröbner bases, normal
// forms or the resolution code.

#include <map>
#include <vector>

#include "homcx/linalg.hpp"
#include "homcx/polynomial.hpp"

namespace oracle {

using namespace homcx;

/// Monomial-basis coordinates in degree d of the polynomial ring.
inline Vec dense(const PolynomialRing& R, const Polynomial& f, int d) {
  auto monos = monomials_of_degree(R.num_vars(), d);
  std::map<std::vector<int>, std::size_t> idx;
  for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i].exponents()] = i;
  Vec v(monos.size(), 0);
  for (const auto& t : f.terms()) v[idx.at(t.mono.exponents())] = R.field().add(v[idx.at(t.mono.exponents())], t.coef);
  return v;
}

/// Spanning vectors of I_d = sum over generators g of (monomials of degree d - deg g) * g.
inline std::vector<Vec> ideal_piece(const PolynomialRing& R, const std::vector<Polynomial>& gens, int d) {
  std::vector<Vec> out;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int dg = g.leading().mono.degree();
    for (const auto& m : monomials_of_degree(R.num_vars(), d - dg)) out.push_back(dense(R, R.mul_term(g, m, 1), d));
  }
  return out;
}

inline long quotient_dim(const PolynomialRing& R, const std::vector<Polynomial>& gens, int d) {
  auto n = monomials_of_degree(R.num_vars(), d).size();
  auto piece = ideal_piece(R, gens, d);
  if (piece.empty()) return static_cast<long>(n);
  return static_cast<long>(n - rank(R.field(), Matrix::from_columns(n, piece)));
}

inline bool in_ideal(const PolynomialRing& R, const std::vector<Polynomial>& gens, const Polynomial& f, int d) {
  auto n = monomials_of_degree(R.num_vars(), d).size();
  auto piece = ideal_piece(R, gens, d);
  Subspace s(n);
  for (const auto& v : piece) s.add(R.field(), v);
  return s.contains(R.field(), dense(R, f, d));
}

}  // namespace oracle

namespace oracle {

/// dim_k of (S^r / (I S^r + <columns>))_d computed over the polynomial ring
/// S, for a presentation with target shifts `gens` and columns of degree
/// `col_deg`.
inline long module_quotient_dim(const PolynomialRing& R, const std::vector<Polynomial>& ideal,
                                const std::vector<int>& gens, const std::vector<std::vector<Polynomial>>& cols,
                                const std::vector<int>& col_deg, int d) {
  std::vector<std::size_t> offs;
  std::size_t total = 0;
  for (int g : gens) {
    offs.push_back(total);
    total += d - g >= 0 ? monomials_of_degree(R.num_vars(), d - g).size() : 0;
  }
  if (total == 0) return 0;
  auto embed = [&](std::size_t slot, const Polynomial& f) {
    Vec v(total, 0);
    auto part = dense(R, f, d - gens[slot]);
    for (std::size_t i = 0; i < part.size(); ++i) v[offs[slot] + i] = part[i];
    return v;
  };
  std::vector<Vec> span;
  for (std::size_t s = 0; s < gens.size(); ++s)
    if (d - gens[s] >= 0)
      for (const auto& w : ideal_piece(R, ideal, d - gens[s])) {
        Vec v(total, 0);
        for (std::size_t i = 0; i < w.size(); ++i) v[offs[s] + i] = w[i];
        span.push_back(v);
      }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    int e = d - col_deg[c];
    if (e < 0) continue;
    for (const auto& m : monomials_of_degree(R.num_vars(), e)) {
      Vec v(total, 0);
      for (std::size_t s = 0; s < gens.size(); ++s) {
        if (cols[c][s].is_zero()) continue;
        auto part = embed(s, R.mul_term(cols[c][s], m, 1));
        for (std::size_t i = 0; i < total; ++i) v[i] = R.field().add(v[i], part[i]);
      }
      span.push_back(v);
    }
  }
  if (span.empty()) return static_cast<long>(total);
  return static_cast<long>(total - rank(R.field(), Matrix::from_columns(total, span)));
}

}  // namespace oracle

namespace oracle {

/// Betti numbers of k over GF(p)[x_1..x_n]/(monomials), computed ungraded:
/// A is treated as a finite-dimensional algebra with its standard monomial
/// basis, and each syzygy is the kernel of a dense k-linear map. Minimal
/// generator counts are dim K - dim mK.
inline std::vector<long> monomial_algebra_betti_of_k(const PrimeField& F, std::size_t n,
                                                     const std::vector<std::vector<int>>& monomials, int H) {
  auto killed = [&](const std::vector<int>& e) {
    for (const auto& m : monomials) {
      bool div = true;
      for (std::size_t i = 0; i < n; ++i) div = div && m[i] <= e[i];
      if (div) return true;
    }
    return false;
  };
  // standard monomials (finite: the ideal must contain a power of each variable)
  std::vector<std::vector<int>> basis;
  std::vector<std::vector<int>> frontier{std::vector<int>(n, 0)};
  std::map<std::vector<int>, std::size_t> index;
  while (!frontier.empty()) {
    auto e = frontier.back();
    frontier.pop_back();
    if (index.count(e) || killed(e)) continue;
    index[e] = basis.size();
    basis.push_back(e);
    for (std::size_t i = 0; i < n; ++i) {
      auto f = e;
      ++f[i];
      frontier.push_back(f);
    }
  }
  const std::size_t dimA = basis.size();
  // multiplication by basis element b on A, as a dense matrix
  auto mult = [&](std::size_t b) {
    Matrix m(dimA, dimA);
    for (std::size_t j = 0; j < dimA; ++j) {
      auto e = basis[j];
      for (std::size_t i = 0; i < n; ++i) e[i] += basis[b][i];
      auto it = index.find(e);
      if (it != index.end()) m(it->second, j) = 1;
    }
    return m;
  };
  std::vector<Matrix> mults;
  for (std::size_t b = 0; b < dimA; ++b) mults.push_back(mult(b));
  std::vector<std::size_t> var_idx;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    if (index.count(e)) var_idx.push_back(index.at(e));
  }

  // module elements of A^r are vectors of length r * dimA
  auto act = [&](std::size_t b, const Vec& v) {
    Vec out(v.size(), 0);
    for (std::size_t blk = 0; blk * dimA < v.size(); ++blk)
      for (std::size_t i = 0; i < dimA; ++i)
        for (std::size_t j = 0; j < dimA; ++j)
          if (mults[b](i, j)) out[blk * dimA + i] = F.add(out[blk * dimA + i], v[blk * dimA + j]);
    return out;
  };
  // K_0 = ker(A -> k) = m
  std::vector<long> betti{1};
  std::vector<Vec> K;
  for (std::size_t j = 1; j < dimA; ++j) {
    Vec v(dimA, 0);
    v[j] = 1;
    K.push_back(v);
  }
  std::size_t ambient = dimA;
  for (int i = 1; i <= H; ++i) {
    Subspace mk(ambient);
    for (const auto& v : K)
      for (auto b : var_idx) mk.add(F, act(b, v));
    std::vector<Vec> gens;
    Subspace span = mk;
    for (const auto& v : K)
      if (span.add(F, v)) gens.push_back(v);
    betti.push_back(static_cast<long>(gens.size()));
    if (gens.empty()) break;
    // d: A^g -> current ambient, a e_j -> a g_j
    std::size_t src = gens.size() * dimA;
    Matrix d(ambient, src);
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t b = 0; b < dimA; ++b) d.set_column(j * dimA + b, act(b, gens[j]));
    K = kernel_basis(F, d);
    ambient = src;
  }
  return betti;
}

}  // namespace oracle
