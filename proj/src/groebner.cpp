#include "homcx/groebner.hpp"

#include <algorithm>
#include <deque>

namespace homcx {

Polynomial reduce_fully(const PolynomialRing& R, const Polynomial& f, const std::vector<Polynomial>& basis) {
  const auto& F = R.field();
  std::vector<Term> remainder;
  Polynomial h = f;
  while (!h.is_zero()) {
    const Term lt = h.leading();
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      const Term& lg = g.leading();
      if (!lg.mono.divides(lt.mono)) continue;
      auto q = lg.mono.quotient_of(lt.mono);
      auto c = F.mul(lt.coef, F.inv(lg.coef));
      h = R.sub(h, R.mul_term(g, q, c));
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.push_back(lt);
      h = R.sub(h, R.monomial(lt.mono, lt.coef));
    }
  }
  return Polynomial::from_terms(F, std::move(remainder));
}

namespace {

Polynomial s_polynomial(const PolynomialRing& R, const Polynomial& f, const Polynomial& g) {
  const auto& F = R.field();
  auto l = f.leading().mono.lcm(g.leading().mono);
  auto a = R.mul_term(f, f.leading().mono.quotient_of(l), F.inv(f.leading().coef));
  auto b = R.mul_term(g, g.leading().mono.quotient_of(l), F.inv(g.leading().coef));
  return R.sub(a, b);
}

struct Pair {
  std::size_t i, j;
  int degree;
};

}  // namespace

std::vector<Polynomial> groebner(const PolynomialRing& R, const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> G;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_homogeneous())
      throw NonHomogeneousError(i, "ideal generator " + std::to_string(i) + " (" + R.to_string(gens[i]) +
                                       ") is not homogeneous");
    if (!gens[i].is_zero()) G.push_back(R.make_monic(gens[i]));
  }

  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      pairs.push_back({i, j, G[i].leading().mono.lcm(G[j].leading().mono).degree()});
  };
  for (std::size_t j = 0; j < G.size(); ++j) add_pairs(j);

  while (!pairs.empty()) {
    // lowest lcm degree first, then insertion order: keeps the run deterministic
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return a.degree != b.degree ? a.degree < b.degree : (a.j != b.j ? a.j < b.j : a.i < b.i);
    });
    Pair pr = *it;
    pairs.erase(it);
    if (G[pr.i].leading().mono.coprime(G[pr.j].leading().mono)) continue;
    auto h = reduce_fully(R, s_polynomial(R, G[pr.i], G[pr.j]), G);
    if (h.is_zero()) continue;
    G.push_back(R.make_monic(h));
    add_pairs(G.size() - 1);
  }

  // minimalize: drop elements whose leading monomial is divisible by another's
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = G[i].leading().mono;
      const auto& mj = G[j].leading().mono;
      if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  // interreduce
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    auto tail = reduce_fully(R, R.sub(minimal[i], R.monomial(minimal[i].leading().mono, 1)), others);
    reduced.push_back(R.add(R.monomial(minimal[i].leading().mono, 1), tail));
  }
  std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
    return degrevlex_greater(b.leading().mono, a.leading().mono);
  });
  return reduced;
}

}  // namespace homcx
