#pragma once

// Rings and modules shared by the test suites.

#include <string>
#include <vector>

#include "homcx/graded_module.hpp"
#include "homcx/quotient_ring.hpp"

namespace fixtures {

using namespace homcx;

inline std::vector<std::string> names(const std::string& stem, int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

struct Vars {
  PolynomialRing R;
  Polynomial operator()(std::size_t i) const { return R.variable(i); }
  Polynomial c(std::int64_t k) const { return R.constant(k); }
  Polynomial mul(const Polynomial& a, const Polynomial& b) const { return R.mul(a, b); }
  Polynomial add(const Polynomial& a, const Polynomial& b) const { return R.add(a, b); }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return R.sub(a, b); }
};

/// k[x1..x4] / (x1², x2², x3², x4², x3x4, x1x4 + x2x4, αx1x3 + x2x3).
inline std::vector<Polynomial> gasharov_quadrics(const PolynomialRing& R, std::int64_t alpha) {
  Vars v{R};
  return {v.mul(v(0), v(0)), v.mul(v(1), v(1)), v.mul(v(2), v(2)), v.mul(v(3), v(3)), v.mul(v(2), v(3)),
          v.add(v.mul(v(0), v(3)), v.mul(v(1), v(3))),
          v.add(v.mul(v.c(alpha), v.mul(v(0), v(2))), v.mul(v(1), v(2)))};
}

inline RingPtr gasharov_ring(std::uint32_t p = 7, std::int64_t alpha = 2) {
  PolynomialRing R(PrimeField(p), names("x", 4));
  return make_ring(R, gasharov_quadrics(R, alpha));
}

/// The matrix (x1, αⁿx3 + x4; 0, x2).
inline ModuleMap gasharov_differential(const RingPtr& A, std::int64_t alpha, unsigned n) {
  Vars v{A->poly()};
  auto an = A->field().pow(A->field().from_int(alpha), n);
  return ModuleMap::from_columns(
      A, {0, 0}, {{v(0), Polynomial{}}, {v.add(A->poly().scale(v(2), an), v(3)), v(1)}});
}

/// M = coker d_1 = Im d_0.
inline GradedModule gasharov_module(const RingPtr& A, std::int64_t alpha = 2) {
  return GradedModule(gasharov_differential(A, alpha, 1));
}

/// GF(p)[x, y] / (gens...) built from a callback over the two variables.
inline RingPtr two_var_ring(std::uint32_t p, const std::string& which) {
  PolynomialRing R(PrimeField(p), {"x", "y"});
  Vars v{R};
  auto x = v(0), y = v(1);
  if (which == "x2,y2") return make_ring(R, {v.mul(x, x), v.mul(y, y)});
  if (which == "xy") return make_ring(R, {v.mul(x, y)});
  if (which == "x2") return make_ring(R, {v.mul(x, x)});
  if (which == "xy,x2-y2") return make_ring(R, {v.mul(x, y), v.sub(v.mul(x, x), v.mul(y, y))});
  if (which == "0") return make_ring(R, {});
  throw std::invalid_argument("unknown fixture ring " + which);
}

inline RingPtr one_var_ring(std::uint32_t p, int power) {
  PolynomialRing R(PrimeField(p), {"x"});
  return make_ring(R, {R.pow(R.variable(0), static_cast<unsigned>(power))});
}

struct NamedModule {
  std::string name;
  GradedModule module;
  int H;  // homological bound that keeps the fixture cheap
};

/// The module zoo used by the structural property suites.
inline std::vector<NamedModule> module_zoo() {
  auto G = gasharov_ring();
  auto C = two_var_ring(5, "x2,y2");
  auto X = two_var_ring(5, "xy");
  auto L = one_var_ring(5, 2);
  Vars c{C->poly()}, x{X->poly()};
  return {
      {"gasharov M", gasharov_module(G), 8},
      {"gasharov k", GradedModule::residue_field(G), 3},
      {"gasharov A", GradedModule::free(G, {0}), 3},
      {"ci k", GradedModule::residue_field(C), 8},
      {"ci A/(x)", GradedModule::cyclic(C, {c(0)}), 8},
      {"ci A/(y)", GradedModule::cyclic(C, {c(1)}), 8},
      {"ci A/(x,y^2)", GradedModule::cyclic(C, {c(0), c.mul(c(1), c(1))}), 6},
      {"xy k", GradedModule::residue_field(X), 8},
      {"xy A/(x)", GradedModule::cyclic(X, {x(0)}), 8},
      {"xy A/(y)", GradedModule::cyclic(X, {x(1)}), 8},
      {"x2 k", GradedModule::residue_field(L), 8},
  };
}

}  // namespace fixtures
