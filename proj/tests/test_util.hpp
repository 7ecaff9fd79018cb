#pragma once

#include <random>

#include "endolift/modrep.hpp"

namespace testutil {

using namespace endolift;

inline FMatrix random_vectors(std::mt19937_64& rng, int m, std::size_t rows, std::size_t cols) {
  FMatrix a(m, rows, cols);
  std::uniform_int_distribution<unsigned> v(0, (1u << m) - 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a.set(i, j, static_cast<GfElem>(v(rng)));
  return a;
}

/// Cyclic submodules of kD and kD^2, their quotients, and sums with k: a
/// cheap source of small modules with varied structure.
inline ModuleRep random_module(std::mt19937_64& rng, const GroupSpec& g, int m = 1) {
  const ModuleRep reg = regular_module(g, m);
  const int kind = static_cast<int>(rng() % 4);
  const ModuleRep amb = kind == 3 ? direct_sum(reg, reg) : reg;
  // Push the generator into the radical sometimes so submodules stay small.
  FMatrix v = random_vectors(rng, m, amb.dim(), 1);
  const FMatrix push = amb.S() + FMatrix::identity(m, amb.dim());
  if (rng() % 2) v = push * v;
  auto sub = spin(amb, v);
  switch (kind) {
    case 0:
      return sub.module;
    case 1:
      return quotient(amb, sub.inclusion).module;
    case 2:
      return direct_sum(sub.module, trivial_module(g, m));
    default:
      return quotient(amb, sub.inclusion).module;
  }
}

}  // namespace testutil
