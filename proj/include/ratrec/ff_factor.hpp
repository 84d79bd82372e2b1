#ifndef RATREC_FF_FACTOR_HPP
#define RATREC_FF_FACTOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ratrec/dense_poly.hpp"
#include "ratrec/rng.hpp"

namespace ratrec {

// Complete factorization over the prime field: unit times the product of
// monic irreducible factors with multiplicities.
struct FFFactorization {
  FieldElement unit;
  std::vector<std::pair<DensePolyFF, std::uint32_t>> factors;

  DensePolyFF expand() const;
};

// Squarefree decomposition, distinct-degree splitting, then Cantor-Zassenhaus
// equal-degree factorization. Deterministic for a given rng state; factors are
// sorted by degree then coefficients. Throws on the zero polynomial.
FFFactorization factorize_univariate_ff(const DensePolyFF& poly, Rng& rng);

} // namespace ratrec

#endif
