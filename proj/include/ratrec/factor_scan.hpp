#ifndef RATREC_FACTOR_SCAN_HPP
#define RATREC_FACTOR_SCAN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ratrec/ff_factor.hpp"
#include "ratrec/hybrid.hpp"
#include "ratrec/rational.hpp"

namespace ratrec {

// Primitive integer polynomial with positive leading coefficient; the
// canonical form of a lifted factor. Constant 1 for "no factor".
struct FactorPolyQ {
  std::vector<BigInt> coeffs; // ascending, last entry > 0

  bool is_one() const { return coeffs.size() == 1 && coeffs[0] == 1; }
  static FactorPolyQ one() { return FactorPolyQ{{BigInt(1)}}; }
  DensePolyFF to_field(const PrimeField& f) const;
  std::uint32_t degree() const { return static_cast<std::uint32_t>(coeffs.size()) - 1; }
};

struct VariableFactors {
  FactorPolyQ q_num = FactorPolyQ::one();
  FactorPolyQ q_den = FactorPolyQ::one();
  std::uint32_t max_degree = 0; // observed max degree of the black box in this variable
};

struct FactorScanResult {
  std::vector<VariableFactors> per_variable;
  // internal variable order: ordering[k] is the original index placed at
  // internal position k; position 0 carries the maximal degree
  std::vector<std::uint32_t> ordering;
};

// One univariate slice of the black box: all variables but `var` fixed,
// interpolated in the remaining one and factorized on both sides.
struct SliceSample {
  UnivariateRational fn;
  FFFactorization num_factors;
  FFFactorization den_factors;
};

// Interpolates the slice through `fixings` (length n_vars, entry `var`
// ignored). When `known` is supplied, the t-interpolation is replaced by a
// linear solve over the degree skeleton of the first sample.
SliceSample scan_sample(ProbeSource& src, const PrimeField& f, std::uint32_t n_vars,
                        std::uint32_t var, const std::vector<FieldElement>& fixings, Rng& rng,
                        const UnivariateRational* known = nullptr, int eta = 1,
                        int max_retries = 16);

// Monic common factors (minimum multiplicity) of two factorizations.
std::vector<std::pair<DensePolyFF, std::uint32_t>> common_factors(const FFFactorization& a,
                                                                  const FFFactorization& b);

// Full per-variable scan: two samples per prime, factor intersection, CRT over
// further primes until the rational reconstruction of the coefficients
// succeeds. Returns the lifted factors and the observed maximum degree.
VariableFactors scan_variable(ProbeSource& src, std::uint32_t n_vars, std::uint32_t var,
                              const std::vector<const PrimeField*>& primes, Rng& rng,
                              int samples_per_prime = 2, int eta = 1, int max_retries = 16);

// Scans every variable and derives the degree-sorted internal ordering.
FactorScanResult full_scan(ProbeSource& src, std::uint32_t n_vars,
                           const std::vector<const PrimeField*>& primes, Rng& rng,
                           int samples_per_prime = 2, int eta = 1, int max_retries = 16);

} // namespace ratrec

#endif
