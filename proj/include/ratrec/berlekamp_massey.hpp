#ifndef RATREC_BERLEKAMP_MASSEY_HPP
#define RATREC_BERLEKAMP_MASSEY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ratrec/dense_poly.hpp"

namespace ratrec {

// Iterative Berlekamp-Massey over a prime field. Finds the minimal linear
// generator of the fed sequence; the reversed generator is the auxiliary
// polynomial whose roots encode the monomial degrees.
class BMState {
public:
  explicit BMState(const PrimeField& f)
      : lambda_(f, {1}), b_(f), length_(0), last_discrepancy_(f, 1),
        processed_(0), zero_run_(0) {}

  const PrimeField& field() const { return lambda_.field(); }
  const DensePolyFF& lambda() const { return lambda_; }
  const DensePolyFF& b() const { return b_; }
  std::uint32_t length() const { return length_; }
  std::uint32_t processed() const { return processed_; }
  std::uint32_t zero_run() const { return zero_run_; }
  FieldElement last_discrepancy() const { return last_discrepancy_; }

  // Processes the next sequence element, returns the discrepancy.
  FieldElement update(const FieldElement& a_r);

  // The fed sequence so far (1-based values at index i-1).
  const std::vector<FieldElement>& sequence() const { return seq_; }

  // Hankel-complete: the non-vanishing probes determine an L x L system.
  bool hankel_complete() const { return processed_ == 2 * length_ + zero_run_; }

private:
  DensePolyFF lambda_; // ascending coefficients, constant term stays 1
  DensePolyFF b_;
  std::uint32_t length_;
  FieldElement last_discrepancy_;
  std::uint32_t processed_;
  std::uint32_t zero_run_;
  std::vector<FieldElement> seq_;
};

// Monic auxiliary polynomial (the generator with reversed coefficients).
// Requires a Hankel-complete state; throws std::logic_error otherwise.
DensePolyFF bm_to_aux_poly(const BMState& state);

// All i in [0, degree_bound] with zeta(y^i) == 0, ascending, stopping once
// deg(zeta) roots are found. Returns nullopt when the count never reaches
// deg(zeta), i.e. the auxiliary polynomial does not factor over powers of y.
std::optional<std::vector<std::uint32_t>> bot_find_degrees(const DensePolyFF& zeta,
                                                           const FieldElement& y,
                                                           std::uint32_t degree_bound);

} // namespace ratrec

#endif
