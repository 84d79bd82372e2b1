#ifndef RATREC_NEWTON_HPP
#define RATREC_NEWTON_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ratrec/dense_poly.hpp"

namespace ratrec {

// Univariate Newton interpolation with early termination: done after eta
// consecutive vanishing top divided differences, or once degree_bound + 1
// distinct points are consumed when a bound is known.
class NewtonInterpolator {
public:
  enum class Status { running, done };

  NewtonInterpolator(const PrimeField& f, int eta,
                     std::optional<std::uint32_t> degree_bound = std::nullopt)
      : f_(&f), eta_(eta), bound_(degree_bound), zero_run_(0), done_(false) {}

  Status update(const FieldElement& point, const FieldElement& value);

  bool done() const { return done_; }
  std::size_t probes() const { return points_.size(); }

  // Interpolant in the monomial basis; valid once done (or at any time as the
  // interpolant of the consumed probes).
  DensePolyFF result() const;

private:
  const PrimeField* f_;
  int eta_;
  std::optional<std::uint32_t> bound_;
  std::uint32_t zero_run_;
  bool done_;
  std::vector<FieldElement> points_;
  std::vector<FieldElement> diffs_; // diagonal divided differences f[x0..xj]
};

} // namespace ratrec

#endif
