#ifndef RATREC_THIELE_HPP
#define RATREC_THIELE_HPP

#include <functional>
#include <vector>

#include "ratrec/rational_function.hpp"
#include "ratrec/rng.hpp"

namespace ratrec {

// Continued-fraction (Thiele) interpolation of a univariate rational function.
// Termination: eta consecutive extra probes consistent with the current
// interpolant. Degenerate reciprocal differences are reported as bad points so
// the caller can resample.
class ThieleInterpolator {
public:
  enum class Status { running, done, bad_point };

  ThieleInterpolator(const PrimeField& f, int eta = 1) : f_(&f), eta_(eta) {}

  Status feed(const FieldElement& t, const FieldElement& value);
  bool done() const { return done_; }
  std::size_t probes() const { return probes_; }

  // Numerator/denominator form, normalized so the lowest nonzero denominator
  // coefficient is 1.
  UnivariateRational result() const;

private:
  bool eval_cf(const FieldElement& t, FieldElement& out) const;

  const PrimeField* f_;
  int eta_;
  int consistent_ = 0;
  bool done_ = false;
  std::size_t probes_ = 0;
  std::vector<FieldElement> ts_;
  std::vector<FieldElement> bs_;
};

// Oracle front-end: draws distinct random probe points, resamples on
// ZeroDivisorError (poles of the black box) and on degenerate configurations,
// up to max_retries consecutive failures.
UnivariateRational thiele_interpolate(
    const std::function<FieldElement(const FieldElement&)>& oracle, const PrimeField& f,
    Rng& rng, int eta = 1, int max_retries = 16, std::size_t* probe_count = nullptr);

} // namespace ratrec

#endif
