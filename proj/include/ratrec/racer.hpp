#ifndef RATREC_RACER_HPP
#define RATREC_RACER_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ratrec/berlekamp_massey.hpp"
#include "ratrec/newton.hpp"

namespace ratrec {

enum class RacerMode { race, newton_only };

// Univariate polynomial as sorted (degree, coefficient) pairs.
using SparseUnivariate = std::vector<std::pair<std::uint32_t, FieldElement>>;

// Races dense Newton against Ben-Or/Tiwari on one probe stream. The racer
// owns the probe schedule: probes are taken at y^1, y^2, ... so a single
// black-box evaluation feeds both sub-algorithms.
class Racer {
public:
  enum class Status { running, done };
  enum class Winner { newton, bot };

  Racer(const PrimeField& f, const FieldElement& anchor_y, int eta,
        std::optional<std::uint32_t> degree_bound,
        RacerMode mode = RacerMode::race);

  const FieldElement& anchor() const { return y_; }
  // Point of the next probe: y^(r+1) for r probes consumed.
  FieldElement next_point() const { return next_point_; }
  std::uint32_t probes() const { return r_; }

  // Feed f(next_point()); both sub-algorithms get updated with it.
  Status update(const FieldElement& value);

  bool done() const { return winner_.has_value(); }
  Winner winner() const { return *winner_; }
  const SparseUnivariate& result() const { return result_; }

private:
  void finish_newton();
  bool try_finish_bot();

  const PrimeField* f_;
  FieldElement y_;
  int eta_;
  std::optional<std::uint32_t> bound_;
  RacerMode mode_;
  bool bot_alive_;
  std::uint32_t r_;
  FieldElement next_point_;
  NewtonInterpolator newton_;
  BMState bm_;
  std::optional<Winner> winner_;
  SparseUnivariate result_;
};

} // namespace ratrec

#endif
