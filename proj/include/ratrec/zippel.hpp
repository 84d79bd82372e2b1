#ifndef RATREC_ZIPPEL_HPP
#define RATREC_ZIPPEL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ratrec/racer.hpp"
#include "ratrec/sparse_poly.hpp"
#include "ratrec/vandermonde.hpp"

namespace ratrec {

// Power tuple addressing an evaluation point: component k holds the power of
// the k-th anchor, so the point is (y_1^w[0], ..., y_m^w[m-1]).
using ZiOrder = std::vector<std::uint32_t>;

// Multivariate Zippel interpolation driven by values supplied at power tuples
// of fixed anchor points. Variables are processed sequentially; per variable
// the univariate racer runs on each support monomial, and previously found
// skeletons are reused through shifted Vandermonde solves.
//
// The caller loop is: while !done(): pick w from pending(), obtain the value
// of the target polynomial at the tuple w, feed(w, value).
class ZippelInterpolator {
public:
  ZippelInterpolator(const PrimeField& f, std::vector<FieldElement> anchors,
                     std::uint32_t total_degree_bound,
                     std::vector<std::uint32_t> var_degree_bounds, // may be empty
                     int eta, RacerMode mode = RacerMode::race);

  // The value at the all-ones tuple starts the first stage.
  void seed(const FieldElement& value);

  bool done() const { return done_; }
  const SparsePoly& result() const;

  // Tuples the interpolation currently waits for (empty once done).
  const std::vector<ZiOrder>& pending() const { return pending_; }
  // Active variable index of the current stage (scheduler priority), -1 when done.
  int current_stage_var() const { return done_ ? -1 : static_cast<int>(stage_); }

  void feed(const ZiOrder& w, const FieldElement& value);

  std::uint32_t n_vars() const { return static_cast<std::uint32_t>(anchors_.size()); }

private:
  struct Slot {
    ExpVec monomial;          // exponents over vars < stage (padded to n_vars)
    FieldElement node;        // monomial evaluated at the anchors
    Racer racer;
    bool finished = false;
    SparseUnivariate stage_poly; // result in the stage variable once finished
  };

  void start_stage(std::vector<std::pair<ExpVec, FieldElement>> support_values);
  void advance_step();
  void process_step_values(const std::vector<FieldElement>& probe_values);
  void feed_slot(Slot& slot, const FieldElement& value);
  void finish_stage();
  ZiOrder row_tuple(std::uint32_t row) const;
  std::uint32_t racer_bound(const ExpVec& e) const;

  const PrimeField* f_;
  std::vector<FieldElement> anchors_;
  std::uint32_t total_bound_;
  std::vector<std::uint32_t> var_bounds_;
  int eta_;
  RacerMode mode_;

  std::uint32_t stage_ = 0; // active variable index
  std::uint32_t step_ = 1;  // power of the stage variable
  std::vector<Slot> slots_;
  std::vector<std::uint32_t> active_rows_; // slot indices still racing, row order
  std::vector<ZiOrder> pending_;
  std::vector<std::optional<FieldElement>> row_values_;
  std::size_t rows_missing_ = 0;

  bool seeded_ = false;
  bool done_ = false;
  std::optional<SparsePoly> result_;
};

// Convenience front-end: interpolates the oracle by generating the tuple
// stream itself. The oracle receives the full evaluation point.
SparsePoly zippel_interpolate(
    const std::function<FieldElement(const std::vector<FieldElement>&)>& oracle,
    const PrimeField& f, std::uint32_t n_vars, std::vector<FieldElement> anchors,
    std::uint32_t total_degree_bound, std::vector<std::uint32_t> var_degree_bounds = {},
    int eta = 1, RacerMode mode = RacerMode::race);

} // namespace ratrec

#endif
