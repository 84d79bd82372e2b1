#ifndef RATREC_HYBRID_HPP
#define RATREC_HYBRID_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ratrec/rational_function.hpp"
#include "ratrec/rng.hpp"
#include "ratrec/thiele.hpp"
#include "ratrec/zippel.hpp"

namespace ratrec {

// Additive variable shift fixing the normalization of the rational function.
struct Shift {
  std::vector<FieldElement> s; // one entry per variable, zero allowed

  static Shift zero(const PrimeField& f, std::uint32_t n_vars) {
    return Shift{std::vector<FieldElement>(n_vars, FieldElement(f, 0))};
  }
  bool is_zero() const {
    for (const auto& x : s)
      if (!x.is_zero()) return false;
    return true;
  }
};

// Evaluation access to one black-box function. Implementations batch the
// points through whatever worker pool or transport is available and count
// probes. ok[i] == false marks a pole (bad point, will be resampled).
class ProbeSource {
public:
  virtual ~ProbeSource() = default;
  virtual void evaluate(const std::vector<std::vector<FieldElement>>& points,
                        std::vector<FieldElement>& values,
                        std::vector<std::uint8_t>& ok) = 0;
};

// Adapter for plain callables (tests, factor scan internals).
class FunctionProbeSource : public ProbeSource {
public:
  using Fn = std::function<FieldElement(const std::vector<FieldElement>&)>;
  explicit FunctionProbeSource(Fn fn) : fn_(std::move(fn)) {}
  void evaluate(const std::vector<std::vector<FieldElement>>& points,
                std::vector<FieldElement>& values,
                std::vector<std::uint8_t>& ok) override;
  std::size_t probes = 0;

private:
  Fn fn_;
};

struct HybridOptions {
  int eta = 1;
  RacerMode racer = RacerMode::race;
  // Temporary pruning of the t-systems by solved coefficients. Disabled in
  // the dense baseline mode used for the Newton-only comparison.
  bool prune = true;
  std::vector<std::uint32_t> var_degree_bounds; // per variable, empty = unknown
  int max_retries = 16;
};

// Monomial support of a reconstructed function, reused by later primes so
// they only solve coefficient systems.
struct RationalSkeleton {
  std::uint32_t n_vars = 0;
  std::vector<ExpVec> num_terms;
  std::vector<ExpVec> den_terms;
};

// Univariate t-skeleton of the shifted function, discovered by the first
// Thiele interpolation.
struct TSkeleton {
  std::set<std::uint32_t> num_degrees;
  std::set<std::uint32_t> den_degrees;
  bool norm_on_den = true; // normalization coefficient: den t^0, else num t^0
};

// Finds a shift generating a constant term in numerator or denominator,
// preferring single-variable shifts tried from the last variable backward,
// then pairs, then the all-variables shift.
Shift scan_for_shift(ProbeSource& src, const PrimeField& f, std::uint32_t n_vars, Rng& rng,
                     int eta = 1, int max_retries = 16);

// Full hybrid-racer interpolation over one prime field. Returns the function
// in canonical form and, through `skeleton_out` / `tskeleton_out`, the
// support data later primes reuse.
RationalFunctionFF hybrid_racer(ProbeSource& src, const PrimeField& f, std::uint32_t n_vars,
                                const Shift& shift, Rng& rng, const HybridOptions& opts = {},
                                RationalSkeleton* skeleton_out = nullptr,
                                TSkeleton* tskeleton_out = nullptr);

// Coefficient-only solve over a new prime with a known skeleton; no structure
// discovery. The shift pattern must match the one used on the first prime
// (values are field-specific and drawn anew per prime).
RationalFunctionFF solve_with_skeleton(ProbeSource& src, const PrimeField& f,
                                       const RationalSkeleton& skeleton, const Shift& shift,
                                       Rng& rng, const HybridOptions& opts = {});

// CRT + rational reconstruction of per-prime results sharing one skeleton.
// Returns nullopt when any coefficient fails reconstruction (add a prime);
// throws UnluckyPrimeError on skeleton mismatch.
std::optional<RationalFunctionQ> lift_to_Q(
    const std::vector<std::pair<RationalFunctionFF, std::uint64_t>>& per_prime_results);

RationalSkeleton skeleton_of(const RationalFunctionFF& fn);

} // namespace ratrec

#endif
