#include "ratrec/thiele.hpp"

#include <set>

#include "ratrec/errors.hpp"

namespace ratrec {

bool ThieleInterpolator::eval_cf(const FieldElement& t, FieldElement& out) const {
  // bottom-up evaluation; a vanishing partial denominator means the
  // interpolant is not defined at t in this representation
  FieldElement acc = bs_.back();
  for (std::size_t j = bs_.size() - 1; j-- > 0;) {
    if (acc.is_zero()) return false;
    acc = bs_[j] + (t - ts_[j]) / acc;
  }
  out = acc;
  return true;
}

ThieleInterpolator::Status ThieleInterpolator::feed(const FieldElement& t,
                                                    const FieldElement& value) {
  if (done_) return Status::done;
  for (const auto& x : ts_)
    if (x == t) return Status::bad_point; // repeated point carries no information
  ++probes_;

  if (bs_.empty()) {
    bs_.push_back(value);
    ts_.push_back(t);
    return Status::running;
  }

  FieldElement predicted(*f_, 0);
  if (eval_cf(t, predicted) && predicted == value) {
    if (++consistent_ >= eta_) {
      done_ = true;
      return Status::done;
    }
    return Status::running;
  }

  // extend the continued fraction by one reciprocal difference
  FieldElement rho = value;
  for (std::size_t j = 0; j + 1 < bs_.size() + 1 && j < bs_.size(); ++j) {
    FieldElement denom = rho - bs_[j];
    if (denom.is_zero()) {
      --probes_;
      return Status::bad_point; // degenerate configuration, resample t
    }
    rho = (t - ts_[j]) / denom;
  }
  bs_.push_back(rho);
  ts_.push_back(t);
  consistent_ = 0;
  return Status::running;
}

UnivariateRational ThieleInterpolator::result() const {
  const PrimeField& F = *f_;
  if (bs_.empty()) return {DensePolyFF(F), DensePolyFF(F, {1})};
  // back-substitution: N/D built from the innermost coefficient outwards
  DensePolyFF num(F, {bs_.back().value()});
  DensePolyFF den(F, {1});
  for (std::size_t j = bs_.size() - 1; j-- > 0;) {
    // b_j + (t - t_j) / (num/den) = (b_j * num + (t - t_j) * den) / num
    DensePolyFF lin(F);
    lin.set_coeff(0, -ts_[j]);
    lin.set_coeff(1, FieldElement(F, 1));
    DensePolyFF new_num = num.scaled(bs_[j]) + lin * den;
    den = num;
    num = new_num;
  }
  UnivariateRational r{num, den};
  r.normalize();
  return r;
}

UnivariateRational thiele_interpolate(
    const std::function<FieldElement(const FieldElement&)>& oracle, const PrimeField& f,
    Rng& rng, int eta, int max_retries, std::size_t* probe_count) {
  ThieleInterpolator th(f, eta);
  std::set<std::uint64_t> used;
  int failures = 0;
  std::size_t oracle_calls = 0;
  while (!th.done()) {
    FieldElement t = random_element(f, rng, 1);
    if (!used.insert(t.value()).second) continue;
    ThieleInterpolator::Status st;
    try {
      ++oracle_calls;
      st = th.feed(t, oracle(t));
    } catch (const ZeroDivisorError&) {
      st = ThieleInterpolator::Status::bad_point;
    }
    if (st == ThieleInterpolator::Status::bad_point) {
      if (++failures > max_retries)
        throw UnluckyEvaluationError("thiele_interpolate: too many degenerate points");
    } else {
      failures = 0;
    }
  }
  if (probe_count) *probe_count = oracle_calls;
  return th.result();
}

} // namespace ratrec
