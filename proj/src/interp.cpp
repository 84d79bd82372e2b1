#include <algorithm>
#include <stdexcept>

#include "ratrec/berlekamp_massey.hpp"
#include "ratrec/newton.hpp"
#include "ratrec/racer.hpp"
#include "ratrec/vandermonde.hpp"
#include "ratrec/zippel.hpp"

namespace ratrec {

// ---------------------------------------------------------------- Berlekamp-Massey

FieldElement BMState::update(const FieldElement& a_r) {
  const PrimeField& F = field();
  seq_.push_back(a_r);
  ++processed_;

  // discrepancy of the current generator against the new element
  FieldElement delta(F, 0);
  const int deg = std::max(lambda_.degree(), 0);
  for (int k = 0; k <= deg; ++k) {
    // ascending coefficient k pairs with a_{r-k}
    std::size_t idx = processed_ - static_cast<std::size_t>(k); // 1-based
    delta += lambda_.coeff(static_cast<std::size_t>(k)) * seq_[idx - 1];
  }

  if (delta.is_zero()) {
    ++zero_run_;
    // B <- z * B
    DensePolyFF zb(F);
    for (int i = 0; i <= b_.degree(); ++i) zb.set_coeff(static_cast<std::size_t>(i) + 1, b_.coeff(i));
    b_ = zb;
    return delta;
  }

  zero_run_ = 0;
  const FieldElement factor = delta / last_discrepancy_;
  DensePolyFF zb(F);
  for (int i = 0; i <= b_.degree(); ++i) zb.set_coeff(static_cast<std::size_t>(i) + 1, b_.coeff(i));
  DensePolyFF new_lambda = lambda_ - zb.scaled(factor);

  if (2 * length_ < processed_) {
    b_ = lambda_;
    lambda_ = new_lambda;
    length_ = processed_ - length_;
    last_discrepancy_ = delta;
  } else {
    lambda_ = new_lambda;
    b_ = zb;
  }
  return delta;
}

DensePolyFF bm_to_aux_poly(const BMState& state) {
  if (!state.hankel_complete())
    throw std::logic_error("bm_to_aux_poly: generator not yet determined");
  const PrimeField& F = state.field();
  const std::uint32_t L = state.length();
  DensePolyFF zeta(F);
  // zeta_k = lambda's ascending coefficient (L - k); lambda_T == 1 by construction
  for (std::uint32_t k = 0; k <= L; ++k) zeta.set_coeff(k, state.lambda().coeff(L - k));
  return zeta;
}

std::optional<std::vector<std::uint32_t>> bot_find_degrees(const DensePolyFF& zeta,
                                                           const FieldElement& y,
                                                           std::uint32_t degree_bound) {
  if (zeta.is_zero()) throw std::invalid_argument("bot_find_degrees: zero polynomial");
  const std::size_t want = static_cast<std::size_t>(zeta.degree());
  std::vector<std::uint32_t> roots;
  if (want == 0) return roots; // constant generator: the zero polynomial case
  FieldElement power(zeta.field(), 1); // y^0
  for (std::uint32_t i = 0; i <= degree_bound; ++i) {
    if (zeta.eval(power).is_zero()) {
      roots.push_back(i);
      if (roots.size() == want) return roots;
    }
    power = power * y;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Newton

NewtonInterpolator::Status NewtonInterpolator::update(const FieldElement& point,
                                                      const FieldElement& value) {
  if (done_) return Status::done;
  for (const auto& x : points_)
    if (x == point) throw std::invalid_argument("NewtonInterpolator: repeated probe point");

  // diagonal update: after step j the accumulator equals f[x0..x_{j-1}, x_new]
  FieldElement acc = value;
  for (std::size_t j = 0; j < points_.size(); ++j)
    acc = (acc - diffs_[j]) / (point - points_[j]);
  points_.push_back(point);
  diffs_.push_back(acc);

  if (points_.size() >= 2) {
    if (acc.is_zero()) {
      if (static_cast<int>(++zero_run_) >= eta_) done_ = true;
    } else {
      zero_run_ = 0;
    }
  }
  if (!done_ && bound_ && points_.size() == static_cast<std::size_t>(*bound_) + 1)
    done_ = true; // degree bound reached: the interpolant is already unique
  return done_ ? Status::done : Status::running;
}

DensePolyFF NewtonInterpolator::result() const {
  DensePolyFF p(*f_);
  if (diffs_.empty()) return p;
  std::size_t m = diffs_.size();
  while (m > 1 && diffs_[m - 1].is_zero()) --m; // trailing zero differences are redundant
  for (std::size_t j = m; j-- > 0;) {
    // p <- p * (z - x_j) + d_j
    DensePolyFF shifted(*f_);
    for (int i = 0; i <= p.degree(); ++i) {
      shifted.set_coeff(static_cast<std::size_t>(i) + 1, p.coeff(i));
      shifted.set_coeff(static_cast<std::size_t>(i),
                        shifted.coeff(i) - p.coeff(i) * points_[j]);
    }
    shifted.set_coeff(0, shifted.coeff(0) + diffs_[j]);
    p = shifted;
  }
  return p;
}

// ---------------------------------------------------------------- Vandermonde

std::vector<FieldElement> solve_shifted_vandermonde_nodes(std::span<const FieldElement> nodes,
                                                          std::span<const FieldElement> values) {
  if (nodes.size() != values.size())
    throw std::invalid_argument("shifted Vandermonde: size mismatch");
  const std::size_t T = nodes.size();
  if (T == 0) return {};
  const PrimeField& F = nodes[0].field();

  // master polynomial M(z) = prod (z - v_j), ascending coefficients
  std::vector<FieldElement> master(T + 1, FieldElement(F, 0));
  master[0] = FieldElement(F, 1);
  std::size_t len = 1;
  for (const auto& v : nodes) {
    master[len] = master[len - 1];
    for (std::size_t k = len - 1; k > 0; --k)
      master[k] = master[k - 1] - master[k] * v;
    master[0] = -(master[0] * v);
    ++len;
  }

  std::vector<FieldElement> out(T, FieldElement(F, 0));
  std::vector<FieldElement> q(T, FieldElement(F, 0));
  for (std::size_t j = 0; j < T; ++j) {
    const FieldElement& v = nodes[j];
    if (v.is_zero()) throw UnluckyEvaluationError("shifted Vandermonde: zero node");
    // synthetic division M / (z - v)
    q[T - 1] = master[T];
    for (std::size_t k = T - 1; k > 0; --k) q[k - 1] = master[k] + v * q[k];
    // Q_j(v) and the weighted value sum
    FieldElement qv(F, 0), num(F, 0), pw(F, 1);
    for (std::size_t k = 0; k < T; ++k) {
      qv += q[k] * pw;
      num += q[k] * values[k];
      pw = pw * v;
    }
    if (qv.is_zero())
      throw UnluckyEvaluationError("shifted Vandermonde: repeated node (cyclic group too small)");
    out[j] = num / qv / v; // the extra /v undoes the shift (probes start at power 1)
  }
  return out;
}

std::vector<FieldElement> solve_shifted_vandermonde(const std::vector<std::uint32_t>& degrees,
                                                    const FieldElement& y,
                                                    std::span<const FieldElement> values) {
  std::vector<FieldElement> nodes;
  nodes.reserve(degrees.size());
  for (auto d : degrees) nodes.push_back(y.pow(d));
  return solve_shifted_vandermonde_nodes(nodes, values);
}

std::vector<std::uint64_t> solve_dense(std::vector<std::uint64_t>& m,
                                       std::vector<std::uint64_t>& rhs,
                                       std::size_t n, const PrimeField& f) {
  const std::uint64_t p = f.modulus();
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return m[r * n + c]; };
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && at(piv, col) == 0) ++piv;
    if (piv == n) throw UnluckyEvaluationError("singular linear system");
    if (piv != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(at(piv, c), at(col, c));
      std::swap(rhs[piv], rhs[col]);
    }
    const std::uint64_t inv = detail::invmod(at(col, col), p);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (at(r, col) == 0) continue;
      const std::uint64_t factor = detail::mulmod(at(r, col), inv, p);
      at(r, col) = 0;
      for (std::size_t c = col + 1; c < n; ++c) {
        std::uint64_t sub = detail::mulmod(factor, at(col, c), p);
        at(r, c) = at(r, c) >= sub ? at(r, c) - sub : at(r, c) + p - sub;
      }
      std::uint64_t sub = detail::mulmod(factor, rhs[col], p);
      rhs[r] = rhs[r] >= sub ? rhs[r] - sub : rhs[r] + p - sub;
    }
  }
  std::vector<std::uint64_t> x(n, 0);
  for (std::size_t r = n; r-- > 0;) {
    std::uint64_t acc = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) {
      std::uint64_t sub = detail::mulmod(at(r, c), x[c], p);
      acc = acc >= sub ? acc - sub : acc + p - sub;
    }
    x[r] = detail::mulmod(acc, detail::invmod(at(r, r), p), p);
  }
  return x;
}

// ---------------------------------------------------------------- Racer

Racer::Racer(const PrimeField& f, const FieldElement& anchor_y, int eta,
             std::optional<std::uint32_t> degree_bound, RacerMode mode)
    : f_(&f), y_(anchor_y), eta_(eta), bound_(degree_bound), mode_(mode),
      bot_alive_(mode == RacerMode::race && degree_bound.has_value()), r_(0),
      next_point_(anchor_y), newton_(f, eta, degree_bound), bm_(f) {}

Racer::Status Racer::update(const FieldElement& value) {
  if (winner_) return Status::done;
  ++r_;
  const FieldElement point = next_point_;
  next_point_ = next_point_ * y_;

  if (bot_alive_) bm_.update(value);
  NewtonInterpolator::Status ns = newton_.update(point, value);

  // BOT is preferred on ties: it is checked first.
  if (bot_alive_ && bm_.zero_run() >= static_cast<std::uint32_t>(eta_) && bm_.hankel_complete()) {
    if (try_finish_bot()) return Status::done;
  }
  if (ns == NewtonInterpolator::Status::done) {
    finish_newton();
    return Status::done;
  }
  return Status::running;
}

bool Racer::try_finish_bot() {
  DensePolyFF zeta = bm_to_aux_poly(bm_);
  auto degrees = bot_find_degrees(zeta, y_, *bound_);
  if (!degrees) {
    // factorization failed: the early termination was accidental, fall back
    // to the Newton interpolation which always terminates
    bot_alive_ = false;
    return false;
  }
  const std::size_t T = degrees->size();
  std::vector<FieldElement> values(bm_.sequence().begin(), bm_.sequence().begin() + T);
  std::vector<FieldElement> coeffs = solve_shifted_vandermonde(*degrees, y_, values);
  result_.clear();
  for (std::size_t j = 0; j < T; ++j)
    if (!coeffs[j].is_zero()) result_.emplace_back((*degrees)[j], coeffs[j]);
  winner_ = Winner::bot;
  return true;
}

void Racer::finish_newton() {
  DensePolyFF p = newton_.result();
  result_.clear();
  for (int i = 0; i <= p.degree(); ++i) {
    FieldElement c = p.coeff(static_cast<std::size_t>(i));
    if (!c.is_zero()) result_.emplace_back(static_cast<std::uint32_t>(i), c);
  }
  winner_ = Winner::newton;
}

// ---------------------------------------------------------------- Zippel

ZippelInterpolator::ZippelInterpolator(const PrimeField& f, std::vector<FieldElement> anchors,
                                       std::uint32_t total_degree_bound,
                                       std::vector<std::uint32_t> var_degree_bounds,
                                       int eta, RacerMode mode)
    : f_(&f), anchors_(std::move(anchors)), total_bound_(total_degree_bound),
      var_bounds_(std::move(var_degree_bounds)), eta_(eta), mode_(mode) {
  if (!var_bounds_.empty() && var_bounds_.size() != anchors_.size())
    throw std::invalid_argument("ZippelInterpolator: per-variable bound count mismatch");
}

std::uint32_t ZippelInterpolator::racer_bound(const ExpVec& e) const {
  std::uint32_t used = total_degree(e);
  std::uint32_t b = total_bound_ >= used ? total_bound_ - used : 0;
  if (!var_bounds_.empty()) b = std::min(b, var_bounds_[stage_]);
  return b;
}

void ZippelInterpolator::seed(const FieldElement& value) {
  if (seeded_) throw std::logic_error("ZippelInterpolator: already seeded");
  seeded_ = true;
  if (anchors_.empty()) {
    // constant polynomial over zero active variables
    SparsePoly r(*f_, 0);
    r.add_term(ExpVec{}, value);
    result_ = std::move(r);
    done_ = true;
    return;
  }
  stage_ = 0;
  start_stage({{ExpVec(n_vars(), 0), value}});
}

void ZippelInterpolator::start_stage(std::vector<std::pair<ExpVec, FieldElement>> support_values) {
  if (support_values.empty()) {
    result_ = SparsePoly(*f_, n_vars());
    done_ = true;
    pending_.clear();
    return;
  }
  slots_.clear();
  step_ = 1;
  for (auto& [e, v] : support_values) {
    FieldElement node(*f_, 1);
    for (std::uint32_t t = 0; t < stage_; ++t)
      if (e[t] != 0) node = node * anchors_[t].pow(e[t]);
    Slot s{e, node, Racer(*f_, anchors_[stage_], eta_, racer_bound(e), mode_)};
    slots_.push_back(std::move(s));
  }
  // step 1 values come for free from the previous stage's coefficients
  for (std::size_t i = 0; i < slots_.size(); ++i) feed_slot(slots_[i], support_values[i].second);
  bool all_done = true;
  for (const auto& s : slots_)
    if (!s.finished) { all_done = false; break; }
  if (all_done) {
    finish_stage();
    return;
  }
  advance_step();
}

ZiOrder ZippelInterpolator::row_tuple(std::uint32_t row) const {
  ZiOrder w(n_vars(), 1);
  for (std::uint32_t t = 0; t < stage_; ++t) w[t] = row;
  w[stage_] = step_;
  return w;
}

void ZippelInterpolator::advance_step() {
  ++step_;
  active_rows_.clear();
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (!slots_[i].finished) active_rows_.push_back(static_cast<std::uint32_t>(i));
  const std::size_t rows = active_rows_.size();
  pending_.clear();
  row_values_.assign(rows, std::nullopt);
  rows_missing_ = rows;
  for (std::uint32_t i = 1; i <= rows; ++i) pending_.push_back(row_tuple(i));
}

void ZippelInterpolator::feed(const ZiOrder& w, const FieldElement& value) {
  if (done_) throw std::logic_error("ZippelInterpolator: already done");
  // identify the row index from the tuple
  if (w.size() != n_vars() || w[stage_] != step_)
    throw std::invalid_argument("ZippelInterpolator: unexpected tuple");
  std::uint32_t row = stage_ == 0 ? 1 : w[0];
  if (row == 0 || row > row_values_.size() || row_values_[row - 1].has_value())
    throw std::invalid_argument("ZippelInterpolator: unexpected tuple row");
  row_values_[row - 1] = value;
  if (--rows_missing_ > 0) {
    pending_.erase(std::remove(pending_.begin(), pending_.end(), w), pending_.end());
    return;
  }

  std::vector<FieldElement> probe_values;
  probe_values.reserve(row_values_.size());
  for (auto& v : row_values_) probe_values.push_back(*v);
  process_step_values(probe_values);
}

void ZippelInterpolator::process_step_values(const std::vector<FieldElement>& probe_values) {
  const FieldElement zs = anchors_[stage_].pow(step_);
  const std::size_t rows = active_rows_.size();

  // subtract the already finished racers, then solve for the active ones
  std::vector<FieldElement> reduced = probe_values;
  for (const auto& s : slots_) {
    if (!s.finished) continue;
    FieldElement cz(*f_, 0);
    for (const auto& [d, c] : s.stage_poly) cz += c * zs.pow(d);
    if (cz.is_zero()) continue;
    FieldElement node_pow = s.node;
    for (std::size_t i = 0; i < rows; ++i) {
      reduced[i] -= cz * node_pow;
      node_pow = node_pow * s.node;
    }
  }

  std::vector<FieldElement> coeffs;
  if (rows == 1 && slots_[active_rows_[0]].node == FieldElement(*f_, 1)) {
    coeffs = {reduced[0]};
  } else {
    std::vector<FieldElement> nodes;
    nodes.reserve(rows);
    for (auto idx : active_rows_) nodes.push_back(slots_[idx].node);
    coeffs = solve_shifted_vandermonde_nodes(nodes, reduced);
  }

  std::vector<std::uint32_t> order = active_rows_;
  for (std::size_t i = 0; i < order.size(); ++i) feed_slot(slots_[order[i]], coeffs[i]);

  bool all_done = true;
  for (const auto& s : slots_)
    if (!s.finished) { all_done = false; break; }
  if (all_done)
    finish_stage();
  else
    advance_step();
}

void ZippelInterpolator::feed_slot(Slot& slot, const FieldElement& value) {
  if (slot.finished) return;
  if (slot.racer.update(value) == Racer::Status::done) {
    slot.finished = true;
    slot.stage_poly = slot.racer.result();
  }
}

void ZippelInterpolator::finish_stage() {
  std::vector<std::pair<ExpVec, FieldElement>> next;
  for (const auto& s : slots_) {
    for (const auto& [d, c] : s.stage_poly) {
      ExpVec e = s.monomial;
      e[stage_] = d;
      next.emplace_back(std::move(e), c);
    }
  }
  if (stage_ + 1 == n_vars()) {
    SparsePoly r(*f_, n_vars());
    for (auto& [e, c] : next) r.add_term(e, c);
    result_ = std::move(r);
    done_ = true;
    pending_.clear();
    slots_.clear();
    return;
  }
  ++stage_;
  start_stage(std::move(next));
}

const SparsePoly& ZippelInterpolator::result() const {
  if (!done_) throw std::logic_error("ZippelInterpolator: not finished");
  return *result_;
}

SparsePoly zippel_interpolate(
    const std::function<FieldElement(const std::vector<FieldElement>&)>& oracle,
    const PrimeField& f, std::uint32_t n_vars, std::vector<FieldElement> anchors,
    std::uint32_t total_degree_bound, std::vector<std::uint32_t> var_degree_bounds,
    int eta, RacerMode mode) {
  if (anchors.size() != n_vars)
    throw std::invalid_argument("zippel_interpolate: anchor count mismatch");
  ZippelInterpolator zi(f, anchors, total_degree_bound, std::move(var_degree_bounds), eta, mode);
  auto eval_at = [&](const ZiOrder& w) {
    std::vector<FieldElement> point;
    point.reserve(n_vars);
    for (std::uint32_t i = 0; i < n_vars; ++i) point.push_back(anchors[i].pow(w[i]));
    return oracle(point);
  };
  zi.seed(eval_at(ZiOrder(n_vars, 1)));
  while (!zi.done()) {
    ZiOrder w = zi.pending().front();
    zi.feed(w, eval_at(w));
  }
  return zi.result();
}

} // namespace ratrec
