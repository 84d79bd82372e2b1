#include "ratrec/hybrid.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ratrec/errors.hpp"
#include "ratrec/vandermonde.hpp"

namespace ratrec {

void FunctionProbeSource::evaluate(const std::vector<std::vector<FieldElement>>& points,
                                   std::vector<FieldElement>& values,
                                   std::vector<std::uint8_t>& ok) {
  values.clear();
  ok.clear();
  for (const auto& pt : points) {
    ++probes;
    try {
      values.push_back(fn_(pt));
      ok.push_back(1);
    } catch (const ZeroDivisorError&) {
      values.push_back(FieldElement(pt.empty() ? prime_sequence(0) : pt[0].field(), 0));
      ok.push_back(0);
    }
  }
}

namespace {

struct CoeffKey {
  bool num; // numerator side
  std::uint32_t deg;
  bool operator<(const CoeffKey& o) const {
    if (num != o.num) return num && !o.num; // numerator first
    return deg < o.deg;
  }
  bool operator==(const CoeffKey& o) const { return num == o.num && deg == o.deg; }
};

FieldElement binom(const PrimeField& f, std::uint32_t n, std::uint32_t k) {
  FieldElement c(f, 1);
  for (std::uint32_t i = 1; i <= k; ++i)
    c = c * FieldElement(f, n - k + i) / FieldElement(f, i);
  return c;
}

// Expansion of the homogenized true coefficient under z -> t*z + s with
// z_1 = 1: adds the coefficient-of-t^k polynomials (k < t_degree) into `out`.
// `poly` lives in the reduced variables z_2..z_n; the implied z_1 exponent of
// a term is t_degree - total_degree.
void accumulate_shift_monomials(const SparsePoly& poly, std::uint32_t t_degree,
                                const Shift& shift,
                                std::map<std::uint32_t, SparsePoly>& out) {
  const PrimeField& F = poly.field();
  const std::uint32_t rn = poly.n_vars();
  struct Piece {
    std::uint32_t tpow;
    FieldElement coeff;
    ExpVec mono;
  };
  for (const auto& [e, cv] : poly.terms()) {
    const std::uint32_t a = t_degree - total_degree(e); // z_1 exponent
    std::vector<Piece> pieces{{0, FieldElement(F, cv), ExpVec(rn, 0)}};
    auto convolve = [&](std::uint32_t exp, const FieldElement& s, int var /* -1 = z1 */) {
      if (exp == 0) return;
      if (s.is_zero()) {
        for (auto& p : pieces) {
          p.tpow += exp;
          if (var >= 0) p.mono[static_cast<std::size_t>(var)] = exp;
        }
        return;
      }
      std::vector<Piece> next;
      next.reserve(pieces.size() * (exp + 1));
      for (const auto& p : pieces) {
        for (std::uint32_t b = 0; b <= exp; ++b) {
          Piece q = p;
          q.tpow += b;
          q.coeff = q.coeff * binom(F, exp, b) * s.pow(exp - b);
          if (var >= 0) q.mono[static_cast<std::size_t>(var)] = b;
          next.push_back(std::move(q));
        }
      }
      pieces = std::move(next);
    };
    convolve(a, shift.s[0], -1);
    for (std::uint32_t i = 0; i < rn; ++i) convolve(e[i], shift.s[i + 1], static_cast<int>(i));
    for (const auto& p : pieces) {
      if (p.tpow >= t_degree) continue; // the t^d piece is the term itself
      auto it = out.find(p.tpow);
      if (it == out.end()) it = out.emplace(p.tpow, SparsePoly(F, rn)).first;
      it->second.add_term(p.mono, p.coeff);
    }
  }
}

// Draws distinct nonzero t values, probes f(t*z + s) for each, and solves the
// linear system for the unsolved coefficient values at this z-tuple.
std::map<CoeffKey, std::uint64_t> solve_tuple_system(
    ProbeSource& src, const PrimeField& F, const Shift& shift,
    const std::vector<FieldElement>& z_reduced, const std::vector<CoeffKey>& unknowns,
    bool norm_on_den,
    const std::function<FieldElement(const CoeffKey&)>& solved_value, // may be null
    const std::vector<CoeffKey>& solved_keys, Rng& rng, int max_retries) {
  const std::size_t eqs = unknowns.size();
  const std::uint32_t n = static_cast<std::uint32_t>(z_reduced.size()) + 1;

  std::vector<FieldElement> ts, Fs;
  std::set<std::uint64_t> used{0};
  int failures = 0;
  while (ts.size() < eqs) {
    std::size_t want = eqs - ts.size();
    std::vector<FieldElement> batch_t;
    std::vector<std::vector<FieldElement>> points;
    while (batch_t.size() < want) {
      FieldElement t = random_element(F, rng, 1);
      if (!used.insert(t.value()).second) continue;
      batch_t.push_back(t);
      std::vector<FieldElement> pt(n, FieldElement(F, 0));
      pt[0] = t + shift.s[0];
      for (std::uint32_t i = 1; i < n; ++i) pt[i] = t * z_reduced[i - 1] + shift.s[i];
      points.push_back(std::move(pt));
    }
    std::vector<FieldElement> values;
    std::vector<std::uint8_t> ok;
    src.evaluate(points, values, ok);
    for (std::size_t i = 0; i < batch_t.size(); ++i) {
      if (ok[i]) {
        ts.push_back(batch_t[i]);
        Fs.push_back(values[i]);
      } else if (++failures > max_retries) {
        throw UnluckyEvaluationError("tuple system: too many bad evaluation points");
      }
    }
  }

  std::uint32_t max_deg = 0;
  for (const auto& k : unknowns) max_deg = std::max(max_deg, k.deg);
  for (const auto& k : solved_keys) max_deg = std::max(max_deg, k.deg);

  std::vector<std::uint64_t> m(eqs * eqs), rhs(eqs);
  std::vector<FieldElement> tp(max_deg + 1, FieldElement(F, 1));
  for (std::size_t r = 0; r < eqs; ++r) {
    for (std::uint32_t d = 1; d <= max_deg; ++d) tp[d] = tp[d - 1] * ts[r];
    for (std::size_t c = 0; c < eqs; ++c) {
      const CoeffKey& k = unknowns[c];
      FieldElement cell = k.num ? tp[k.deg] : -(Fs[r] * tp[k.deg]);
      m[r * eqs + c] = cell.value();
    }
    FieldElement acc = norm_on_den ? Fs[r] : -FieldElement(F, 1);
    for (const auto& k : solved_keys) {
      FieldElement v = solved_value(k);
      if (k.num)
        acc -= v * tp[k.deg];
      else
        acc += Fs[r] * v * tp[k.deg];
    }
    rhs[r] = acc.value();
  }

  std::vector<std::uint64_t> x = solve_dense(m, rhs, eqs, F);
  std::map<CoeffKey, std::uint64_t> out;
  for (std::size_t c = 0; c < eqs; ++c) out.emplace(unknowns[c], x[c]);
  return out;
}

// Thiele interpolation of f(t*z + s) along the line through the anchors
// (with z_1 = 1); reports probe points through src.
UnivariateRational thiele_on_line(ProbeSource& src, const PrimeField& F,
                                  const std::vector<FieldElement>& z_reduced,
                                  const Shift& shift, Rng& rng, int eta, int max_retries) {
  const std::uint32_t n = static_cast<std::uint32_t>(z_reduced.size()) + 1;
  auto oracle = [&](const FieldElement& t) {
    std::vector<std::vector<FieldElement>> pts(1, std::vector<FieldElement>(n, FieldElement(F, 0)));
    pts[0][0] = t + shift.s[0];
    for (std::uint32_t i = 1; i < n; ++i) pts[0][i] = t * z_reduced[i - 1] + shift.s[i];
    std::vector<FieldElement> values;
    std::vector<std::uint8_t> ok;
    src.evaluate(pts, values, ok);
    if (!ok[0]) throw ZeroDivisorError(0);
    return values[0];
  };
  return thiele_interpolate(oracle, F, rng, eta, max_retries);
}

// ------------------------------------------------------------------ engine

class HybridEngine {
public:
  HybridEngine(ProbeSource& src, const PrimeField& f, std::uint32_t n_vars, const Shift& shift,
               Rng& rng, const HybridOptions& opts)
      : src_(src), f_(f), n_(n_vars), shift_(shift), rng_(rng), opts_(opts),
        rn_(n_vars - 1) {}

  RationalFunctionFF run(RationalSkeleton* skeleton_out, TSkeleton* tskeleton_out);

private:
  struct State {
    enum class Mode { constant, dense, sparse };
    Mode mode = Mode::dense;
    bool solved = false;
    std::unique_ptr<ZippelInterpolator> zi;
    std::optional<FieldElement> const_value;       // deg-0 contaminated value
    std::optional<SparsePoly> c_poly;              // dense result incl. shift effects
    std::optional<SparsePoly> true_poly;           // shift effects removed
    bool expanded = false;
  };

  std::vector<FieldElement> reduced_point(const ZiOrder& w) const {
    std::vector<FieldElement> z;
    z.reserve(rn_);
    for (std::uint32_t i = 0; i < rn_; ++i) z.push_back(anchors_[i].pow(w[i]));
    return z;
  }

  FieldElement contrib_at(const CoeffKey& k, const std::vector<FieldElement>& z) const {
    auto& side = contrib(k.num);
    auto it = side.find(k.deg);
    if (it == side.end()) return FieldElement(f_, 0);
    return it->second.eval(z);
  }
  std::map<std::uint32_t, SparsePoly>& contrib(bool num) { return num ? num_contrib_ : den_contrib_; }
  const std::map<std::uint32_t, SparsePoly>& contrib(bool num) const {
    return num ? num_contrib_ : den_contrib_;
  }

  // c-value of a solved coefficient at a tuple (includes shift effects).
  FieldElement solved_c_value(const CoeffKey& k, const std::vector<FieldElement>& z) const {
    const State& st = states_.at(k);
    assert(st.solved);
    switch (st.mode) {
      case State::Mode::constant: return *st.const_value;
      case State::Mode::dense: return st.c_poly->eval(z);
      case State::Mode::sparse: return st.true_poly->eval(z) + contrib_at(k, z);
    }
    throw std::logic_error("unreachable");
  }

  void make_interpolating_state(const CoeffKey& k, bool sparse, const FieldElement& seed_value) {
    State st;
    st.mode = sparse ? State::Mode::sparse : State::Mode::dense;
    std::vector<std::uint32_t> vb;
    if (!opts_.var_degree_bounds.empty())
      vb.assign(opts_.var_degree_bounds.begin() + 1, opts_.var_degree_bounds.end());
    st.zi = std::make_unique<ZippelInterpolator>(f_, anchors_, k.deg, vb, opts_.eta, opts_.racer);
    st.zi->seed(seed_value);
    states_[k] = std::move(st);
    if (states_[k].zi->done()) finish_state(k);
  }

  void feed_state(const CoeffKey& k, const ZiOrder& w, const std::map<CoeffKey, std::uint64_t>& vals) {
    State& st = states_[k];
    auto it = vals.find(k);
    if (it == vals.end())
      throw std::logic_error("hybrid: cached tuple lacks a value for an unsolved coefficient");
    FieldElement v(f_, it->second);
    if (st.mode == State::Mode::sparse) v = v - contrib_at(k, reduced_point(w));
    st.zi->feed(w, v);
    if (st.zi->done()) finish_state(k);
  }

  void finish_state(const CoeffKey& k) {
    State& st = states_[k];
    st.solved = true;
    if (st.mode == State::Mode::sparse)
      st.true_poly = st.zi->result();
    else
      st.c_poly = st.zi->result();
    st.zi.reset();
    maybe_restart(k);
  }

  std::uint32_t count_unsolved(bool num_side, std::uint32_t above) const {
    std::uint32_t c = 0;
    for (const auto& [k, st] : states_)
      if (k.num == num_side && !st.solved && k.deg > above) ++c;
    return c;
  }

  // Resolves true polynomials and shift expansions for every solved degree
  // above `floor` on one side, descending.
  void finalize_above(bool num_side, std::int64_t floor) {
    std::vector<std::uint32_t> degs;
    for (const auto& [k, st] : states_)
      if (k.num == num_side && static_cast<std::int64_t>(k.deg) > floor) degs.push_back(k.deg);
    std::sort(degs.rbegin(), degs.rend());
    for (auto d : degs) {
      CoeffKey k{num_side, d};
      State& st = states_[k];
      assert(st.solved);
      if (!st.true_poly) {
        SparsePoly t = st.mode == State::Mode::constant
                           ? SparsePoly(f_, rn_)
                           : *st.c_poly;
        if (st.mode == State::Mode::constant && !st.const_value->is_zero())
          t.add_term(ExpVec(rn_, 0), *st.const_value);
        auto it = contrib(num_side).find(d);
        if (it != contrib(num_side).end()) t = t - it->second;
        st.true_poly = std::move(t);
      }
      if (!st.expanded && d > 0 && !shift_.is_zero()) {
        accumulate_shift_monomials(*st.true_poly, d, shift_, contrib(num_side));
        st.expanded = true;
      }
    }
  }

  // After the highest unsolved coefficient of a side terminates, abort the
  // next-to-highest and restart it sparsely with the shift monomials of all
  // higher degree terms subtracted numerically.
  void maybe_restart(const CoeffKey& done_key) {
    if (shift_.is_zero() || !opts_.prune) return;
    if (count_unsolved(done_key.num, done_key.deg) > 0) return; // not the highest
    // highest unsolved below
    std::int64_t next = -1;
    for (const auto& [k, st] : states_)
      if (k.num == done_key.num && !st.solved &&
          static_cast<std::int64_t>(k.deg) > next)
        next = k.deg;
    if (next < 0) return;
    CoeffKey lk{done_key.num, static_cast<std::uint32_t>(next)};
    finalize_above(done_key.num, next);
    auto it = contrib(done_key.num).find(lk.deg);
    if (it == contrib(done_key.num).end() || it->second.is_zero()) return; // nothing to subtract
    State& st = states_[lk];
    if (st.mode == State::Mode::sparse) return; // already restarted
    FieldElement seed(f_, cache_.at(w0_).at(lk));
    seed = seed - contrib_at(lk, reduced_point(w0_));
    st.zi.reset();
    make_interpolating_state(lk, true, seed);
  }

  void t_system(const ZiOrder& w) {
    std::vector<CoeffKey> unknowns, solved;
    for (const auto& [k, st] : states_) {
      if (!opts_.prune || !st.solved)
        unknowns.push_back(k);
      else
        solved.push_back(k);
    }
    std::vector<FieldElement> z = reduced_point(w);
    std::map<CoeffKey, FieldElement> solved_vals;
    for (const auto& k : solved) solved_vals.emplace(k, solved_c_value(k, z));
    auto lookup = [&](const CoeffKey& k) { return solved_vals.at(k); };
    cache_[w] = solve_tuple_system(src_, f_, shift_, z, unknowns, tsk_.norm_on_den, lookup,
                                   solved, rng_, opts_.max_retries);
  }

  bool deliver_cached() {
    for (auto& [k, st] : states_) {
      if (st.solved) continue;
      std::vector<ZiOrder> pending = st.zi->pending();
      for (const auto& w : pending) {
        auto itc = cache_.find(w);
        if (itc == cache_.end()) continue;
        feed_state(k, w, itc->second);
        return true;
      }
    }
    return false;
  }

  ProbeSource& src_;
  const PrimeField& f_;
  std::uint32_t n_;
  Shift shift_;
  Rng& rng_;
  HybridOptions opts_;
  std::uint32_t rn_;
  std::vector<FieldElement> anchors_;
  TSkeleton tsk_;
  ZiOrder w0_;
  std::map<CoeffKey, State> states_;
  std::map<std::uint32_t, SparsePoly> num_contrib_, den_contrib_;
  std::map<ZiOrder, std::map<CoeffKey, std::uint64_t>> cache_;
};

RationalFunctionFF HybridEngine::run(RationalSkeleton* skeleton_out, TSkeleton* tskeleton_out) {
  // anchors for z_2..z_n; z_1 is fixed to one and restored by homogenization
  anchors_.clear();
  for (std::uint32_t i = 0; i < rn_; ++i) anchors_.push_back(random_element(f_, rng_, 2));
  w0_ = ZiOrder(rn_, 1);

  UnivariateRational tform =
      thiele_on_line(src_, f_, reduced_point(w0_), shift_, rng_, opts_.eta, opts_.max_retries);

  if (tform.num.is_zero()) {
    SparsePoly zn(f_, n_), zd(f_, n_);
    zd.add_term(ExpVec(n_, 0), FieldElement(f_, 1));
    if (skeleton_out) *skeleton_out = RationalSkeleton{n_, {}, {}};
    if (tskeleton_out) *tskeleton_out = TSkeleton{};
    return RationalFunctionFF(std::move(zn), std::move(zd));
  }

  // normalize on the constant term: denominator if present, else numerator
  if (!tform.den.coeff(0).is_zero()) {
    tsk_.norm_on_den = true;
    FieldElement inv = tform.den.coeff(0).inv();
    tform.num = tform.num.scaled(inv);
    tform.den = tform.den.scaled(inv);
  } else if (!tform.num.coeff(0).is_zero()) {
    tsk_.norm_on_den = false;
    FieldElement inv = tform.num.coeff(0).inv();
    tform.num = tform.num.scaled(inv);
    tform.den = tform.den.scaled(inv);
  } else {
    throw UnluckyEvaluationError("hybrid: shift generates no constant term");
  }
  for (int i = 0; i <= tform.num.degree(); ++i)
    if (!tform.num.coeff(static_cast<std::size_t>(i)).is_zero())
      tsk_.num_degrees.insert(static_cast<std::uint32_t>(i));
  for (int i = 0; i <= tform.den.degree(); ++i)
    if (!tform.den.coeff(static_cast<std::size_t>(i)).is_zero())
      tsk_.den_degrees.insert(static_cast<std::uint32_t>(i));
  if (tskeleton_out) *tskeleton_out = tsk_;

  // coefficient states; the t^0 coefficients are z-independent and solved at
  // once (the normalization side's is identically 1 and carried implicitly)
  auto& cache0 = cache_[w0_];
  auto setup_side = [&](bool num_side, const DensePolyFF& poly) {
    for (int i = 0; i <= poly.degree(); ++i) {
      FieldElement c = poly.coeff(static_cast<std::size_t>(i));
      if (c.is_zero()) continue;
      CoeffKey k{num_side, static_cast<std::uint32_t>(i)};
      if (i == 0 && num_side == !tsk_.norm_on_den) {
        // normalization coefficient, value 1, not a state
        continue;
      }
      cache0.emplace(k, c.value());
      if (i == 0) {
        State st;
        st.mode = State::Mode::constant;
        st.solved = true;
        st.const_value = c;
        states_[k] = std::move(st);
      } else {
        make_interpolating_state(k, false, c);
      }
    }
  };
  setup_side(true, tform.num);
  setup_side(false, tform.den);

  while (true) {
    if (deliver_cached()) continue;
    // choose the next tuple to probe: prefer the stage variable with the
    // largest index, i.e. the coefficient closest to completion
    const ZiOrder* best_w = nullptr;
    int best_stage = -1;
    for (const auto& [k, st] : states_) {
      if (st.solved) continue;
      int stage = st.zi->current_stage_var();
      for (const auto& w : st.zi->pending()) {
        if (cache_.count(w)) continue;
        if (stage > best_stage || (stage == best_stage && best_w && w < *best_w)) {
          best_stage = stage;
          best_w = &w;
        }
      }
    }
    if (!best_w) break;
    t_system(*best_w);
  }

  finalize_above(true, -1);
  finalize_above(false, -1);

  SparsePoly num_full(f_, n_), den_full(f_, n_);
  for (const auto& [k, st] : states_) {
    SparsePoly h = homogenize(*st.true_poly, k.deg);
    if (k.num)
      num_full = num_full + h;
    else
      den_full = den_full + h;
  }
  // the implicit normalization coefficient is the constant 1 at t-degree 0
  {
    SparsePoly one(f_, rn_);
    one.add_term(ExpVec(rn_, 0), FieldElement(f_, 1));
    // its true part is 1 minus the accumulated shift monomials at degree 0
    auto& side = contrib(!tsk_.norm_on_den);
    auto it = side.find(0);
    SparsePoly t = it == side.end() ? one : one - it->second;
    SparsePoly h = homogenize(t, 0);
    // degree-0 homogenization of a constant: plain constant term
    if (tsk_.norm_on_den)
      den_full = den_full + h;
    else
      num_full = num_full + h;
  }

  if (den_full.is_zero())
    throw UnluckyEvaluationError("hybrid: denominator vanished during assembly");
  RationalFunctionFF out(std::move(num_full), std::move(den_full));
  if (skeleton_out) *skeleton_out = skeleton_of(out);
  return out;
}

} // namespace

RationalSkeleton skeleton_of(const RationalFunctionFF& fn) {
  RationalSkeleton sk;
  sk.n_vars = fn.n_vars();
  for (const auto& [e, c] : fn.num().terms()) sk.num_terms.push_back(e);
  for (const auto& [e, c] : fn.den().terms()) sk.den_terms.push_back(e);
  return sk;
}

// ------------------------------------------------------------- entry points

namespace {

// Univariate case: one Thiele interpolation of f itself, no shift machinery.
RationalFunctionFF univariate_reconstruct(ProbeSource& src, const PrimeField& f, Rng& rng,
                                          const HybridOptions& opts) {
  auto oracle = [&](const FieldElement& t) {
    std::vector<std::vector<FieldElement>> pts{{t}};
    std::vector<FieldElement> values;
    std::vector<std::uint8_t> ok;
    src.evaluate(pts, values, ok);
    if (!ok[0]) throw ZeroDivisorError(0);
    return values[0];
  };
  UnivariateRational u = thiele_interpolate(oracle, f, rng, opts.eta, opts.max_retries);
  SparsePoly num(f, 1), den(f, 1);
  for (int i = 0; i <= u.num.degree(); ++i)
    num.add_term(ExpVec{static_cast<std::uint32_t>(i)}, u.num.coeff(static_cast<std::size_t>(i)));
  for (int i = 0; i <= u.den.degree(); ++i)
    den.add_term(ExpVec{static_cast<std::uint32_t>(i)}, u.den.coeff(static_cast<std::size_t>(i)));
  if (num.is_zero()) {
    SparsePoly zd(f, 1);
    zd.add_term(ExpVec{0}, FieldElement(f, 1));
    return RationalFunctionFF(std::move(num), std::move(zd));
  }
  return RationalFunctionFF(std::move(num), std::move(den));
}

} // namespace

RationalFunctionFF hybrid_racer(ProbeSource& src, const PrimeField& f, std::uint32_t n_vars,
                                const Shift& shift, Rng& rng, const HybridOptions& opts,
                                RationalSkeleton* skeleton_out, TSkeleton* tskeleton_out) {
  if (n_vars == 0) throw std::invalid_argument("hybrid_racer: at least one variable required");
  if (shift.s.size() != n_vars) throw std::invalid_argument("hybrid_racer: shift arity mismatch");
  if (n_vars == 1) {
    RationalFunctionFF out = univariate_reconstruct(src, f, rng, opts);
    if (skeleton_out) *skeleton_out = skeleton_of(out);
    if (tskeleton_out) *tskeleton_out = TSkeleton{};
    return out;
  }
  HybridEngine engine(src, f, n_vars, shift, rng, opts);
  return engine.run(skeleton_out, tskeleton_out);
}

Shift scan_for_shift(ProbeSource& src, const PrimeField& f, std::uint32_t n_vars, Rng& rng,
                     int eta, int max_retries) {
  if (n_vars <= 1) return Shift::zero(f, n_vars);

  // candidate shifted-variable sets: none, singles from the last variable
  // backward, pairs, then all variables
  std::vector<std::vector<std::uint32_t>> candidates;
  candidates.push_back({});
  for (std::uint32_t i = n_vars; i-- > 0;) candidates.push_back({i});
  for (std::uint32_t hi = n_vars; hi-- > 1;)
    for (std::uint32_t lo = hi; lo-- > 0;) candidates.push_back({lo, hi});
  {
    std::vector<std::uint32_t> all;
    for (std::uint32_t i = 0; i < n_vars; ++i) all.push_back(i);
    candidates.push_back(all);
  }

  for (const auto& cand : candidates) {
    const bool is_all = cand.size() == n_vars;
    const int value_attempts = is_all ? 4 : 1;
    for (int attempt = 0; attempt < value_attempts; ++attempt) {
      Shift s = Shift::zero(f, n_vars);
      for (auto i : cand) s.s[i] = random_element(f, rng, 1);
      // constant term in the denominator <=> f has no pole at the shift point
      std::vector<std::vector<FieldElement>> pts{s.s};
      std::vector<FieldElement> values;
      std::vector<std::uint8_t> ok;
      src.evaluate(pts, values, ok);
      if (ok[0]) return s;
      // a pole may still hide a numerator constant; settle it with a
      // univariate t-interpolation along a random line
      std::vector<FieldElement> z;
      for (std::uint32_t i = 1; i < n_vars; ++i) z.push_back(random_element(f, rng, 2));
      try {
        UnivariateRational u = thiele_on_line(src, f, z, s, rng, eta, max_retries);
        if (!u.num.is_zero() && !u.num.coeff(0).is_zero()) return s;
      } catch (const UnluckyEvaluationError&) {
        // degenerate line; treat as a failed candidate
      }
    }
  }
  throw UnluckyEvaluationError("scan_for_shift: no normalizing shift found");
}

RationalFunctionFF solve_with_skeleton(ProbeSource& src, const PrimeField& f,
                                       const RationalSkeleton& skeleton, const Shift& shift,
                                       Rng& rng, const HybridOptions& opts) {
  const std::uint32_t n = skeleton.n_vars;
  if (n == 1) return univariate_reconstruct(src, f, rng, opts);
  if (skeleton.num_terms.empty()) {
    SparsePoly zn(f, n), zd(f, n);
    zd.add_term(ExpVec(n, 0), FieldElement(f, 1));
    return RationalFunctionFF(std::move(zn), std::move(zd));
  }
  const std::uint32_t rn = n - 1;

  // group true supports by total degree, in reduced (z_2..z_n) form
  auto group = [&](const std::vector<ExpVec>& terms) {
    std::map<std::uint32_t, std::vector<ExpVec>> by_deg;
    for (const auto& e : terms) {
      ExpVec red(e.begin() + 1, e.end());
      by_deg[total_degree(e)].push_back(std::move(red));
    }
    return by_deg;
  };
  std::map<std::uint32_t, std::vector<ExpVec>> num_by_deg = group(skeleton.num_terms);
  std::map<std::uint32_t, std::vector<ExpVec>> den_by_deg = group(skeleton.den_terms);

  // t-degrees where a (possibly shift-contaminated) coefficient can live
  auto tdegrees = [&](const std::map<std::uint32_t, std::vector<ExpVec>>& by_deg,
                      const std::vector<ExpVec>& full_terms) {
    std::set<std::uint32_t> degs;
    for (const auto& [d, sup] : by_deg) degs.insert(d);
    if (!shift.is_zero()) {
      std::uint32_t shadow_top = 0;
      for (const auto& e : full_terms) {
        bool touched = e[0] > 0 && !shift.s[0].is_zero();
        for (std::uint32_t i = 1; i < n && !touched; ++i)
          touched = e[i] > 0 && !shift.s[i].is_zero();
        if (touched) shadow_top = std::max(shadow_top, total_degree(e));
      }
      for (std::uint32_t d = 0; d < shadow_top; ++d) degs.insert(d);
    }
    return degs;
  };
  std::set<std::uint32_t> num_degs = tdegrees(num_by_deg, skeleton.num_terms);
  std::set<std::uint32_t> den_degs = tdegrees(den_by_deg, skeleton.den_terms);

  // normalization side for this prime's shift values
  bool norm_on_den;
  {
    std::vector<std::vector<FieldElement>> pts{shift.s};
    std::vector<FieldElement> values;
    std::vector<std::uint8_t> ok;
    src.evaluate(pts, values, ok);
    norm_on_den = ok[0] != 0;
  }
  if (norm_on_den)
    den_degs.insert(0);
  else
    num_degs.insert(0);

  std::vector<CoeffKey> unknowns;
  for (auto d : num_degs)
    if (norm_on_den || d != 0) unknowns.push_back(CoeffKey{true, d});
  for (auto d : den_degs)
    if (!norm_on_den || d != 0) unknowns.push_back(CoeffKey{false, d});
  std::sort(unknowns.begin(), unknowns.end());

  std::size_t t_max = 1;
  for (const auto& [d, sup] : num_by_deg) t_max = std::max(t_max, sup.size());
  for (const auto& [d, sup] : den_by_deg) t_max = std::max(t_max, sup.size());

  std::vector<FieldElement> anchors;
  for (std::uint32_t i = 0; i < rn; ++i) anchors.push_back(random_element(f, rng, 2));

  // tuple values at the diagonal power tuples r = 1..t_max
  std::vector<std::vector<FieldElement>> zpts;
  std::vector<std::map<CoeffKey, std::uint64_t>> vals;
  for (std::size_t r = 1; r <= t_max; ++r) {
    std::vector<FieldElement> z;
    for (std::uint32_t i = 0; i < rn; ++i) z.push_back(anchors[i].pow(static_cast<std::uint64_t>(r)));
    vals.push_back(solve_tuple_system(src, f, shift, z, unknowns, norm_on_den, nullptr, {}, rng,
                                      opts.max_retries));
    zpts.push_back(std::move(z));
  }

  // solve per side, descending in degree, subtracting shift monomials of the
  // already recovered higher coefficients
  auto solve_side = [&](bool num_side, const std::map<std::uint32_t, std::vector<ExpVec>>& by_deg,
                        const std::set<std::uint32_t>& degs) {
    std::map<std::uint32_t, SparsePoly> side_contrib;
    SparsePoly full(f, n);
    std::vector<std::uint32_t> all_degs(degs.rbegin(), degs.rend());
    for (auto d : all_degs) {
      const bool is_norm = (num_side != norm_on_den) && d == 0;
      auto contrib_eval = [&](std::size_t r) {
        auto it = side_contrib.find(d);
        return it == side_contrib.end() ? FieldElement(f, 0) : it->second.eval(zpts[r]);
      };
      auto raw_value = [&](std::size_t r) {
        if (is_norm) return FieldElement(f, 1);
        return FieldElement(f, vals[r].at(CoeffKey{num_side, d}));
      };
      auto it_sup = by_deg.find(d);
      SparsePoly truth(f, rn);
      if (it_sup == by_deg.end()) {
        // no true terms at this degree: pure shadow, must cancel exactly
        if (!(raw_value(0) - contrib_eval(0)).is_zero())
          throw UnluckyPrimeError("skeleton solve: unexpected coefficient at t-degree " +
                                  std::to_string(d));
      } else {
        const auto& sup = it_sup->second;
        std::vector<FieldElement> nodes, bvals;
        for (const auto& e : sup) {
          FieldElement v(f, 1);
          for (std::uint32_t i = 0; i < rn; ++i)
            if (e[i] != 0) v = v * anchors[i].pow(e[i]);
          nodes.push_back(v);
        }
        for (std::size_t r = 0; r < sup.size(); ++r) bvals.push_back(raw_value(r) - contrib_eval(r));
        std::vector<FieldElement> coeffs;
        if (sup.size() == 1 && nodes[0] == FieldElement(f, 1)) {
          coeffs = {bvals[0]};
        } else {
          coeffs = solve_shifted_vandermonde_nodes(nodes, bvals);
        }
        for (std::size_t j = 0; j < sup.size(); ++j) {
          if (coeffs[j].is_zero())
            throw UnluckyPrimeError("skeleton solve: coefficient vanished (skeleton mismatch)");
          truth.add_term(sup[j], coeffs[j]);
        }
        if (d > 0 && !shift.is_zero()) accumulate_shift_monomials(truth, d, shift, side_contrib);
        full = full + homogenize(truth, d);
      }
    }
    return full;
  };

  SparsePoly num_full = solve_side(true, num_by_deg, num_degs);
  SparsePoly den_full = solve_side(false, den_by_deg, den_degs);
  if (den_full.is_zero())
    throw UnluckyPrimeError("skeleton solve: denominator vanished");
  return RationalFunctionFF(std::move(num_full), std::move(den_full));
}

std::optional<RationalFunctionQ> lift_to_Q(
    const std::vector<std::pair<RationalFunctionFF, std::uint64_t>>& per_prime_results) {
  if (per_prime_results.empty())
    throw std::invalid_argument("lift_to_Q: no per-prime results");
  const RationalFunctionFF& first = per_prime_results[0].first;
  const std::uint32_t n = first.n_vars();

  auto check_same_terms = [&](const SparsePoly& a, const SparsePoly& b) {
    if (a.n_terms() != b.n_terms()) return false;
    auto it = b.terms().begin();
    for (const auto& [e, c] : a.terms()) {
      if (it->first != e) return false;
      ++it;
    }
    return true;
  };
  for (std::size_t i = 1; i < per_prime_results.size(); ++i) {
    const auto& fn = per_prime_results[i].first;
    if (!check_same_terms(first.num(), fn.num()) || !check_same_terms(first.den(), fn.den()))
      throw UnluckyPrimeError("lift_to_Q: per-prime skeletons disagree");
  }

  auto lift_poly = [&](auto term_of) -> std::optional<SparsePolyQ> {
    SparsePolyQ out(n);
    const SparsePoly& base = term_of(first);
    for (const auto& [e, c0] : base.terms()) {
      std::vector<std::pair<BigInt, BigInt>> parts;
      for (const auto& [fn, p] : per_prime_results)
        parts.push_back({BigInt(static_cast<unsigned long>(term_of(fn).coeff(e).value())),
                         BigInt(static_cast<unsigned long>(p))});
      ResidueSystem sys = crt_combine(parts);
      std::optional<BigRational> q = rational_reconstruct(sys);
      if (!q) return std::nullopt;
      out.add_term(e, *q);
    }
    return out;
  };

  auto num = lift_poly([](const RationalFunctionFF& fn) -> const SparsePoly& { return fn.num(); });
  if (!num) return std::nullopt;
  auto den = lift_poly([](const RationalFunctionFF& fn) -> const SparsePoly& { return fn.den(); });
  if (!den) return std::nullopt;
  return RationalFunctionQ(std::move(*num), std::move(*den));
}

} // namespace ratrec
