#include "ratrec/factor_scan.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ratrec/errors.hpp"
#include "ratrec/vandermonde.hpp"

namespace ratrec {

DensePolyFF FactorPolyQ::to_field(const PrimeField& f) const {
  DensePolyFF out(f);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::uint64_t r = mpz_fdiv_ui(coeffs[i].get_mpz_t(), f.modulus());
    out.set_coeff(i, FieldElement(f, r));
  }
  if (out.degree() != static_cast<int>(coeffs.size()) - 1)
    throw BadPrimeError("factor leading coefficient vanishes modulo " +
                        std::to_string(f.modulus()));
  return out;
}

namespace {

FieldElement slice_eval(ProbeSource& src, const PrimeField& f, std::uint32_t var,
                        const std::vector<FieldElement>& fixings, const FieldElement& t) {
  std::vector<FieldElement> pt = fixings;
  pt[var] = t;
  std::vector<std::vector<FieldElement>> pts{pt};
  std::vector<FieldElement> values;
  std::vector<std::uint8_t> ok;
  src.evaluate(pts, values, ok);
  if (!ok[0]) throw ZeroDivisorError(0);
  return values[0];
}

// linear solve for the slice when the degree skeleton is already known from
// the first sample
UnivariateRational fit_known_skeleton(ProbeSource& src, const PrimeField& f, std::uint32_t var,
                                      const std::vector<FieldElement>& fixings,
                                      const UnivariateRational& known, Rng& rng,
                                      int max_retries) {
  std::vector<std::uint32_t> num_degs, den_degs;
  for (int i = 0; i <= known.num.degree(); ++i)
    if (!known.num.coeff(static_cast<std::size_t>(i)).is_zero())
      num_degs.push_back(static_cast<std::uint32_t>(i));
  for (int i = 0; i <= known.den.degree(); ++i)
    if (!known.den.coeff(static_cast<std::size_t>(i)).is_zero())
      den_degs.push_back(static_cast<std::uint32_t>(i));
  // normalization: lowest denominator degree fixed to one
  const std::uint32_t norm_deg = den_degs.front();
  den_degs.erase(den_degs.begin());
  const std::size_t eqs = num_degs.size() + den_degs.size();

  std::set<std::uint64_t> used{0};
  std::vector<FieldElement> ts, Fs;
  int failures = 0;
  while (ts.size() < eqs) {
    FieldElement t = random_element(f, rng, 1);
    if (!used.insert(t.value()).second) continue;
    try {
      Fs.push_back(slice_eval(src, f, var, fixings, t));
      ts.push_back(t);
    } catch (const ZeroDivisorError&) {
      if (++failures > max_retries)
        throw UnluckyEvaluationError("factor scan: too many bad slice points");
    }
  }

  std::vector<std::uint64_t> m(eqs * eqs), rhs(eqs);
  for (std::size_t r = 0; r < eqs; ++r) {
    std::size_t c = 0;
    for (auto d : num_degs) m[r * eqs + c++] = ts[r].pow(d).value();
    for (auto d : den_degs) m[r * eqs + c++] = (-(Fs[r] * ts[r].pow(d))).value();
    rhs[r] = (Fs[r] * ts[r].pow(norm_deg)).value();
  }
  std::vector<std::uint64_t> x = solve_dense(m, rhs, eqs, f);

  UnivariateRational out{DensePolyFF(f), DensePolyFF(f)};
  std::size_t c = 0;
  for (auto d : num_degs) out.num.set_coeff(d, FieldElement(f, x[c++]));
  for (auto d : den_degs) out.den.set_coeff(d, FieldElement(f, x[c++]));
  out.den.set_coeff(norm_deg, FieldElement(f, 1));
  return out;
}

} // namespace

SliceSample scan_sample(ProbeSource& src, const PrimeField& f, std::uint32_t n_vars,
                        std::uint32_t var, const std::vector<FieldElement>& fixings, Rng& rng,
                        const UnivariateRational* known, int eta, int max_retries) {
  (void)n_vars;
  UnivariateRational u =
      known ? fit_known_skeleton(src, f, var, fixings, *known, rng, max_retries)
            : thiele_interpolate(
                  [&](const FieldElement& t) { return slice_eval(src, f, var, fixings, t); }, f,
                  rng, eta, max_retries);
  SliceSample out{u, {FieldElement(f, 1), {}}, {FieldElement(f, 1), {}}};
  if (!u.num.is_zero()) out.num_factors = factorize_univariate_ff(u.num, rng);
  if (!u.den.is_zero()) out.den_factors = factorize_univariate_ff(u.den, rng);
  return out;
}

std::vector<std::pair<DensePolyFF, std::uint32_t>> common_factors(const FFFactorization& a,
                                                                  const FFFactorization& b) {
  std::vector<std::pair<DensePolyFF, std::uint32_t>> out;
  for (const auto& [qa, ma] : a.factors) {
    if (qa.degree() < 1) continue;
    for (const auto& [qb, mb] : b.factors) {
      if (qa == qb) {
        out.push_back({qa, std::min(ma, mb)});
        break;
      }
    }
  }
  return out;
}

namespace {

DensePolyFF product_of(const PrimeField& f,
                       const std::vector<std::pair<DensePolyFF, std::uint32_t>>& factors) {
  DensePolyFF r(f, {1});
  for (const auto& [q, m] : factors)
    for (std::uint32_t i = 0; i < m; ++i) r = r * q;
  return r;
}

// clears denominators and content; positive leading coefficient
FactorPolyQ canonical_integer_poly(const std::vector<BigRational>& coeffs) {
  BigInt lcm_den(1);
  for (const auto& c : coeffs)
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<BigInt> ints;
  ints.reserve(coeffs.size());
  for (const auto& c : coeffs) ints.push_back(c.numerator() * (lcm_den / c.denominator()));
  BigInt content(0);
  for (const auto& v : ints) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  if (content == 0) content = 1;
  if (ints.back() < 0) content = -content;
  for (auto& v : ints) v /= content;
  return FactorPolyQ{std::move(ints)};
}

} // namespace

VariableFactors scan_variable(ProbeSource& src, std::uint32_t n_vars, std::uint32_t var,
                              const std::vector<const PrimeField*>& primes, Rng& rng,
                              int samples_per_prime, int eta, int max_retries) {
  VariableFactors out;
  // accumulated CRT state per factor coefficient; reset on degree mismatch
  std::vector<ResidueSystem> num_acc, den_acc;
  bool have_acc = false;

  for (std::size_t k = 0; k < primes.size(); ++k) {
    const PrimeField& f = *primes[k];
    // distinct random fixings per sample, kept disjoint across samples so a
    // small field cannot alias slice structures
    std::set<std::uint64_t> taken;
    auto draw_fixings = [&]() {
      std::vector<FieldElement> fix(n_vars, FieldElement(f, 0));
      for (std::uint32_t j = 0; j < n_vars; ++j) {
        if (j == var) continue;
        std::uint64_t v;
        do {
          v = rng.uniform(2, f.modulus());
        } while (!taken.insert(v).second);
        fix[j] = FieldElement(f, v);
      }
      return fix;
    };

    SliceSample first = scan_sample(src, f, n_vars, var, draw_fixings(), rng, nullptr, eta,
                                    max_retries);
    out.max_degree = std::max({out.max_degree,
                               static_cast<std::uint32_t>(std::max(first.fn.num.degree(), 0)),
                               static_cast<std::uint32_t>(std::max(first.fn.den.degree(), 0))});

    auto num_common = first.num_factors.factors;
    auto den_common = first.den_factors.factors;
    for (int s = 1; s < samples_per_prime; ++s) {
      SliceSample next = scan_sample(src, f, n_vars, var, draw_fixings(), rng, &first.fn, eta,
                                     max_retries);
      num_common = common_factors(FFFactorization{FieldElement(f, 1), num_common},
                                  next.num_factors);
      den_common = common_factors(FFFactorization{FieldElement(f, 1), den_common},
                                  next.den_factors);
    }

    DensePolyFF qn = product_of(f, num_common);
    DensePolyFF qd = product_of(f, den_common);
    if (qn.degree() == 0 && qd.degree() == 0) {
      if (!have_acc) return out; // nothing in the first prime: no factors
      // accumulated factors disappeared under this prime: treat the earlier
      // primes as unlucky and start over
      have_acc = false;
      num_acc.clear();
      den_acc.clear();
      continue;
    }

    auto accumulate = [&](const DensePolyFF& q, std::vector<ResidueSystem>& acc) -> bool {
      if (have_acc && acc.size() != static_cast<std::size_t>(q.degree()) + 1) return false;
      if (!have_acc) acc.assign(static_cast<std::size_t>(q.degree()) + 1, ResidueSystem{});
      for (std::size_t i = 0; i < acc.size(); ++i) {
        BigInt r(static_cast<unsigned long>(q.coeff(i).value()));
        BigInt p(static_cast<unsigned long>(f.modulus()));
        if (acc[i].modulus == 0)
          acc[i] = ResidueSystem{r, p};
        else
          acc[i] = crt_extend(acc[i], r, p);
      }
      return true;
    };
    std::vector<ResidueSystem> num_save = num_acc, den_save = den_acc;
    if (!accumulate(qn, num_acc) || !accumulate(qd, den_acc)) {
      // degree mismatch across primes: restart accumulation from this prime
      num_acc.clear();
      den_acc.clear();
      have_acc = false;
      accumulate(qn, num_acc);
      accumulate(qd, den_acc);
    }
    have_acc = true;

    auto lift = [&](const std::vector<ResidueSystem>& acc) -> std::optional<FactorPolyQ> {
      std::vector<BigRational> coeffs;
      for (const auto& sys : acc) {
        auto q = rational_reconstruct(sys);
        if (!q) return std::nullopt;
        coeffs.push_back(*q);
      }
      return canonical_integer_poly(coeffs);
    };
    auto qn_lift = lift(num_acc);
    auto qd_lift = lift(den_acc);
    if (qn_lift && qd_lift) {
      out.q_num = std::move(*qn_lift);
      out.q_den = std::move(*qd_lift);
      return out;
    }
  }
  // reconstruction never stabilized: report no factor rather than a wrong one
  out.q_num = FactorPolyQ::one();
  out.q_den = FactorPolyQ::one();
  return out;
}

FactorScanResult full_scan(ProbeSource& src, std::uint32_t n_vars,
                           const std::vector<const PrimeField*>& primes, Rng& rng,
                           int samples_per_prime, int eta, int max_retries) {
  FactorScanResult out;
  out.per_variable.reserve(n_vars);
  for (std::uint32_t i = 0; i < n_vars; ++i)
    out.per_variable.push_back(
        scan_variable(src, n_vars, i, primes, rng, samples_per_prime, eta, max_retries));
  out.ordering.resize(n_vars);
  std::iota(out.ordering.begin(), out.ordering.end(), 0u);
  std::stable_sort(out.ordering.begin(), out.ordering.end(), [&](std::uint32_t a, std::uint32_t b) {
    return out.per_variable[a].max_degree > out.per_variable[b].max_degree;
  });
  return out;
}

} // namespace ratrec
