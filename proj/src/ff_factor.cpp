#include "ratrec/ff_factor.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace ratrec {

namespace {

DensePolyFF poly_x(const PrimeField& f) { return DensePolyFF(f, {0, 1}); }

DensePolyFF mulmod_poly(const DensePolyFF& a, const DensePolyFF& b, const DensePolyFF& m) {
  return (a * b).mod(m);
}

// base^e mod m with an arbitrary-precision exponent
DensePolyFF powmod_poly(DensePolyFF base, mpz_class e, const DensePolyFF& m) {
  DensePolyFF r(m.field(), {1});
  base = base.mod(m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod_poly(r, base, m);
    base = mulmod_poly(base, base, m);
    e >>= 1;
  }
  return r;
}

DensePolyFF random_poly(const PrimeField& f, std::uint32_t max_deg, Rng& rng) {
  DensePolyFF r(f);
  for (std::uint32_t i = 0; i <= max_deg; ++i)
    r.set_coeff(i, random_element(f, rng));
  return r;
}

// squarefree part decomposition (Yun); returns (squarefree poly, multiplicity)
// pairs whose product with multiplicities reproduces the monic input
std::vector<std::pair<DensePolyFF, std::uint32_t>> squarefree_decompose(const DensePolyFF& f_in,
                                                                        std::uint32_t mult_scale) {
  std::vector<std::pair<DensePolyFF, std::uint32_t>> out;
  const PrimeField& F = f_in.field();
  DensePolyFF f = f_in;
  DensePolyFF df = f.derivative();
  if (df.is_zero()) {
    // f is a p-th power: every coefficient sits at an exponent divisible by p;
    // over Z_p the p-th root just compresses the exponents
    const std::uint64_t p = F.modulus();
    DensePolyFF root(F);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); i += p)
      root.set_coeff(i / p, f.coeff(i));
    auto sub = squarefree_decompose(root, mult_scale * static_cast<std::uint32_t>(p));
    return sub;
  }
  DensePolyFF g = DensePolyFF::gcd(f, df);
  DensePolyFF w = f.divrem(g).first;
  std::uint32_t i = 1;
  while (w.degree() > 0) {
    DensePolyFF y = DensePolyFF::gcd(w, g);
    DensePolyFF z = w.divrem(y).first;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult_scale});
    w = y;
    g = g.divrem(y).first;
    ++i;
  }
  if (g.degree() > 0) {
    // the residue collects factors whose multiplicity is divisible by p; its
    // derivative vanishes, so the recursion takes the p-th root branch
    auto sub = squarefree_decompose(g, mult_scale);
    for (auto& [q, m] : sub) out.push_back({q, m});
  }
  return out;
}

// distinct-degree: splits a monic squarefree polynomial into products of
// irreducibles of equal degree
std::vector<std::pair<DensePolyFF, std::uint32_t>> distinct_degree(const DensePolyFF& f_in) {
  std::vector<std::pair<DensePolyFF, std::uint32_t>> out;
  const PrimeField& F = f_in.field();
  DensePolyFF f = f_in;
  DensePolyFF h = poly_x(F).mod(f);
  std::uint32_t d = 0;
  while (f.degree() > 0 && 2 * (d + 1) <= static_cast<std::uint32_t>(f.degree())) {
    ++d;
    h = powmod_poly(h, mpz_class(static_cast<unsigned long>(F.modulus())), f);
    DensePolyFF g = DensePolyFF::gcd(h - poly_x(F).mod(f), f);
    if (g.degree() > 0) {
      out.push_back({g.monic(), d});
      f = f.divrem(g).first;
      h = h.mod(f);
    }
  }
  if (f.degree() > 0) out.push_back({f.monic(), static_cast<std::uint32_t>(f.degree())});
  return out;
}

// Cantor-Zassenhaus split of a product of irreducibles of equal degree d
void equal_degree(const DensePolyFF& f, std::uint32_t d, Rng& rng,
                  std::vector<DensePolyFF>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const PrimeField& F = f.field();
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(F.modulus()), d);
  mpz_class e = (pd - 1) / 2;
  while (true) {
    DensePolyFF u = random_poly(F, static_cast<std::uint32_t>(f.degree() - 1), rng);
    if (u.degree() < 1) continue;
    DensePolyFF g = DensePolyFF::gcd(u, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f.divrem(g).first, d, rng, out);
      return;
    }
    DensePolyFF v = powmod_poly(u, e, f) - DensePolyFF(F, {1});
    g = DensePolyFF::gcd(v, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f.divrem(g).first, d, rng, out);
      return;
    }
  }
}

} // namespace

DensePolyFF FFFactorization::expand() const {
  DensePolyFF r(unit.field(), {unit.value()});
  for (const auto& [q, m] : factors)
    for (std::uint32_t i = 0; i < m; ++i) r = r * q;
  return r;
}

FFFactorization factorize_univariate_ff(const DensePolyFF& poly, Rng& rng) {
  if (poly.is_zero())
    throw std::invalid_argument("factorize_univariate_ff: zero polynomial");
  FFFactorization out{poly.leading(), {}};
  if (poly.degree() == 0) return out;
  DensePolyFF monic = poly.monic();

  for (const auto& [sq, mult] : squarefree_decompose(monic, 1)) {
    for (const auto& [prod, d] : distinct_degree(sq)) {
      std::vector<DensePolyFF> irreducibles;
      equal_degree(prod, d, rng, irreducibles);
      for (auto& q : irreducibles) out.factors.push_back({std::move(q), mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    if (a.first.coeffs() != b.first.coeffs()) return a.first.coeffs() < b.first.coeffs();
    return a.second < b.second;
  });
  return out;
}

} // namespace ratrec
