#include "ratrec/rational.hpp"

#include "ratrec/errors.hpp"

namespace ratrec {

FieldElement BigRational::to_field(const PrimeField& f) const {
  const std::uint64_t p = f.modulus();
  const std::uint64_t num = mpz_fdiv_ui(q_.get_num().get_mpz_t(), p);
  const std::uint64_t den = mpz_fdiv_ui(q_.get_den().get_mpz_t(), p);
  if (den == 0)
    throw BadPrimeError("coefficient denominator vanishes modulo " + std::to_string(p));
  return FieldElement(f, num) / FieldElement(f, den);
}

std::string BigRational::str() const {
  std::string s = q_.get_num().get_str();
  if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
  return s;
}

ResidueSystem crt_extend(const ResidueSystem& sys, const BigInt& residue, const BigInt& prime) {
  if (mpz_divisible_p(sys.modulus.get_mpz_t(), prime.get_mpz_t()))
    throw std::invalid_argument("crt: repeated prime " + prime.get_str());
  if (residue < 0 || residue >= prime)
    throw std::invalid_argument("crt: residue out of range for prime " + prime.get_str());
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), sys.modulus.get_mpz_t(), prime.get_mpz_t()) == 0)
    throw std::invalid_argument("crt: moduli not coprime");
  // x = sys.residue + sys.modulus * k with k chosen so x = residue (mod prime)
  BigInt k = ((residue - sys.residue) * inv) % prime;
  if (k < 0) k += prime;
  ResidueSystem out;
  out.modulus = sys.modulus * prime;
  out.residue = sys.residue + sys.modulus * k;
  return out;
}

ResidueSystem crt_combine(const std::vector<std::pair<BigInt, BigInt>>& parts) {
  if (parts.empty()) throw std::invalid_argument("crt: no parts");
  ResidueSystem sys{parts[0].first, parts[0].second};
  if (sys.residue < 0 || sys.residue >= sys.modulus)
    throw std::invalid_argument("crt: residue out of range");
  for (std::size_t i = 1; i < parts.size(); ++i)
    sys = crt_extend(sys, parts[i].first, parts[i].second);
  return sys;
}

namespace {

std::optional<BigRational> accept(const BigInt& num, const BigInt& den) {
  if (den == 0) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  if (den < 0) return BigRational(-num, -den);
  return BigRational(num, den);
}

} // namespace

std::optional<BigRational> rational_reconstruct(const BigInt& residue, const BigInt& modulus,
                                                RatRecMode mode) {
  if (residue < 0 || residue >= modulus)
    throw std::invalid_argument("rational_reconstruct: residue out of range");
  if (residue == 0) return BigRational(0);

  if (mode == RatRecMode::wang_bound) {
    // Walk the Euclidean remainder sequence until r drops below sqrt(m/2);
    // the unique fraction within the symmetric bound shows up there.
    BigInt bound;
    mpz_sqrt(bound.get_mpz_t(), BigInt(modulus / 2).get_mpz_t());
    BigInt r0 = modulus, r1 = residue;
    BigInt t0 = 0, t1 = 1;
    while (r1 > bound) {
      BigInt q = r0 / r1;
      BigInt r2 = r0 - q * r1;
      BigInt t2 = t0 - q * t1;
      r0 = r1; r1 = r2;
      t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    BigInt abs_t1;
    mpz_abs(abs_t1.get_mpz_t(), t1.get_mpz_t());
    if (abs_t1 > bound) return std::nullopt;
    return accept(r1, t1);
  }

  // Maximal-quotient acceptance: remember the convergent entered through the
  // largest quotient; accept only if that quotient clears a size threshold
  // that grows with the modulus, otherwise ask for more primes.
  BigInt threshold = BigInt(64) * static_cast<unsigned long>(mpz_sizeinbase(modulus.get_mpz_t(), 2));
  BigInt best_num = 0, best_den = 0;
  BigInt best_q = threshold;
  BigInt r0 = modulus, r1 = residue;
  BigInt t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    if (q > best_q) {
      best_q = q;
      best_num = r1;
      best_den = t1;
    }
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (best_den == 0) return std::nullopt;
  return accept(best_num, best_den);
}

} // namespace ratrec
