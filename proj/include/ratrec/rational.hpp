#ifndef RATREC_RATIONAL_HPP
#define RATREC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratrec/field.hpp"

namespace ratrec {

using BigInt = mpz_class;

// Reduced fraction with positive denominator; zero is 0/1.
class BigRational {
public:
  BigRational() : q_(0) {}
  BigRational(const BigInt& num, const BigInt& den) : q_(num, den) {
    if (den == 0) throw std::invalid_argument("BigRational: zero denominator");
    q_.canonicalize();
  }
  explicit BigRational(const BigInt& num) : q_(num) {}
  explicit BigRational(long v) : q_(v) {}
  explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  static BigRational from_decimal_strings(const std::string& num, const std::string& den) {
    return BigRational(BigInt(num), BigInt(den));
  }

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  bool is_zero() const { return q_ == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  BigRational operator+(const BigRational& o) const { return BigRational(mpq_class(q_ + o.q_)); }
  BigRational operator-(const BigRational& o) const { return BigRational(mpq_class(q_ - o.q_)); }
  BigRational operator*(const BigRational& o) const { return BigRational(mpq_class(q_ * o.q_)); }
  BigRational operator/(const BigRational& o) const {
    if (o.q_ == 0) throw std::invalid_argument("BigRational: division by zero");
    return BigRational(mpq_class(q_ / o.q_));
  }
  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  bool operator==(const BigRational& o) const { return q_ == o.q_; }
  bool operator!=(const BigRational& o) const { return q_ != o.q_; }

  // Image in Z_p; throws BadPrimeError when p divides the denominator.
  FieldElement to_field(const PrimeField& f) const;

  // "num/den", den omitted when 1.
  std::string str() const;

private:
  mpq_class q_;
};

// Residue together with the (composite) modulus it is known under.
struct ResidueSystem {
  BigInt residue;
  BigInt modulus;
};

// Chinese remaindering of pairwise-distinct prime parts; repeated prime throws.
ResidueSystem crt_combine(const std::vector<std::pair<BigInt, BigInt>>& parts);

// Incremental variant: extend an existing system by one prime part.
ResidueSystem crt_extend(const ResidueSystem& sys, const BigInt& residue, const BigInt& prime);

enum class RatRecMode {
  maximal_quotient, // Monagan's acceptance; succeeds with nearly minimal moduli
  wang_bound        // symmetric bound sqrt(m/2); cross-check mode
};

// Reconstruct a/b with b > 0, gcd(a, b) = 1 and a = residue * b (mod modulus).
// Returns nullopt when no candidate is accepted, signalling "need more primes".
std::optional<BigRational> rational_reconstruct(const BigInt& residue, const BigInt& modulus,
                                                RatRecMode mode = RatRecMode::maximal_quotient);

inline std::optional<BigRational> rational_reconstruct(const ResidueSystem& sys,
                                                       RatRecMode mode = RatRecMode::maximal_quotient) {
  return rational_reconstruct(sys.residue, sys.modulus, mode);
}

} // namespace ratrec

#endif
