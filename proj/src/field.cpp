#include "ratrec/field.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

namespace ratrec {

namespace detail {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  std::uint64_t b = base % p;
  while (exp) {
    if (exp & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    exp >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw ZeroDivisorError(1);
  // extended Euclid over signed 128-bit accumulators
  std::int64_t t = 0, new_t = 1;
  std::uint64_t r = p, new_r = a;
  while (new_r != 0) {
    std::uint64_t q = r / new_r;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    std::uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw ZeroDivisorError(a); // not coprime; cannot happen for prime p
  return t >= 0 ? static_cast<std::uint64_t>(t) : p - static_cast<std::uint64_t>(-t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

} // namespace detail

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= (1ULL << 63) || !detail::is_prime_u64(p))
    throw std::invalid_argument("PrimeField: modulus must be an odd prime below 2^63, got " +
                                std::to_string(p));
}

const std::array<std::uint64_t, kPrimeSequenceLength> kPrimeSequence = {
  9223372036854775783ULL,
  9223372036854775643ULL,
  9223372036854775549ULL,
  9223372036854775507ULL,
  9223372036854775433ULL,
  9223372036854775421ULL,
  9223372036854775417ULL,
  9223372036854775399ULL,
  9223372036854775351ULL,
  9223372036854775337ULL,
  9223372036854775291ULL,
  9223372036854775279ULL,
  9223372036854775259ULL,
  9223372036854775181ULL,
  9223372036854775159ULL,
  9223372036854775139ULL,
  9223372036854775097ULL,
  9223372036854775073ULL,
  9223372036854775057ULL,
  9223372036854774959ULL,
  9223372036854774937ULL,
  9223372036854774917ULL,
  9223372036854774893ULL,
  9223372036854774797ULL,
  9223372036854774739ULL,
  9223372036854774713ULL,
  9223372036854774679ULL,
  9223372036854774629ULL,
  9223372036854774587ULL,
  9223372036854774571ULL,
  9223372036854774559ULL,
  9223372036854774511ULL,
};

const PrimeField& prime_sequence(std::size_t index) {
  if (index >= kPrimeSequenceLength)
    throw std::out_of_range("prime_sequence: index " + std::to_string(index) +
                            " exceeds built-in list of " +
                            std::to_string(kPrimeSequenceLength) + " primes");
  static std::array<const PrimeField*, kPrimeSequenceLength> cache{};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[index]) cache[index] = new PrimeField(kPrimeSequence[index]);
  return *cache[index];
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
    case FieldOp::pow: return a.pow(b.value());
  }
  throw std::invalid_argument("field_arith: unknown op");
}

} // namespace ratrec
