#ifndef RATREC_FIELD_HPP
#define RATREC_FIELD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ratrec/errors.hpp"
#include "ratrec/rng.hpp"

namespace ratrec {

namespace detail {
using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

// Inverse of a mod p; throws ZeroDivisorError for a == 0.
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
} // namespace detail

// Prime field Z_p for an odd prime p < 2^63. Primality is verified at
// construction.
class PrimeField {
public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
  std::uint64_t p_;
};

// Built-in descending list of the largest primes below 2^63, compiled in so
// multi-prime runs are reproducible.
inline constexpr std::size_t kPrimeSequenceLength = 32;
extern const std::array<std::uint64_t, kPrimeSequenceLength> kPrimeSequence;

// index-th field from the built-in list; throws std::out_of_range past the end.
const PrimeField& prime_sequence(std::size_t index);

// Residue in [0, p) tagged with its field. Mixing fields throws, never coerces.
class FieldElement {
public:
  FieldElement() : v_(0), f_(nullptr) {}
  FieldElement(const PrimeField& f, std::uint64_t v) : v_(v % f.modulus()), f_(&f) {}
  // Signed construction: negative values wrap into [0, p).
  static FieldElement from_signed(const PrimeField& f, std::int64_t v) {
    std::uint64_t p = f.modulus();
    if (v >= 0) return FieldElement(f, static_cast<std::uint64_t>(v));
    std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1; // |v| without UB
    return FieldElement(f, p - m % p);
  }

  std::uint64_t value() const { return v_; }
  const PrimeField& field() const { return *f_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const {
    check(o);
    std::uint64_t p = f_->modulus();
    std::uint64_t s = v_ + o.v_; // p < 2^63 so no overflow
    if (s >= p) s -= p;
    return raw(*f_, s);
  }
  FieldElement operator-(const FieldElement& o) const {
    check(o);
    std::uint64_t p = f_->modulus();
    return raw(*f_, v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_);
  }
  FieldElement operator*(const FieldElement& o) const {
    check(o);
    return raw(*f_, detail::mulmod(v_, o.v_, f_->modulus()));
  }
  FieldElement operator/(const FieldElement& o) const {
    check(o);
    if (o.v_ == 0) throw ZeroDivisorError(v_);
    return raw(*f_, detail::mulmod(v_, detail::invmod(o.v_, f_->modulus()), f_->modulus()));
  }
  FieldElement operator-() const {
    return raw(*f_, v_ == 0 ? 0 : f_->modulus() - v_);
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  FieldElement inv() const {
    if (v_ == 0) throw ZeroDivisorError(1);
    return raw(*f_, detail::invmod(v_, f_->modulus()));
  }
  // Non-negative machine exponent; x^0 == 1 including x == 0.
  FieldElement pow(std::uint64_t e) const {
    return raw(*f_, detail::powmod(v_, e, f_->modulus()));
  }
  // Signed exponent; negative exponents invert (zero base throws).
  FieldElement pow_signed(std::int64_t e) const {
    if (e >= 0) return pow(static_cast<std::uint64_t>(e));
    return inv().pow(static_cast<std::uint64_t>(-(e + 1)) + 1);
  }

  bool operator==(const FieldElement& o) const { check(o); return v_ == o.v_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
  static FieldElement raw(const PrimeField& f, std::uint64_t v) {
    FieldElement e;
    e.v_ = v;
    e.f_ = &f;
    return e;
  }
  void check(const FieldElement& o) const {
    if (f_ == nullptr || o.f_ == nullptr || f_->modulus() != o.f_->modulus())
      throw FieldMismatchError();
  }
  std::uint64_t v_;
  const PrimeField* f_;
};

enum class FieldOp { add, sub, mul, div, pow };

// Dispatch form of the element arithmetic; pow reads the exponent from b.value().
FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op);

// Uniform element with value in [lo, p).
inline FieldElement random_element(const PrimeField& f, Rng& rng, std::uint64_t lo = 0) {
  return FieldElement(f, rng.uniform(lo, f.modulus()));
}

// Fixed-width bunch of residues sharing one field; arithmetic is componentwise
// and exactly matches W scalar operations.
template <std::size_t W>
class FieldBunch {
public:
  static constexpr std::size_t width = W;

  FieldBunch() : f_(nullptr) { v_.fill(0); }
  explicit FieldBunch(const PrimeField& f) : f_(&f) { v_.fill(0); }
  FieldBunch(const PrimeField& f, const FieldElement& x) : f_(&f) {
    v_.fill(x.value());
  }

  const PrimeField& field() const { return *f_; }
  std::uint64_t lane(std::size_t i) const { return v_[i]; }
  void set_lane(std::size_t i, std::uint64_t v) { v_[i] = v; }

  FieldBunch operator+(const FieldBunch& o) const {
    FieldBunch r(*f_);
    std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t s = v_[i] + o.v_[i];
      r.v_[i] = s >= p ? s - p : s;
    }
    return r;
  }
  FieldBunch operator-(const FieldBunch& o) const {
    FieldBunch r(*f_);
    std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < W; ++i)
      r.v_[i] = v_[i] >= o.v_[i] ? v_[i] - o.v_[i] : v_[i] + p - o.v_[i];
    return r;
  }
  FieldBunch operator*(const FieldBunch& o) const {
    FieldBunch r(*f_);
    std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < W; ++i) r.v_[i] = detail::mulmod(v_[i], o.v_[i], p);
    return r;
  }
  FieldBunch operator/(const FieldBunch& o) const {
    FieldBunch r(*f_);
    std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < W; ++i) {
      if (o.v_[i] == 0) throw ZeroDivisorError(v_[i]);
      r.v_[i] = detail::mulmod(v_[i], detail::invmod(o.v_[i], p), p);
    }
    return r;
  }
  FieldBunch operator-() const {
    FieldBunch r(*f_);
    std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < W; ++i) r.v_[i] = v_[i] == 0 ? 0 : p - v_[i];
    return r;
  }
  FieldBunch pow_signed(std::int64_t e) const {
    FieldBunch r(*f_);
    std::uint64_t p = f_->modulus();
    for (std::size_t i = 0; i < W; ++i) {
      FieldElement x(*f_, v_[i]);
      r.v_[i] = x.pow_signed(e).value();
    }
    return r;
  }

private:
  std::array<std::uint64_t, W> v_;
  const PrimeField* f_;
};

} // namespace ratrec

#endif
