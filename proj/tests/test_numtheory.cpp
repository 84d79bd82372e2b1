#include <doctest.h>

#include "ratrec/field.hpp"
#include "ratrec/rational.hpp"
#include "ratrec/rng.hpp"

using namespace ratrec;

// Extended-Euclid oracle, independent of FieldElement's own inverse.
static std::uint64_t euclid_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tt = t - q * nt;
    t = nt;
    nt = tt;
    std::int64_t rr = r - q * nr;
    r = nr;
    nr = rr;
  }
  return t >= 0 ? static_cast<std::uint64_t>(t)
                : p - static_cast<std::uint64_t>(-t);
}

TEST_CASE("field arithmetic basics") {
  PrimeField f101(101);
  FieldElement seven(f101, 7);
  FieldElement inv = seven.inv();
  CHECK(inv.value() == 29);
  CHECK(inv.value() == euclid_inverse(7, 101));
  CHECK((seven * inv).value() == 1);

  PrimeField f509(509);
  CHECK((FieldElement(f509, 5) * FieldElement(f509, 17)).value() == 85);
  CHECK(FieldElement(f509, 0).pow(0).value() == 1);
  CHECK(FieldElement(f509, 37).pow(0).value() == 1);

  CHECK(field_arith(FieldElement(f509, 3), FieldElement(f509, 4), FieldOp::pow).value() == 81);
}

TEST_CASE("field errors") {
  PrimeField a(101), b(509);
  CHECK_THROWS_AS(FieldElement(a, 1) + FieldElement(b, 1), FieldMismatchError);
  CHECK_THROWS_AS(FieldElement(a, 5) / FieldElement(a, 0), ZeroDivisorError);
  try {
    FieldElement(a, 5) / FieldElement(a, 0);
  } catch (const ZeroDivisorError& e) {
    CHECK(e.dividend == 5);
  }
  CHECK_THROWS(PrimeField(100));
  CHECK_THROWS(PrimeField(2));
}

TEST_CASE("field multiplicative inverse round trip near the 63-bit boundary") {
  const PrimeField& f = prime_sequence(0);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    FieldElement a = random_element(f, rng, 1);
    FieldElement b = random_element(f, rng, 1);
    CHECK(((a * b) / b) == a);
  }
}

TEST_CASE("prime sequence") {
  CHECK(prime_sequence(0).modulus() == 9223372036854775783ULL);
  CHECK(prime_sequence(1).modulus() == 9223372036854775643ULL);
  CHECK_THROWS_AS(prime_sequence(kPrimeSequenceLength), std::out_of_range);

  // independent primality check + descending and maximality below 2^63
  std::uint64_t prev = 1ULL << 63;
  for (std::size_t i = 0; i < kPrimeSequenceLength; ++i) {
    std::uint64_t p = kPrimeSequence[i];
    CHECK(detail::is_prime_u64(p));
    CHECK(p < prev);
    // no prime between p and prev
    for (std::uint64_t q = p + 2; q < prev; q += 2) {
      CHECK_FALSE(detail::is_prime_u64(q));
    }
    CHECK(p > (1ULL << 62));
    prev = p;
  }
}

TEST_CASE("crt combine") {
  // brute-force oracle over 0..34
  int expect = -1;
  for (int x = 0; x < 35; ++x)
    if (x % 5 == 3 && x % 7 == 4) {
      expect = x;
      break;
    }
  REQUIRE(expect == 18);
  ResidueSystem sys = crt_combine({{BigInt(3), BigInt(5)}, {BigInt(4), BigInt(7)}});
  CHECK(sys.residue == 18);
  CHECK(sys.modulus == 35);

  ResidueSystem single = crt_combine({{BigInt(6), BigInt(11)}});
  CHECK(single.residue == 6);
  CHECK(single.modulus == 11);

  ResidueSystem zero = crt_combine({{BigInt(0), BigInt(5)}, {BigInt(0), BigInt(7)}});
  CHECK(zero.residue == 0);
  CHECK(zero.modulus == 35);

  CHECK_THROWS(crt_combine({{BigInt(1), BigInt(5)}, {BigInt(2), BigInt(5)}}));
}

TEST_CASE("crt reduces to inputs") {
  Rng rng(11);
  std::vector<std::uint64_t> primes = {kPrimeSequence[0], kPrimeSequence[1], kPrimeSequence[2]};
  for (int it = 0; it < 20; ++it) {
    std::vector<std::pair<BigInt, BigInt>> parts;
    for (auto p : primes)
      parts.push_back({BigInt(static_cast<unsigned long>(rng.uniform(0, p))),
                       BigInt(static_cast<unsigned long>(p))});
    ResidueSystem sys = crt_combine(parts);
    for (const auto& [r, p] : parts) CHECK(sys.residue % p == r);
  }
}

TEST_CASE("rational reconstruction: wang bound mode matches brute force") {
  // (74, 101): the minimal-denominator fraction congruent to 74 is -7/4
  // (13 == 74*7 mod 101 also holds, but 4 < 7).
  int found_num = 0, found_den = 0;
  for (int b = 1; b <= 10 && !found_den; ++b)
    for (int a = -10; a <= 10; ++a) {
      long lhs = ((long)a % 101 + 101) % 101;
      if (lhs == (74L * b) % 101) {
        found_num = a;
        found_den = b;
        break;
      }
    }
  REQUIRE(found_den == 4);
  REQUIRE(found_num == -7);

  auto r = rational_reconstruct(BigInt(74), BigInt(101), RatRecMode::wang_bound);
  REQUIRE(r.has_value());
  CHECK(r->numerator() == -7);
  CHECK(r->denominator() == 4);
}

TEST_CASE("rational reconstruction: zero and round trips within Wang's bound") {
  auto z = rational_reconstruct(BigInt(0), BigInt(1000003));
  REQUIRE(z.has_value());
  CHECK(z->numerator() == 0);
  CHECK(z->denominator() == 1);

  BigInt m(static_cast<unsigned long>(kPrimeSequence[0]));
  BigInt bound;
  mpz_sqrt(bound.get_mpz_t(), BigInt(m / 2).get_mpz_t());
  Rng rng(23);
  for (int it = 0; it < 500; ++it) {
    BigInt a(static_cast<unsigned long>(rng.uniform(1, 1u << 30)));
    BigInt b(static_cast<unsigned long>(rng.uniform(1, 1u << 30)));
    if (rng.uniform(0, 2)) a = -a;
    REQUIRE(a < bound);
    REQUIRE(b < bound);
    BigRational want(a, b);
    // residue = a * b^-1 mod m
    BigInt binv;
    mpz_invert(binv.get_mpz_t(), want.denominator().get_mpz_t(), m.get_mpz_t());
    BigInt res = (want.numerator() * binv) % m;
    if (res < 0) res += m;
    auto got = rational_reconstruct(res, m, RatRecMode::wang_bound);
    REQUIRE(got.has_value());
    CHECK(*got == want);
  }
}

TEST_CASE("rational reconstruction: maximal quotient accepts small, defers large") {
  // small fraction over one 63-bit prime: accepted
  BigInt m(static_cast<unsigned long>(kPrimeSequence[0]));
  BigRational want = BigRational::from_decimal_strings("13", "7");
  BigInt binv;
  mpz_invert(binv.get_mpz_t(), want.denominator().get_mpz_t(), m.get_mpz_t());
  BigInt res = (want.numerator() * binv) % m;
  auto got = rational_reconstruct(res, m);
  REQUIRE(got.has_value());
  CHECK(*got == want);

  // numerator near the modulus: must defer (absent), not return a wrong guess
  BigInt big("1000000000000000000000000000000"); // 10^30
  BigRational truth(big, BigInt(7));
  mpz_invert(binv.get_mpz_t(), truth.denominator().get_mpz_t(), m.get_mpz_t());
  BigInt res2 = ((big % m) * binv) % m;
  auto got2 = rational_reconstruct(res2, m);
  CHECK_FALSE(got2.has_value());

  // with a second prime via CRT the same fraction still defers; with enough
  // primes it reconstructs exactly
  ResidueSystem sys{res2, m};
  std::size_t k = 1;
  std::optional<BigRational> lifted;
  while (k < 6) {
    BigInt p(static_cast<unsigned long>(kPrimeSequence[k]));
    BigInt r = big % p;
    mpz_invert(binv.get_mpz_t(), BigInt(7).get_mpz_t(), p.get_mpz_t());
    sys = crt_extend(sys, (r * binv) % p, p);
    lifted = rational_reconstruct(sys);
    if (lifted) break;
    ++k;
  }
  REQUIRE(lifted.has_value());
  CHECK(*lifted == truth);
}

TEST_CASE("big rational field image") {
  PrimeField f101(101);
  BigRational q = BigRational::from_decimal_strings("13", "7");
  CHECK(q.to_field(f101).value() == 74);
  BigRational bad(BigInt(1), BigInt(101));
  CHECK_THROWS_AS(bad.to_field(f101), BadPrimeError);
}
