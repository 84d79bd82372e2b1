#include <doctest.h>

#include "ratrec/hybrid.hpp"
#include "ratrec/thiele.hpp"

using namespace ratrec;

namespace {

// Eq-style two-variable benchmark: (z1*z2^3 + z1^2*z2^2 + z1^3*z2 + z1^4 + z2^5) / z2
FieldElement hr_example(const std::vector<FieldElement>& z) {
  const FieldElement &a = z[0], &b = z[1];
  return (a * b.pow(3) + a.pow(2) * b.pow(2) + a.pow(3) * b + a.pow(4) + b.pow(5)) / b;
}

SparsePoly hr_example_num(const PrimeField& f) {
  SparsePoly num(f, 2);
  num.add_term({1, 3}, FieldElement(f, 1));
  num.add_term({2, 2}, FieldElement(f, 1));
  num.add_term({3, 1}, FieldElement(f, 1));
  num.add_term({4, 0}, FieldElement(f, 1));
  num.add_term({0, 5}, FieldElement(f, 1));
  return num;
}

} // namespace

TEST_CASE("thiele univariate interpolation") {
  PrimeField f(509);
  SUBCASE("(t^2+1)/t has numerator degree 2 and denominator degree 1") {
    Rng rng(1);
    auto oracle = [&](const FieldElement& t) {
      return (t * t + FieldElement(f, 1)) / t;
    };
    UnivariateRational u = thiele_interpolate(oracle, f, rng);
    CHECK(u.num.degree() == 2);
    CHECK(u.den.degree() == 1);
    for (std::uint64_t x = 1; x < 40; ++x) {
      FieldElement t(f, x);
      CHECK(u.eval(t) == oracle(t));
    }
  }
  SUBCASE("constant oracle") {
    Rng rng(2);
    auto oracle = [&](const FieldElement&) { return FieldElement(f, 42); };
    UnivariateRational u = thiele_interpolate(oracle, f, rng);
    CHECK(u.num.degree() == 0);
    CHECK(u.den.degree() == 0);
    CHECK(u.num.coeff(0).value() == 42);
    CHECK(u.den.coeff(0).value() == 1);
  }
  SUBCASE("shifted two-variable example has t-degrees 5 over 1") {
    const PrimeField& big = prime_sequence(0);
    Rng rng(3);
    // f(t*1, t*z2 + 2) at a random z2
    FieldElement z2 = random_element(big, rng, 2);
    auto oracle = [&](const FieldElement& t) {
      return hr_example({t, t * z2 + FieldElement(big, 2)});
    };
    UnivariateRational u = thiele_interpolate(oracle, big, rng);
    CHECK(u.num.degree() == 5);
    CHECK(u.den.degree() == 1);
    CHECK(u.den.coeff(0).value() == 1); // normalized constant term
  }
}

TEST_CASE("homogenize") {
  PrimeField f(509);
  SUBCASE("z2^2 at t-degree 3 gains one power of z1") {
    SparsePoly p(f, 1);
    p.add_term({2}, FieldElement(f, 7));
    SparsePoly h = homogenize(p, 3);
    CHECK(h.n_terms() == 1);
    CHECK(h.coeff(ExpVec{1, 2}).value() == 7);
  }
  SUBCASE("constant at t-degree 5 becomes z1^5") {
    SparsePoly p(f, 1);
    p.add_term({0}, FieldElement(f, 3));
    SparsePoly h = homogenize(p, 5);
    CHECK(h.coeff(ExpVec{5, 0}).value() == 3);
  }
  SUBCASE("degree overflow throws") {
    SparsePoly p(f, 1);
    p.add_term({4}, FieldElement(f, 1));
    CHECK_THROWS_AS(homogenize(p, 3), std::invalid_argument);
  }
}

TEST_CASE("hybrid racer on the worked two-variable example") {
  const PrimeField& f = prime_sequence(0);
  FunctionProbeSource src(hr_example);
  Rng rng(42);
  Shift shift{{FieldElement(f, 0), FieldElement(f, 2)}};
  RationalFunctionFF got = hybrid_racer(src, f, 2, shift, rng);

  SparsePoly num = hr_example_num(f);
  SparsePoly den(f, 2);
  den.add_term({0, 1}, FieldElement(f, 1));
  CHECK(got.num() == num);
  CHECK(got.den() == den);
  // paper reports 24 probes for this function; stay within the budget
  CHECK(src.probes <= 30);

  SUBCASE("soundness at 50 fresh points") {
    for (int i = 0; i < 50; ++i) {
      std::vector<FieldElement> pt{random_element(f, rng), random_element(f, rng, 1)};
      CHECK(got.eval(pt) == hr_example(pt));
    }
  }
}

TEST_CASE("hybrid racer: shifting both variables keeps the probe count") {
  const PrimeField& f = prime_sequence(0);
  std::size_t single, both;
  {
    FunctionProbeSource src(hr_example);
    Rng rng(7);
    hybrid_racer(src, f, 2, Shift{{FieldElement(f, 0), FieldElement(f, 2)}}, rng);
    single = src.probes;
  }
  {
    FunctionProbeSource src(hr_example);
    Rng rng(7);
    RationalFunctionFF got =
        hybrid_racer(src, f, 2, Shift{{FieldElement(f, 3), FieldElement(f, 2)}}, rng);
    both = src.probes;
    CHECK(got.num() == hr_example_num(f));
  }
  CHECK(both <= single + 2);
  CHECK(single <= both + 2);
}

TEST_CASE("hybrid racer degenerate and simple cases") {
  const PrimeField& f = prime_sequence(0);
  SUBCASE("constant function") {
    FunctionProbeSource src([&](const std::vector<FieldElement>& z) {
      (void)z;
      return FieldElement(f, 1234);
    });
    Rng rng(8);
    RationalFunctionFF got = hybrid_racer(src, f, 2, Shift::zero(f, 2), rng);
    CHECK(got.num().n_terms() == 1);
    CHECK(got.num().coeff(ExpVec{0, 0}).value() == 1234);
    CHECK(got.den().coeff(ExpVec{0, 0}).value() == 1);
  }
  SUBCASE("identically zero black box short-circuits") {
    FunctionProbeSource src([&](const std::vector<FieldElement>& z) {
      (void)z;
      return FieldElement(f, 0);
    });
    Rng rng(9);
    RationalFunctionFF got = hybrid_racer(src, f, 3, Shift::zero(f, 3), rng);
    CHECK(got.is_zero());
    CHECK(src.probes < 8);
  }
  SUBCASE("1/(z1+z2)") {
    auto fn = [&](const std::vector<FieldElement>& z) {
      return FieldElement(f, 1) / (z[0] + z[1]);
    };
    FunctionProbeSource src(fn);
    Rng rng(10);
    Shift shift = scan_for_shift(src, f, 2, rng);
    RationalFunctionFF got = hybrid_racer(src, f, 2, shift, rng);
    for (int i = 0; i < 50; ++i) {
      std::vector<FieldElement> pt{random_element(f, rng), random_element(f, rng)};
      if ((pt[0] + pt[1]).is_zero()) continue;
      CHECK(got.eval(pt) == fn(pt));
    }
  }
  SUBCASE("univariate rational function") {
    auto fn = [&](const std::vector<FieldElement>& z) {
      return (z[0].pow(2) + FieldElement(f, 1)) / z[0];
    };
    FunctionProbeSource src(fn);
    Rng rng(11);
    RationalFunctionFF got = hybrid_racer(src, f, 1, Shift::zero(f, 1), rng);
    CHECK(got.num().n_terms() == 2);
    CHECK(got.den().n_terms() == 1);
    for (int i = 0; i < 20; ++i) {
      std::vector<FieldElement> pt{random_element(f, rng, 1)};
      CHECK(got.eval(pt) == fn(pt));
    }
  }
}

TEST_CASE("scan_for_shift") {
  const PrimeField& f = prime_sequence(0);
  SUBCASE("worked example shifts only the last variable") {
    FunctionProbeSource src(hr_example);
    Rng rng(21);
    Shift s = scan_for_shift(src, f, 2, rng);
    CHECK(s.s[0].is_zero());
    CHECK(!s.s[1].is_zero());
  }
  SUBCASE("existing constant term means zero shift") {
    FunctionProbeSource src([&](const std::vector<FieldElement>& z) {
      return (FieldElement(f, 1) + z[0]) / (FieldElement(f, 1) + z[1]);
    });
    Rng rng(22);
    Shift s = scan_for_shift(src, f, 2, rng);
    CHECK(s.is_zero());
  }
  SUBCASE("z1*z2/(z1+z2) accepts a single-variable shift") {
    FunctionProbeSource src([&](const std::vector<FieldElement>& z) {
      return z[0] * z[1] / (z[0] + z[1]);
    });
    Rng rng(23);
    Shift s = scan_for_shift(src, f, 2, rng);
    int nonzero = 0;
    for (const auto& x : s.s)
      if (!x.is_zero()) ++nonzero;
    CHECK(nonzero == 1);
  }
}

TEST_CASE("skeleton reuse and lift to Q") {
  const PrimeField& f0 = prime_sequence(0);
  const PrimeField& f1 = prime_sequence(1);

  SUBCASE("integer coefficients lift from a single prime") {
    FunctionProbeSource src(hr_example);
    Rng rng(31);
    Shift shift{{FieldElement(f0, 0), FieldElement(f0, 2)}};
    RationalFunctionFF r0 = hybrid_racer(src, f0, 2, shift, rng);
    auto lifted = lift_to_Q({{r0, f0.modulus()}});
    REQUIRE(lifted.has_value());
    CHECK(lifted->num().n_terms() == 5);
    for (const auto& [e, c] : lifted->num().terms()) CHECK(c == BigRational(1));
    CHECK(lifted->str({"z1", "z2"}) == "(z1*z2^3+z1^2*z2^2+z1^3*z2+z1^4+z2^5)/z2");
  }

  SUBCASE("small fraction 13/7 lifts immediately, a large one needs two primes") {
    const BigRational big_c = BigRational::from_decimal_strings("123456789012345678", "98765432117");
    auto make_fn = [&](const PrimeField& f) {
      return [&f, &big_c](const std::vector<FieldElement>& z) {
        FieldElement small = FieldElement(f, 13) / FieldElement(f, 7);
        return big_c.to_field(f) * z[0] * z[1] + small * z[0].pow(2);
      };
    };
    FunctionProbeSource src0(make_fn(f0));
    Rng rng0(33);
    RationalSkeleton sk;
    Shift sh0 = scan_for_shift(src0, f0, 2, rng0);
    RationalFunctionFF r0 = hybrid_racer(src0, f0, 2, sh0, rng0, {}, &sk);
    // the large coefficient does not fit one 63-bit prime
    CHECK_FALSE(lift_to_Q({{r0, f0.modulus()}}).has_value());

    FunctionProbeSource src1(make_fn(f1));
    Rng rng1(34);
    Shift sh1 = Shift::zero(f1, 2);
    for (std::size_t i = 0; i < sh0.s.size(); ++i)
      if (!sh0.s[i].is_zero()) sh1.s[i] = random_element(f1, rng1, 1);
    RationalFunctionFF r1 = solve_with_skeleton(src1, f1, sk, sh1, rng1);
    auto lifted = lift_to_Q({{r0, f0.modulus()}, {r1, f1.modulus()}});
    REQUIRE(lifted.has_value());
    CHECK(lifted->num().terms().at(ExpVec{1, 1}) == big_c);
    CHECK(lifted->num().terms().at(ExpVec{2, 0}) == BigRational(BigInt(13), BigInt(7)));
  }

  SUBCASE("skeleton mismatch raises the unlucky-prime error") {
    SparsePoly n0(f0, 1), d0(f0, 1), n1(f1, 1), d1(f1, 1);
    n0.add_term({1}, FieldElement(f0, 3));
    d0.add_term({0}, FieldElement(f0, 1));
    n1.add_term({2}, FieldElement(f1, 3));
    d1.add_term({0}, FieldElement(f1, 1));
    RationalFunctionFF a(n0, d0), b(n1, d1);
    CHECK_THROWS_AS(lift_to_Q({{a, f0.modulus()}, {b, f1.modulus()}}),
                    UnluckyPrimeError);
  }
}

TEST_CASE("hybrid racer dense baseline needs many more probes than the racer") {
  const PrimeField& f = prime_sequence(0);
  // f(z1, z2) = z2^12 / (1 + z1): sparse in the interpolated variable z2,
  // so Ben-Or/Tiwari finishes long before the dense Newton pass
  auto fn = [&](const std::vector<FieldElement>& z) {
    return z[1].pow(12) / (FieldElement(f, 1) + z[0]);
  };
  std::size_t racing, dense;
  RationalFunctionFF a = [&] {
    FunctionProbeSource src(fn);
    Rng rng(55);
    RationalFunctionFF r = hybrid_racer(src, f, 2, Shift::zero(f, 2), rng);
    racing = src.probes;
    return r;
  }();
  RationalFunctionFF b = [&] {
    FunctionProbeSource src(fn);
    Rng rng(55);
    HybridOptions opts;
    opts.racer = RacerMode::newton_only;
    opts.prune = false;
    RationalFunctionFF r = hybrid_racer(src, f, 2, Shift::zero(f, 2), rng, opts);
    dense = src.probes;
    return r;
  }();
  CHECK(a == b);
  CHECK(racing < dense);
}
