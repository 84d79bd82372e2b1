#include <doctest.h>

#include <map>

#include "ratrec/berlekamp_massey.hpp"
#include "ratrec/newton.hpp"
#include "ratrec/racer.hpp"
#include "ratrec/vandermonde.hpp"
#include "ratrec/zippel.hpp"

using namespace ratrec;

namespace {

// dense Gaussian elimination over FieldElement, used as oracle only
std::vector<FieldElement> gauss_oracle(std::vector<std::vector<FieldElement>> a,
                                       std::vector<FieldElement> b) {
  const std::size_t n = b.size();
  const PrimeField& f = b[0].field();
  std::vector<std::uint64_t> m(n * n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = b[i].value();
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a[i][j].value();
  }
  auto x = solve_dense(m, rhs, n, f);
  std::vector<FieldElement> out;
  for (auto v : x) out.emplace_back(f, v);
  return out;
}

} // namespace

TEST_CASE("Berlekamp-Massey worked example over Z509") {
  PrimeField f(509);
  BMState bm(f);
  // probes of z^2 + 1 at 2^1..2^4
  for (std::uint64_t a : {5, 17, 65, 257}) bm.update(FieldElement(f, a));
  CHECK(bm.length() == 2);
  CHECK(bm.hankel_complete());
  DensePolyFF zeta = bm_to_aux_poly(bm);
  CHECK(zeta.degree() == 2);
  CHECK(zeta.coeff(0).value() == 4);
  CHECK(zeta.coeff(1).value() == 504);
  CHECK(zeta.coeff(2).value() == 1);

  auto degrees = bot_find_degrees(zeta, FieldElement(f, 2), 5);
  REQUIRE(degrees.has_value());
  CHECK(*degrees == std::vector<std::uint32_t>{0, 2});
  // zeta(y^1) = 507 per the worked example
  CHECK(zeta.eval(FieldElement(f, 2)).value() == 507);

  std::vector<FieldElement> values{FieldElement(f, 5), FieldElement(f, 17)};
  auto coeffs = solve_shifted_vandermonde(*degrees, FieldElement(f, 2), values);
  CHECK(coeffs[0].value() == 1);
  CHECK(coeffs[1].value() == 1);
}

TEST_CASE("Berlekamp-Massey degenerate sequences") {
  PrimeField f(509);
  SUBCASE("all-zero sequence keeps lambda = 1") {
    BMState bm(f);
    for (int i = 0; i < 6; ++i) bm.update(FieldElement(f, 0));
    CHECK(bm.length() == 0);
    CHECK(bm.lambda().degree() == 0);
    CHECK(bm.lambda().coeff(0).value() == 1);
    DensePolyFF zeta = bm_to_aux_poly(bm);
    CHECK(zeta.degree() == 0);
    auto degs = bot_find_degrees(zeta, FieldElement(f, 2), 10);
    REQUIRE(degs.has_value());
    CHECK(degs->empty());
  }
  SUBCASE("constant sequence gives a length-1 generator annihilating the tail") {
    BMState bm(f);
    for (int i = 0; i < 3; ++i) bm.update(FieldElement(f, 7));
    CHECK(bm.length() == 1);
    CHECK(bm.hankel_complete());
    // lambda_0 == -1 in the relation a_{j+1} = a_j
    DensePolyFF zeta = bm_to_aux_poly(bm);
    CHECK(zeta.degree() == 1);
    CHECK(zeta.coeff(0).value() == 508);
    // annihilation of the relation for every valid j
    for (std::size_t j = 0; j + 1 < bm.sequence().size(); ++j) {
      FieldElement s = bm.sequence()[j + 1] - bm.sequence()[j];
      CHECK(s.is_zero());
    }
  }
  SUBCASE("premature aux poly extraction throws") {
    BMState bm(f);
    bm.update(FieldElement(f, 5));
    bm.update(FieldElement(f, 17));
    bm.update(FieldElement(f, 65));
    CHECK_FALSE(bm.hankel_complete());
    CHECK_THROWS_AS(bm_to_aux_poly(bm), std::logic_error);
  }
}

TEST_CASE("generator annihilation property (Eq-style relation)") {
  const PrimeField& f = prime_sequence(0);
  Rng rng(5);
  for (int it = 0; it < 30; ++it) {
    // random sparse polynomial with T terms
    int T = 1 + static_cast<int>(rng.uniform(0, 6));
    std::map<std::uint32_t, FieldElement> poly;
    while (static_cast<int>(poly.size()) < T)
      poly.emplace(static_cast<std::uint32_t>(rng.uniform(0, 40)), random_element(f, rng, 1));
    FieldElement y = random_element(f, rng, 2);
    auto eval = [&](std::uint64_t i) {
      FieldElement acc(f, 0);
      for (auto& [d, c] : poly) acc += c * y.pow(d).pow(i);
      return acc;
    };
    T = static_cast<int>(poly.size());
    std::vector<FieldElement> a;
    for (int i = 1; i <= 2 * T + 2; ++i) a.push_back(eval(static_cast<std::uint64_t>(i)));
    BMState bm(f);
    for (auto& v : a) bm.update(v);
    CHECK(bm.length() == static_cast<std::uint32_t>(T));
    // sum_k lambda_k a_{j+k} + a_{j+T} = 0 for every valid j (lambda from zeta)
    DensePolyFF zeta = bm_to_aux_poly(bm);
    for (std::size_t j = 0; j + T < a.size(); ++j) {
      FieldElement s(f, 0);
      for (int k = 0; k <= T; ++k) s += zeta.coeff(static_cast<std::size_t>(k)) * a[j + k];
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("BM equals dense Hankel solve for random nonsingular instances") {
  const PrimeField& f = prime_sequence(0);
  Rng rng(99);
  int done = 0;
  while (done < 50) {
    int T = 1 + static_cast<int>(rng.uniform(0, 8));
    std::map<std::uint32_t, FieldElement> poly;
    while (static_cast<int>(poly.size()) < T)
      poly.emplace(static_cast<std::uint32_t>(rng.uniform(0, 64)), random_element(f, rng, 1));
    T = static_cast<int>(poly.size());
    FieldElement y = random_element(f, rng, 2);
    std::vector<FieldElement> a;
    for (int i = 1; i <= 2 * T; ++i) {
      FieldElement acc(f, 0);
      for (auto& [d, c] : poly) acc += c * y.pow(d).pow(static_cast<std::uint64_t>(i));
      a.push_back(acc);
    }
    // Hankel system rows: sum_k lambda_k a_{j+k} = -a_{j+T}, j = 0..T-1
    std::vector<std::vector<FieldElement>> m(T, std::vector<FieldElement>(T, FieldElement(f, 0)));
    std::vector<FieldElement> rhs(T, FieldElement(f, 0));
    for (int j = 0; j < T; ++j) {
      for (int k = 0; k < T; ++k) m[j][k] = a[j + k];
      rhs[j] = -a[j + T];
    }
    std::vector<FieldElement> lam;
    try {
      lam = gauss_oracle(m, rhs);
    } catch (const UnluckyEvaluationError&) {
      continue; // singular Hankel instance, skip
    }
    BMState bm(f);
    for (auto& v : a) bm.update(v);
    DensePolyFF zeta = bm_to_aux_poly(bm);
    REQUIRE(bm.length() == static_cast<std::uint32_t>(T));
    for (int k = 0; k < T; ++k) CHECK(zeta.coeff(static_cast<std::size_t>(k)) == lam[k]);
    ++done;
  }
}

TEST_CASE("bot_find_degrees misses roots for irreducible aux polynomials") {
  // z^2 + 1 over Z_7 has no roots at all (-1 is not a QR mod 7)
  PrimeField f(7);
  DensePolyFF zeta(f, {1, 0, 1});
  auto degs = bot_find_degrees(zeta, FieldElement(f, 3), 5);
  CHECK_FALSE(degs.has_value());
}

TEST_CASE("Newton interpolation") {
  PrimeField f(509);
  SUBCASE("constant function finishes after two probes") {
    NewtonInterpolator ni(f, 1);
    CHECK(ni.update(FieldElement(f, 2), FieldElement(f, 42)) == NewtonInterpolator::Status::running);
    CHECK(ni.update(FieldElement(f, 4), FieldElement(f, 42)) == NewtonInterpolator::Status::done);
    DensePolyFF p = ni.result();
    CHECK(p.degree() == 0);
    CHECK(p.coeff(0).value() == 42);
  }
  SUBCASE("z^2 + 1 at points 2,4,8,16 with eta = 1") {
    NewtonInterpolator ni(f, 1);
    std::uint64_t pts[] = {2, 4, 8, 16};
    NewtonInterpolator::Status st = NewtonInterpolator::Status::running;
    int used = 0;
    for (auto x : pts) {
      FieldElement xe(f, x);
      st = ni.update(xe, xe * xe + FieldElement(f, 1));
      ++used;
      if (st == NewtonInterpolator::Status::done) break;
    }
    CHECK(st == NewtonInterpolator::Status::done);
    CHECK(used == 4);
    DensePolyFF p = ni.result();
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0).value() == 1);
    CHECK(p.coeff(1).value() == 0);
    CHECK(p.coeff(2).value() == 1);
  }
  SUBCASE("repeated probe point throws") {
    NewtonInterpolator ni(f, 1);
    ni.update(FieldElement(f, 3), FieldElement(f, 10));
    CHECK_THROWS_AS(ni.update(FieldElement(f, 3), FieldElement(f, 10)), std::invalid_argument);
  }
}

TEST_CASE("shifted Vandermonde solver") {
  PrimeField f(509);
  SUBCASE("worked example") {
    std::vector<FieldElement> values{FieldElement(f, 5), FieldElement(f, 17)};
    auto c = solve_shifted_vandermonde({0, 2}, FieldElement(f, 2), values);
    CHECK(c[0].value() == 1);
    CHECK(c[1].value() == 1);
  }
  SUBCASE("single unknown") {
    // degrees [3], value f(y) -> c = f(y) * y^-3
    FieldElement y(f, 7);
    FieldElement val(f, 123);
    auto c = solve_shifted_vandermonde({3}, y, std::vector<FieldElement>{val});
    CHECK(c[0] == val / y.pow(3));
  }
  SUBCASE("random instances equal dense elimination") {
    const PrimeField& big = prime_sequence(0);
    Rng rng(3);
    for (int it = 0; it < 50; ++it) {
      int T = 1 + static_cast<int>(rng.uniform(0, 16));
      std::vector<std::uint32_t> degs;
      std::map<std::uint32_t, bool> seen;
      while (static_cast<int>(degs.size()) < T) {
        std::uint32_t d = static_cast<std::uint32_t>(rng.uniform(0, 200));
        if (!seen[d]) {
          seen[d] = true;
          degs.push_back(d);
        }
      }
      FieldElement y = random_element(big, rng, 2);
      std::vector<FieldElement> coeffs;
      for (int j = 0; j < T; ++j) coeffs.push_back(random_element(big, rng, 1));
      std::vector<FieldElement> values;
      for (int i = 1; i <= T; ++i) {
        FieldElement acc(big, 0);
        for (int j = 0; j < T; ++j)
          acc += coeffs[static_cast<std::size_t>(j)] * y.pow(degs[static_cast<std::size_t>(j)]).pow(static_cast<std::uint64_t>(i));
        values.push_back(acc);
      }
      auto got = solve_shifted_vandermonde(degs, y, values);
      // dense oracle
      std::vector<std::vector<FieldElement>> m(static_cast<std::size_t>(T));
      for (int i = 1; i <= T; ++i) {
        auto& row = m[static_cast<std::size_t>(i - 1)];
        for (int j = 0; j < T; ++j)
          row.push_back(y.pow(degs[static_cast<std::size_t>(j)]).pow(static_cast<std::uint64_t>(i)));
      }
      auto oracle = gauss_oracle(m, values);
      for (int j = 0; j < T; ++j) {
        CHECK(got[static_cast<std::size_t>(j)] == oracle[static_cast<std::size_t>(j)]);
        CHECK(got[static_cast<std::size_t>(j)] == coeffs[static_cast<std::size_t>(j)]);
      }
    }
  }
  SUBCASE("duplicate node throws") {
    std::vector<FieldElement> nodes{FieldElement(f, 9), FieldElement(f, 9)};
    std::vector<FieldElement> vals{FieldElement(f, 1), FieldElement(f, 2)};
    CHECK_THROWS_AS(solve_shifted_vandermonde_nodes(nodes, vals), UnluckyEvaluationError);
  }
}

TEST_CASE("racer") {
  const PrimeField& f = prime_sequence(0);
  SUBCASE("z^100: BOT wins after 2T + eta = 3 probes") {
    Rng rng(17);
    FieldElement y = random_element(f, rng, 2);
    Racer racer(f, y, 1, 200);
    Racer::Status st = Racer::Status::running;
    while (st == Racer::Status::running) {
      FieldElement pt = racer.next_point();
      st = racer.update(pt.pow(100));
    }
    CHECK(racer.probes() == 3);
    CHECK(racer.winner() == Racer::Winner::bot);
    REQUIRE(racer.result().size() == 1);
    CHECK(racer.result()[0].first == 100);
    CHECK(racer.result()[0].second.value() == 1);
  }
  SUBCASE("dense degree-5 polynomial: Newton wins after D + 1 + eta = 7 probes") {
    Rng rng(18);
    FieldElement y = random_element(f, rng, 2);
    std::vector<FieldElement> cs;
    for (int i = 0; i <= 5; ++i) cs.push_back(random_element(f, rng, 1));
    auto eval = [&](const FieldElement& z) {
      FieldElement acc(f, 0);
      for (int i = 5; i >= 0; --i) acc = acc * z + cs[static_cast<std::size_t>(i)];
      return acc;
    };
    Racer racer(f, y, 1, std::nullopt); // no bound: pure early termination
    Racer::Status st = Racer::Status::running;
    while (st == Racer::Status::running) st = racer.update(eval(racer.next_point()));
    CHECK(racer.probes() == 7);
    CHECK(racer.winner() == Racer::Winner::newton);
    REQUIRE(racer.result().size() == 6);
    for (int i = 0; i <= 5; ++i)
      CHECK(racer.result()[static_cast<std::size_t>(i)].second == cs[static_cast<std::size_t>(i)]);
  }
  SUBCASE("newton and BOT results agree term by term") {
    Rng rng(19);
    for (int it = 0; it < 20; ++it) {
      FieldElement y = random_element(f, rng, 2);
      std::map<std::uint32_t, FieldElement> poly;
      int T = 1 + static_cast<int>(rng.uniform(0, 4));
      while (static_cast<int>(poly.size()) < T)
        poly.emplace(static_cast<std::uint32_t>(rng.uniform(0, 12)), random_element(f, rng, 1));
      auto eval = [&](const FieldElement& z) {
        FieldElement acc(f, 0);
        for (auto& [d, c] : poly) acc += c * z.pow(d);
        return acc;
      };
      Racer a(f, y, 1, 12, RacerMode::race);
      while (a.update(eval(a.next_point())) == Racer::Status::running) {}
      Racer b(f, y, 1, std::nullopt, RacerMode::newton_only);
      while (b.update(eval(b.next_point())) == Racer::Status::running) {}
      CHECK(b.winner() == Racer::Winner::newton);
      REQUIRE(a.result().size() == poly.size());
      CHECK(a.result() == b.result());
    }
  }
  SUBCASE("zero polynomial") {
    Rng rng(20);
    FieldElement y = random_element(f, rng, 2);
    Racer racer(f, y, 1, 10);
    Racer::Status st = Racer::Status::running;
    while (st == Racer::Status::running) st = racer.update(FieldElement(f, 0));
    CHECK(racer.result().empty());
  }
}

TEST_CASE("zippel interpolation") {
  const PrimeField& f = prime_sequence(0);
  Rng rng(31);

  SUBCASE("single monomial z1*z2") {
    auto oracle = [&](const std::vector<FieldElement>& z) { return z[0] * z[1]; };
    std::vector<FieldElement> anchors{random_element(f, rng, 2), random_element(f, rng, 2)};
    SparsePoly p = zippel_interpolate(oracle, f, 2, anchors, 2);
    REQUIRE(p.n_terms() == 1);
    CHECK(p.coeff(ExpVec{1, 1}).value() == 1);
  }

  SUBCASE("univariate embedded in two variables matches direct racer result") {
    auto oracle = [&](const std::vector<FieldElement>& z) {
      return z[1].pow(7) + z[1] * FieldElement(f, 3);
    };
    std::vector<FieldElement> anchors{random_element(f, rng, 2), random_element(f, rng, 2)};
    SparsePoly p = zippel_interpolate(oracle, f, 2, anchors, 7);
    Racer racer(f, anchors[1], 1, 7);
    auto eval1 = [&](const FieldElement& z) { return z.pow(7) + z * FieldElement(f, 3); };
    while (racer.update(eval1(racer.next_point())) == Racer::Status::running) {}
    REQUIRE(p.n_terms() == racer.result().size());
    for (auto& [d, c] : racer.result()) CHECK(p.coeff(ExpVec{0, d}) == c);
  }

  SUBCASE("five-term numerator polynomial, verified at 50 random points") {
    // z1*z2^3 + z1^2*z2^2 + z1^3*z2 + z1^4 + z2^5
    auto oracle = [&](const std::vector<FieldElement>& z) {
      return z[0] * z[1].pow(3) + z[0].pow(2) * z[1].pow(2) + z[0].pow(3) * z[1] +
             z[0].pow(4) + z[1].pow(5);
    };
    std::vector<FieldElement> anchors{random_element(f, rng, 2), random_element(f, rng, 2)};
    SparsePoly p = zippel_interpolate(oracle, f, 2, anchors, 5);
    CHECK(p.n_terms() == 5);
    for (int i = 0; i < 50; ++i) {
      std::vector<FieldElement> pt{random_element(f, rng), random_element(f, rng)};
      CHECK(p.eval(pt) == oracle(pt));
    }
  }

  SUBCASE("interpolation soundness on random sparse polynomials") {
    for (int it = 0; it < 10; ++it) {
      std::uint32_t nv = 2 + static_cast<std::uint32_t>(rng.uniform(0, 3));
      SparsePoly truth(f, nv);
      int T = 1 + static_cast<int>(rng.uniform(0, 8));
      for (int t = 0; t < T; ++t) {
        ExpVec e(nv);
        for (auto& x : e) x = static_cast<std::uint32_t>(rng.uniform(0, 5));
        truth.add_term(e, random_element(f, rng, 1));
      }
      std::uint32_t bound = truth.max_total_degree();
      auto oracle = [&](const std::vector<FieldElement>& z) { return truth.eval(z); };
      std::vector<FieldElement> anchors;
      for (std::uint32_t i = 0; i < nv; ++i) anchors.push_back(random_element(f, rng, 2));
      SparsePoly p = zippel_interpolate(oracle, f, nv, anchors, bound);
      CHECK(p == truth);
    }
  }
}
