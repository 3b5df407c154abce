#include <doctest.h>

#include <cmath>

#include "finstar/elemcalc.hpp"
#include "finstar/specanalysis.hpp"
#include "testutil.hpp"

using namespace finstar;
using testutil::Rng;

TEST_SUITE_BEGIN("elemcalc");

TEST_CASE("sqrt_poly exact coefficients") {
  SUBCASE("p_1(x) = x/2") {
    auto p1 = sqrt_poly(1);
    REQUIRE(p1.size() == 2);
    CHECK(p1[0].numerator == "0");
    CHECK(p1[1].numerator == "1");
    CHECK(p1[1].log2_den == 1);
  }
  SUBCASE("p_2(x) = x - x^2/8") {
    auto p2 = sqrt_poly(2);
    REQUIRE(p2.size() == 3);
    CHECK(p2[0].numerator == "0");
    CHECK(p2[1].as_double() == doctest::Approx(1.0));
    CHECK(p2[2].as_double() == doctest::Approx(-0.125));
  }
  SUBCASE("no constant term, exact evaluation matches recursion") {
    // Numerators stay below 2^53 through n = 5, so the double projection
    // of the exact coefficients is itself exact there.
    for (std::size_t n = 0; n <= 5; ++n) {
      auto p = sqrt_poly(n);
      CHECK(p[0].numerator == "0");
      for (double t : {0.0, 0.25, 0.5, 1.0}) {
        double via_coeffs = 0.0;
        for (std::size_t k = p.size(); k-- > 0;)
          via_coeffs = via_coeffs * t + p[k].as_double();
        CHECK(std::abs(via_coeffs - sqrt_poly_eval(t, n)) <= 1e-14);
      }
    }
    CHECK(sqrt_poly(8)[0].numerator == "0");
  }
}

TEST_CASE("sqrt_poly_eval: paper bound and monotonicity") {
  // 0 <= sqrt(t) - p_n(t) < 2/n on a coarse grid here (the acceptance
  // suite runs the full 1e-3 grid for n up to 100).
  for (std::size_t n = 1; n <= 50; n += 7) {
    for (int i = 0; i <= 100; ++i) {
      double t = i / 100.0;
      double gap = std::sqrt(t) - sqrt_poly_eval(t, n);
      CHECK(gap >= 0.0);
      CHECK(gap < 2.0 / static_cast<double>(n));
      CHECK(sqrt_poly_eval(t, n + 1) >= sqrt_poly_eval(t, n));
    }
  }
  CHECK(sqrt_poly_eval(0.0, 17) == 0.0);
}

TEST_CASE("sqrt_series") {
  SUBCASE("zero input") {
    SqrtSeriesResult r = sqrt_series(CMat(2, 2), 10);
    CHECK(op_norm(r.value) == 0.0);
  }
  SUBCASE("scalar -0.75 gives b = -0.5") {
    CMat a = CMat::diag({cxd(-0.75)});
    SqrtSeriesResult r = sqrt_series(a, 260);
    CHECK(std::abs(r.value(0, 0) - cxd(-0.5)) <= 1e-10);
    CHECK(r.tail_bound <= 1e-8);
  }
  SUBCASE("Ford: Hermitian input gives Hermitian root") {
    Rng rng(71);
    CMat h = testutil::random_hermitian(rng, 4);
    h *= cxd(0.9 / spectral_radius(h).value);
    SqrtSeriesResult r = sqrt_series(h, 400);
    CHECK(op_norm(r.value - r.value.adjoint()) <= 1e-10);
    CMat one = CMat::identity(4);
    CMat sq = (one + r.value) * (one + r.value);
    CHECK(op_norm(sq - (one + h)) <= 1e-8);
  }
  SUBCASE("radius at or above one is rejected") {
    CHECK_THROWS_AS(sqrt_series(CMat::identity(2), 10),
                    SpectralRadiusTooLarge);
  }
}

TEST_CASE("positive_sqrt") {
  CHECK(op_norm(positive_sqrt(CMat::diag({4.0, 9.0})) -
                CMat::diag({2.0, 3.0})) <= 1e-12);
  // Spectral decomposition by hand: eigenvalues {1,3} -> {1, sqrt 3}.
  CMat a({{2.0, 1.0}, {1.0, 2.0}});
  CMat r = positive_sqrt(a);
  CHECK(op_norm(r * r - a) <= 1e-10);
  CHECK(positive_test(r, 1e-9));
  auto vals = hermitian_eig(r).values;
  CHECK(vals[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(vals[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK_THROWS_AS(positive_sqrt(CMat::diag({-2.0, -3.0})), NotPositive);
}

TEST_CASE("positive_sqrt round trip on random positives") {
  Rng rng(73);
  for (int t = 0; t < 25; ++t) {
    std::size_t n = 2 + t % 4;
    CMat a = testutil::random_positive(rng, n, 0.1, 3.0);
    CMat r = positive_sqrt(a);
    CHECK(op_norm(r * r - a) <= 1e-8 * (1 + op_norm(a)));
  }
}

TEST_CASE("polar_factorise") {
  SUBCASE("diag(-2, 3)") {
    PolarPair pf = polar_factorise(CMat::diag({-2.0, 3.0}));
    CHECK(op_norm(pf.u - CMat::diag({-1.0, 1.0})) <= 1e-10);
    CHECK(op_norm(pf.p - CMat::diag({2.0, 3.0})) <= 1e-10);
  }
  SUBCASE("unitary input: u = a, p = 1") {
    Rng rng(79);
    CMat a = testutil::random_unitary(rng, 3);
    PolarPair pf = polar_factorise(a);
    CHECK(op_norm(pf.u - a) <= 1e-9);
    CHECK(op_norm(pf.p - CMat::identity(3)) <= 1e-9);
  }
  SUBCASE("normal input: factors commute") {
    PolarPair pf = polar_factorise(CMat::diag({cxd(0.0, 1.0), cxd(2.0)}));
    CHECK(op_norm(pf.u * pf.p - pf.p * pf.u) <= 1e-10);
  }
  SUBCASE("random invertible: u unitary, u p = a") {
    Rng rng(83);
    for (int t = 0; t < 20; ++t) {
      std::size_t n = 2 + t % 4;
      CMat a = testutil::random_matrix(rng, n, n) +
               CMat::identity(n) * cxd(2.0);
      PolarPair pf = polar_factorise(a);
      CHECK(op_norm(pf.u.adjoint() * pf.u - CMat::identity(n)) <= 1e-9);
      CHECK(op_norm(pf.u * pf.p - a) <= 1e-9 * (1 + op_norm(a)));
      CHECK(positive_test(pf.p, 1e-8));
      // The absolute value has the same norm as the element.
      CHECK(std::abs(op_norm(pf.p) - op_norm(a)) <= 1e-9 * (1 + op_norm(a)));
    }
  }
  SUBCASE("singular input rejected") {
    CHECK_THROWS_AS(polar_factorise(CMat::diag({1.0, 0.0})), NotInvertible);
  }
}

TEST_CASE("jordan_parts") {
  SUBCASE("diag(3, -1)") {
    JordanParts jp = jordan_parts(CMat::diag({3.0, -1.0}));
    CHECK(op_norm(jp.plus - CMat::diag({3.0, 0.0})) <= 1e-12);
    CHECK(op_norm(jp.minus - CMat::diag({0.0, 1.0})) <= 1e-12);
  }
  SUBCASE("positive input has vanishing negative part") {
    Rng rng(89);
    CMat a = testutil::random_positive(rng, 3, 0.2, 2.0);
    JordanParts jp = jordan_parts(a);
    CHECK(op_norm(jp.minus) <= 1e-10);
  }
  SUBCASE("random Hermitian: defining identities") {
    Rng rng(97);
    for (int t = 0; t < 20; ++t) {
      std::size_t n = 2 + t % 4;
      CMat a = testutil::random_hermitian(rng, n);
      JordanParts jp = jordan_parts(a);
      CHECK(op_norm(jp.plus * jp.minus) <= 1e-10);
      CHECK(op_norm((jp.plus - jp.minus) - a) <= 1e-10);
      CHECK(positive_test(jp.plus, 1e-9));
      CHECK(positive_test(jp.minus, 1e-9));
      // a_+ = (|a| + a)/2 with |a| = a_+ + a_-.
      CMat absa = jp.plus + jp.minus;
      CHECK(op_norm(jp.plus - (absa + a) * cxd(0.5)) <= 1e-10);
      // -|a| <= a <= |a|.
      CHECK(positive_test(absa - a, 1e-8));
      CHECK(positive_test(absa + a, 1e-8));
    }
  }
  SUBCASE("non-Hermitian rejected") {
    CHECK_THROWS_AS(jordan_parts(CMat({{0.0, 1.0}, {0.0, 0.0}})),
                    NotHermitian);
  }
}

TEST_CASE("monotone inverse: 0 <= a <= b implies b^{-1} <= a^{-1}") {
  Rng rng(101);
  for (int t = 0; t < 15; ++t) {
    std::size_t n = 2 + t % 3;
    CMat a = testutil::random_positive(rng, n, 0.3, 2.0);
    CMat gap = testutil::random_positive(rng, n, 0.0 + 0.05, 1.0);
    CMat b = a + gap;  // a <= b
    CMat diff = inverse(a) - inverse(b);
    CHECK(positive_test(diff, 1e-8));
  }
}

TEST_CASE("products of positives: commuting yes, a non-commuting no") {
  // Commuting positives have positive product.
  CMat a = CMat::diag({1.0, 2.0});
  CMat b = CMat::diag({3.0, 0.5});
  CHECK(positive_test(a * b, 1e-10));
  // Classic non-commuting pair with non-positive product.
  CMat p({{1.0, 0.0}, {0.0, 0.0}});
  CMat q({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(positive_test(p, 1e-10));
  CHECK(positive_test(q, 1e-10));
  CHECK_FALSE(positive_test(p * q, 1e-10));
}

TEST_CASE("cayley_bounded") {
  SUBCASE("a = 0, mu = 1 gives -1") {
    CMat u = cayley_bounded(CMat(2, 2), 1.0);
    CHECK(op_norm(u + CMat::identity(2)) <= 1e-12);
  }
  SUBCASE("a = diag(1), mu = 1 gives -i") {
    CMat u = cayley_bounded(CMat::diag({1.0}), 1.0);
    CHECK(std::abs(u(0, 0) - cxd(0.0, -1.0)) <= 1e-12);
  }
  SUBCASE("random Hermitian: unitary, spectrum on the circle minus 1") {
    Rng rng(103);
    for (int t = 0; t < 15; ++t) {
      CMat a = testutil::random_hermitian(rng, 4);
      double mu = spectral_radius(a).value + 1.0;
      CMat u = cayley_bounded(a, mu);
      CHECK(op_norm(u.adjoint() * u - CMat::identity(4)) <= 1e-9);
      for (const cxd& z : eig(u).values) {
        CHECK(std::abs(std::abs(z) - 1.0) <= 1e-9);
        CHECK(std::abs(z - cxd(1.0)) > 1e-3);
        // Eigenvalues map by lambda -> (lambda - i mu)/(lambda + i mu).
      }
    }
  }
  SUBCASE("mu below the spectral radius is rejected") {
    CHECK_THROWS_AS(cayley_bounded(CMat::diag({2.0, -2.0}), 1.0), MuTooSmall);
  }
}

TEST_SUITE_END();
