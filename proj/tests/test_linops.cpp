#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "finstar/eig.hpp"
#include "testutil.hpp"

using namespace finstar;
using testutil::Rng;

namespace {

double multiset_distance(std::vector<cxd> a, std::vector<cxd> b) {
  // Greedy matching; adequate for well separated test spectra.
  if (a.size() != b.size()) return HUGE_VAL;
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const cxd& x : a) {
    double best = HUGE_VAL;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i]) continue;
      double d = std::abs(x - b[i]);
      if (d < best) {
        best = d;
        bi = i;
      }
    }
    used[bi] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("linops");

TEST_CASE("op_norm on reference matrices") {
  CHECK(op_norm(CMat::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(op_norm(CMat::diag({1.0, 2.0})) == doctest::Approx(2.0).epsilon(1e-12));
  // Hand oracle: m*m = diag(0,1), largest singular value 1.
  CMat nil({{0.0, 1.0}, {0.0, 0.0}});
  CHECK(op_norm(nil) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(op_norm(CMat()), InvalidShape);
}

TEST_CASE("op_norm satisfies the C*-identity on random matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 8;
    CMat m = testutil::random_matrix(rng, n, n);
    double lhs = op_norm(m) * op_norm(m);
    double rhs = op_norm(m.adjoint() * m);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * lhs + 1e-14);
  }
}

TEST_CASE("eig on fixed spectra") {
  SUBCASE("diagonal") {
    EigenDecomp d = eig(CMat::diag({cxd(1.0), cxd(0.0, 1.0)}));
    // Lexicographic order by (re, im): i before 1.
    CHECK(d.values[0] == cxd(0.0, 1.0));
    CHECK(d.values[1] == cxd(1.0, 0.0));
  }
  SUBCASE("swap matrix has eigenvalues -1, 1") {
    EigenDecomp d = eig(CMat({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(d.values[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(d.values[1].real() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("[[2,1],[1,2]] has eigenvalues 1, 3") {
    EigenDecomp d = eig(CMat({{2.0, 1.0}, {1.0, 2.0}}));
    CHECK(d.values[0].real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.values[1].real() == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("non-square rejected") {
    CHECK_THROWS_AS(eig(CMat(2, 3)), InvalidShape);
  }
}

TEST_CASE("eig residual and orthonormality on random normal matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 6;
    CMat m = testutil::random_normal(rng, n);
    EigenDecomp d = eig(m);
    double norm = op_norm(m);
    CHECK(d.residual <= 1e-8);
    for (std::size_t j = 0; j < n; ++j) {
      CMat vj = d.vectors.column(j);
      CHECK(std::abs(vec_norm(vj) - 1.0) <= 1e-10);
      for (std::size_t k = j + 1; k < n; ++k)
        CHECK(std::abs(frobenius_inner(vj, d.vectors.column(k))) <= 1e-9);
    }
    // Reconstruction V diag(lambda) V* = m.
    CMat rec = d.vectors * CMat::diag(d.values) * d.vectors.adjoint();
    CHECK(op_norm(rec - m) <= 1e-8 * std::max(1.0, norm));
  }
}

TEST_CASE("eig on random general matrices: residual and norm bound") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 6;
    CMat m = testutil::random_matrix(rng, n, n);
    EigenDecomp d = eig(m);
    double norm = op_norm(m);
    CHECK(d.residual <= 1e-7);
    // Spectral radius bounded by the operator norm.
    for (const cxd& lam : d.values) CHECK(std::abs(lam) <= norm * (1 + 1e-9));
    // Eigenvalues agree with those of the characteristic pairs under adjoint.
    EigenDecomp da = eig(m.adjoint());
    std::vector<cxd> conj_vals;
    for (const cxd& lam : d.values) conj_vals.push_back(std::conj(lam));
    CHECK(multiset_distance(conj_vals, da.values) <= 1e-7 * (1 + norm));
  }
}

TEST_CASE("eig handles defective matrices") {
  CMat jordan({{0.0, 1.0}, {0.0, 0.0}});
  EigenDecomp d = eig(jordan);
  CHECK(std::abs(d.values[0]) <= 1e-12);
  CHECK(std::abs(d.values[1]) <= 1e-12);
  CHECK(d.residual <= 1e-10);
}

TEST_CASE("hermitian_eig sorts ascending with orthonormal vectors") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 7;
    CMat m = testutil::random_hermitian(rng, n);
    HermitianEig he = hermitian_eig(m);
    CHECK(std::is_sorted(he.values.begin(), he.values.end()));
    CMat qhq = he.vectors.adjoint() * m * he.vectors;
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(qhq(i, i) - he.values[i]) <= 1e-10 * (1 + std::abs(he.values[i])));
    CMat gram = he.vectors.adjoint() * he.vectors;
    CHECK(op_norm(gram - CMat::identity(n)) <= 1e-12);
  }
}

TEST_CASE("svd reconstructs and orders singular values") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 1 + trial % 6, c = 1 + (trial / 2) % 6;
    CMat m = testutil::random_matrix(rng, r, c);
    Svd s = svd(m);
    CHECK(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()));
    CMat rec = s.u * CMat::diag(std::vector<cxd>(s.sigma.begin(), s.sigma.end())) *
               s.v.adjoint();
    CHECK((rec - m).frobenius() <= 1e-11 * (1 + m.frobenius()));
    CHECK(std::abs(s.sigma.front() - op_norm(m)) <= 1e-10 * (1 + s.sigma.front()));
  }
}

TEST_CASE("nullspace on reference inputs") {
  CHECK(nullspace(CMat::identity(2)).cols() == 0);
  CMat z22(2, 2);
  CMat nz = nullspace(z22);
  CHECK(nz.cols() == 2);
  CHECK(op_norm(nz.adjoint() * nz - CMat::identity(2)) <= 1e-12);
  // SVD by hand: [[1,0],[0,0]] kills e2.
  CMat m({{1.0, 0.0}, {0.0, 0.0}});
  CMat ns = nullspace(m);
  REQUIRE(ns.cols() == 1);
  CHECK(std::abs(ns(0, 0)) <= 1e-12);
  CHECK(std::abs(std::abs(ns(1, 0)) - 1.0) <= 1e-12);
}

TEST_CASE("nullspace columns really annihilate") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 3 + trial % 4;
    // Build a matrix with known rank deficiency 1.
    CMat m = testutil::random_matrix(rng, n, n);
    CMat last = m.column(n - 2);
    m.set_column(n - 1, last);  // duplicate column
    CMat ns = nullspace(m, 1e-10);
    REQUIRE(ns.cols() >= 1);
    for (std::size_t j = 0; j < ns.cols(); ++j)
      CHECK(vec_norm(m * ns.column(j)) <= 1e-9 * op_norm(m));
  }
}

TEST_CASE("solve and inverse") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + trial % 6;
    CMat a = testutil::random_matrix(rng, n, n) + CMat::identity(n) * cxd(2.0);
    CMat b = testutil::random_matrix(rng, n, 2);
    CMat x = solve(a, b);
    CHECK((a * x - b).frobenius() <= 1e-10 * (1 + b.frobenius()));
    CMat ai = inverse(a);
    CHECK(op_norm(a * ai - CMat::identity(n)) <= 1e-10);
  }
  CHECK_THROWS_AS(solve(CMat(2, 2), CMat::identity(2)), NotInvertible);
}

TEST_SUITE_END();
