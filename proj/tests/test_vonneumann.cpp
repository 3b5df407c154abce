#include <doctest.h>

#include <cmath>

#include "finstar/specmeasure.hpp"
#include "finstar/vonneumann.hpp"
#include "testutil.hpp"

using namespace finstar;
using testutil::Rng;

namespace {

OperatorSet opset(std::size_t n, std::vector<CMat> mats, bool star = true) {
  OperatorSet s;
  s.carrier_dim = n;
  s.mats = std::move(mats);
  s.star_closed = star;
  return s;
}

OperatorSet diagonal_set(std::size_t n) {
  std::vector<CMat> mats;
  for (std::size_t i = 0; i < n; ++i) {
    CMat e(n, n);
    e(i, i) = 1.0;
    mats.push_back(e);
  }
  return opset(n, std::move(mats));
}

Representation diag_rep(std::size_t n) {
  Representation pi;
  pi.carrier_dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    CMat e(n, n);
    e(i, i) = 1.0;
    pi.mats.push_back(e);
  }
  return pi;
}

}  // namespace

TEST_SUITE_BEGIN("vonneumann");

TEST_CASE("commutant reference cases") {
  SUBCASE("commutant of the identity is everything") {
    OperatorSet s = opset(2, {CMat::identity(2)});
    CHECK(commutant(s).mats.size() == 4);
  }
  SUBCASE("commutant of all of M_n is the scalars") {
    StarAlgebra m2 = testutil::matrix_algebra(2);
    OperatorSet s = opset(2, m2.rep_mats);
    OperatorSet c = commutant(s);
    REQUIRE(c.mats.size() == 1);
    CHECK(op_norm(c.mats[0] * (cxd(1.0) / c.mats[0](0, 0)) -
                  CMat::identity(2)) <= 1e-9);
  }
  SUBCASE("commutant of the diagonal algebra is itself") {
    OperatorSet c = commutant(diagonal_set(3));
    CHECK(c.mats.size() == 3);
    CHECK(span_residual(c, diagonal_set(3)) <= 1e-10);
  }
  SUBCASE("commutant basis is trace-orthonormal and closed under product") {
    Rng rng(3);
    CMat a = testutil::random_matrix(rng, 4, 4);
    OperatorSet c = commutant(opset(4, {a}, true));
    for (std::size_t i = 0; i < c.mats.size(); ++i)
      for (std::size_t j = 0; j < c.mats.size(); ++j) {
        cxd g = frobenius_inner(c.mats[i], c.mats[j]);
        CHECK(std::abs(g - (i == j ? cxd(1.0) : cxd(0.0))) <= 1e-9);
      }
    // S' is an algebra: pairwise products stay in the span.
    OperatorSet prods;
    prods.carrier_dim = 4;
    for (const CMat& x : c.mats)
      for (const CMat& y : c.mats) prods.mats.push_back(x * y);
    CHECK(span_residual(prods, c) <= 1e-8);
  }
  SUBCASE("empty set behaves as {0}: commutant is everything") {
    OperatorSet c = commutant(opset(3, {}));
    CHECK(c.mats.size() == 9);
  }
}

TEST_CASE("bicommutant") {
  SUBCASE("sigma_x generates span{1, sigma_x}") {
    CMat sx({{0.0, 1.0}, {1.0, 0.0}});
    OperatorSet b = bicommutant(opset(2, {sx}));
    CHECK(b.mats.size() == 2);
    OperatorSet expect = opset(2, {CMat::identity(2), sx});
    CHECK(span_residual(b, expect) <= 1e-9);
    CHECK(span_residual(expect, b) <= 1e-9);
  }
  SUBCASE("double commutant equals the span closure") {
    Rng rng(5);
    for (int t = 0; t < 8; ++t) {
      CMat g1 = testutil::random_matrix(rng, 4, 4);
      CMat g2 = testutil::random_matrix(rng, 4, 4);
      OperatorSet gens = opset(4, {g1, g2}, true);
      OperatorSet closure = algebra_closure(gens);
      OperatorSet bic = bicommutant(gens);
      CHECK(span_residual(closure, bic) <= 1e-8);
      CHECK(span_residual(bic, closure) <= 1e-8);
    }
  }
  SUBCASE("S''' = S'") {
    Rng rng(7);
    CMat g = testutil::random_matrix(rng, 3, 3);
    OperatorSet s = opset(3, {g}, true);
    OperatorSet sp = commutant(s);
    OperatorSet sppp = commutant(bicommutant(s));
    CHECK(span_residual(sp, sppp) <= 1e-8);
    CHECK(span_residual(sppp, sp) <= 1e-8);
  }
  SUBCASE("W* of a normal set is commutative, W*(b) = {b}''") {
    Rng rng(11);
    CMat b = testutil::random_normal(rng, 4);
    OperatorSet gens = opset(4, {b}, true);
    OperatorSet wstar = algebra_closure(gens);
    for (const CMat& x : wstar.mats)
      for (const CMat& y : wstar.mats)
        CHECK(op_norm(x * y - y * x) <= 1e-9);
    OperatorSet bic = bicommutant(gens);
    CHECK(span_residual(wstar, bic) <= 1e-8);
    CHECK(span_residual(bic, wstar) <= 1e-8);
  }
}

TEST_CASE("Fuglede-Putnam at matrix scale: {b}' commutes with b*") {
  Rng rng(13);
  CMat b = testutil::random_normal(rng, 4);
  OperatorSet c = commutant(opset(4, {b}, false));
  for (const CMat& x : c.mats)
    CHECK(op_norm(x * b.adjoint() - b.adjoint() * x) <= 1e-9);
}

TEST_CASE("spectral resolution commutant equality {b}' = P'") {
  Rng rng(17);
  CMat b = testutil::random_normal(rng, 4);
  ResolutionOfIdentity p = spectral_resolution(b);
  OperatorSet cb = commutant(opset(4, {b}, false));
  OperatorSet cp = commutant(opset(4, p.projections, false));
  CHECK(span_residual(cb, cp) <= 1e-8);
  CHECK(span_residual(cp, cb) <= 1e-8);
}

TEST_CASE("irreducibility_report") {
  SUBCASE("M_n on C^n is irreducible") {
    StarAlgebra m2 = testutil::matrix_algebra(2);
    Representation pi;
    pi.carrier_dim = 2;
    pi.mats = m2.rep_mats;
    IrreducibilityReport r = irreducibility_report(pi);
    CHECK(r.irreducible);
    CHECK(r.commutant_dim == 1);
    CHECK(r.multiplicity_free);
  }
  SUBCASE("D2 on C^2: commutant dim 2, multiplicity-free") {
    IrreducibilityReport r = irreducibility_report(diag_rep(2));
    CHECK_FALSE(r.irreducible);
    CHECK(r.commutant_dim == 2);
    CHECK(r.multiplicity_free);
  }
  SUBCASE("amplification pi + pi has 2x2 block commutant") {
    StarAlgebra m2 = testutil::matrix_algebra(2);
    Representation pi;
    pi.carrier_dim = 4;
    for (const CMat& m : m2.rep_mats) {
      CMat blk(4, 4);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          blk(i, j) = m(i, j);
          blk(2 + i, 2 + j) = m(i, j);
        }
      pi.mats.push_back(blk);
    }
    IrreducibilityReport r = irreducibility_report(pi);
    CHECK(r.commutant_dim == 4);
    CHECK_FALSE(r.multiplicity_free);
  }
  SUBCASE("zero representation rejected") {
    Representation pi;
    pi.carrier_dim = 2;
    pi.mats = {CMat(2, 2)};
    CHECK_THROWS_AS(irreducibility_report(pi), ZeroRepresentation);
  }
}

TEST_CASE("vector_report") {
  OperatorSet d2 = diagonal_set(2);
  SUBCASE("(1,1)/sqrt2 is cyclic and separating for D2") {
    CMat x(2, 1);
    x(0, 0) = x(1, 0) = 1.0 / std::sqrt(2.0);
    VectorReport r = vector_report(d2, x);
    CHECK(r.cyclic);
    CHECK(r.separating);
  }
  SUBCASE("e1 is neither for D2") {
    CMat x(2, 1);
    x(0, 0) = 1.0;
    VectorReport r = vector_report(d2, x);
    CHECK_FALSE(r.cyclic);
    CHECK_FALSE(r.separating);
  }
  SUBCASE("zero vector rejected") {
    CHECK_THROWS_AS(vector_report(d2, CMat(2, 1)), ZeroVector);
  }
  SUBCASE("duality: cyclic for S iff separating for S'") {
    Rng rng(19);
    for (int t = 0; t < 25; ++t) {
      // A random commutative projection algebra with a full block.
      std::size_t n = 3 + t % 3;
      CMat b = testutil::random_normal(rng, n);
      OperatorSet s = algebra_closure(opset(n, {b}, true));
      OperatorSet sp = commutant(s);
      CMat x = testutil::random_vector(rng, n);
      VectorReport rs = vector_report(s, x);
      VectorReport rsp = vector_report(sp, x);
      CHECK(rs.cyclic == rsp.separating);
      CHECK(rsp.cyclic == rs.separating);
    }
  }
}

TEST_CASE("find_separating_vector on a commutative set") {
  Rng rng(23);
  CMat b = testutil::random_normal(rng, 4);
  OperatorSet s = algebra_closure(opset(4, {b}, true));
  SeparatingSearch found = find_separating_vector(s, 1);
  REQUIRE(found.vector.has_value());
  CHECK(found.certificate > 0.0);
  VectorReport r = vector_report(s, *found.vector);
  CHECK(r.separating);
}

TEST_CASE("diagonalise_cyclic") {
  StarAlgebra d2alg;  // abstract D2: two orthogonal idempotent generators
  d2alg.dim = 2;
  d2alg.mult.assign(2, std::vector<std::vector<cxd>>(2, std::vector<cxd>(2)));
  d2alg.mult[0][0][0] = 1.0;
  d2alg.mult[1][1][1] = 1.0;
  d2alg.star = CMat::identity(2);
  d2alg.norm_tag = NormTag::Sup;
  d2alg = build_algebra(std::move(d2alg));

  SUBCASE("uniform cyclic vector: mu = (1/2, 1/2)") {
    CMat c(2, 1);
    c(0, 0) = c(1, 0) = 1.0 / std::sqrt(2.0);
    DiagonalisationResult d = diagonalise_cyclic(d2alg, diag_rep(2), c);
    REQUIRE(d.measure.size() == 2);
    CHECK(d.measure[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(d.measure[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(d.intertwining_residual <= 1e-9);
    CHECK(op_norm(d.unitary * d.unitary.adjoint() - CMat::identity(2)) <=
          1e-9);
  }
  SUBCASE("weighted cyclic vector: mu = (0.2, 0.8)") {
    CMat c(2, 1);
    c(0, 0) = std::sqrt(0.2);
    c(1, 0) = std::sqrt(0.8);
    DiagonalisationResult d = diagonalise_cyclic(d2alg, diag_rep(2), c);
    REQUIRE(d.measure.size() == 2);
    double lo = std::min(d.measure[0], d.measure[1]);
    double hi = std::max(d.measure[0], d.measure[1]);
    CHECK(lo == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(hi == doctest::Approx(0.8).epsilon(1e-9));
  }
  SUBCASE("non-cyclic vector rejected") {
    CMat c(2, 1);
    c(0, 0) = 1.0;
    CHECK_THROWS_AS(diagonalise_cyclic(d2alg, diag_rep(2), c), NotCyclic);
  }
  SUBCASE("random cyclic commutative reps on dims 2..5") {
    Rng rng(29);
    for (std::size_t n = 2; n <= 5; ++n) {
      // pi generated by a random normal matrix with distinct eigenvalues,
      // viewed as a representation of the abstract polynomial algebra.
      CMat b = testutil::random_normal(rng, n);
      StarAlgebra alg;  // span{1, b-ish generators} abstractly: use closure
      OperatorSet closure = algebra_closure(opset(n, {b}, true));
      // Present the closure itself as the representation of an abstract
      // commutative *-algebra with the same structure constants.
      alg.dim = closure.mats.size();
      alg.mult.assign(alg.dim, std::vector<std::vector<cxd>>(
                                   alg.dim, std::vector<cxd>(alg.dim)));
      alg.star = CMat(alg.dim, alg.dim);
      alg.norm_tag = NormTag::Operator;
      alg.rep_mats = closure.mats;
      for (std::size_t i = 0; i < alg.dim; ++i) {
        // Expand products and adjoints over the trace-orthonormal basis.
        for (std::size_t j = 0; j < alg.dim; ++j) {
          CMat prod = closure.mats[i] * closure.mats[j];
          for (std::size_t k = 0; k < alg.dim; ++k)
            alg.mult[i][j][k] = frobenius_inner(prod, closure.mats[k]);
        }
        CMat adj = closure.mats[i].adjoint();
        for (std::size_t k = 0; k < alg.dim; ++k)
          alg.star(i, k) = frobenius_inner(adj, closure.mats[k]);
      }
      alg = build_algebra(std::move(alg), 1e-8);
      Representation pi;
      pi.carrier_dim = n;
      pi.mats = closure.mats;

      SeparatingSearch sep = find_separating_vector(closure, 3);
      REQUIRE(sep.vector.has_value());
      DiagonalisationResult d = diagonalise_cyclic(alg, pi, *sep.vector);
      CHECK(d.intertwining_residual <= 1e-9);
      CHECK(op_norm(d.unitary * d.unitary.adjoint() -
                    CMat::identity(d.measure.size())) <= 1e-9);
      double total = 0.0;
      for (double w : d.measure) total += w;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
      // mu_t = <P_t c, c> against the spectral resolution of the closure:
      // each atom weight matches |P_t c|^2 for the joint resolution; the
      // diagonalisation reports exactly those weights.
      // Cyclic commutative representations are multiplicity-free.
      IrreducibilityReport rep = irreducibility_report(pi);
      CHECK(rep.multiplicity_free);
      // Maximal commutativity: pi' = W*(pi) as subspaces.
      OperatorSet comm = commutant(opset(n, pi.mats, true));
      CHECK(span_residual(comm, closure) <= 1e-8);
      CHECK(span_residual(closure, comm) <= 1e-8);
    }
  }
}

TEST_CASE("invariant subspace criterion for projections in the commutant") {
  // Block-diagonal representation: coordinate projections onto invariant
  // blocks lie in the commutant, others do not.
  StarAlgebra m2 = testutil::matrix_algebra(2);
  Representation pi;
  pi.carrier_dim = 4;
  for (const CMat& m : m2.rep_mats) {
    CMat blk(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        blk(i, j) = m(i, j);
        blk(2 + i, 2 + j) = m(i, j) * cxd(0.0);  // second block acts as zero
      }
    pi.mats.push_back(blk);
  }
  // Make the second block a different representation (zero rep) so the
  // coordinate split is invariant.
  OperatorSet range = opset(4, pi.mats, true);
  OperatorSet comm = commutant(range);
  CMat p_first(4, 4);
  p_first(0, 0) = p_first(1, 1) = 1.0;
  // Projection onto the invariant first block commutes with the range.
  bool in_comm = true;
  for (const CMat& m : pi.mats)
    if (op_norm(m * p_first - p_first * m) > 1e-10) in_comm = false;
  CHECK(in_comm);
  // A projection with non-invariant range does not.
  CMat skew(4, 4);
  skew(0, 0) = 0.5;
  skew(0, 2) = 0.5;
  skew(2, 0) = 0.5;
  skew(2, 2) = 0.5;
  bool skew_in = true;
  for (const CMat& m : pi.mats)
    if (op_norm(m * skew - skew * m) > 1e-10) skew_in = false;
  CHECK_FALSE(skew_in);
}

TEST_SUITE_END();
