#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "finstar/gelfand.hpp"
#include "finstar/gnsrep.hpp"

namespace finstar {

/// Finite set (or linear basis) of operators on a common carrier.
struct OperatorSet {
  std::size_t carrier_dim = 0;
  std::vector<CMat> mats;
  bool star_closed = false;
};

/// Orthonormal basis (trace inner product) of the commutant
/// S' = {X : a X = X a for all a in S}, computed as the joint nullspace
/// of the Sylvester operators X -> a X - X a. When star_closed is set,
/// adjoints of the generators are included first.
OperatorSet commutant(const OperatorSet& s, double tol = kDefaultTol);

/// S'' = (S')'.
OperatorSet bicommutant(const OperatorSet& s, double tol = kDefaultTol);

/// Orthonormal basis of the unital algebra generated by the given
/// matrices (adjoints included when star_closed), i.e. the span-closure
/// under products; the finite-dimensional stand-in for W*(S).
OperatorSet algebra_closure(const OperatorSet& s, double tol = kDefaultTol);

/// Worst relative distance from members of `a` to the span of `b`;
/// subspace equality is residual(a,b) and residual(b,a) both small.
double span_residual(const OperatorSet& a, const OperatorSet& b);

struct IrreducibilityReport {
  bool irreducible = false;
  std::size_t commutant_dim = 0;
  bool multiplicity_free = false;
};

IrreducibilityReport irreducibility_report(const Representation& pi,
                                           double tol = kDefaultTol);

struct VectorReport {
  bool cyclic = false;
  bool separating = false;
  double cyclic_rank = 0;      // rank of {a x : a in span S (+ identity)}
  double separating_gap = 0;   // smallest ||a x|| over unit-norm a in span S
};

VectorReport vector_report(const OperatorSet& s, const CMat& x,
                           double tol = kDefaultTol);

struct SeparatingSearch {
  std::optional<CMat> vector;
  double certificate = 0.0;  // separating gap of the returned vector
  std::size_t draws = 0;
};

/// Deterministic candidates then seeded random search for a separating
/// vector (guaranteed to exist for commutative S on a finite space).
SeparatingSearch find_separating_vector(const OperatorSet& s,
                                        std::uint64_t seed = 0,
                                        double tol = kDefaultTol);

struct DiagonalisationResult {
  std::vector<double> measure;   // mu_t = <P_t c, c>, dropped atoms removed
  CMat unitary;                  // rows map H to L^2(mu) coordinates
  CMat characters;               // row t lists tau_t(pi(b_i))
  double intertwining_residual = 0.0;
};

/// Diagonalisation of a cyclic commutative representation onto
/// multiplication operators: U pi(a) = M(a^) U with mu from <P c, c>.
DiagonalisationResult diagonalise_cyclic(const StarAlgebra& alg,
                                         const Representation& pi,
                                         const CMat& c,
                                         double tol = kDefaultTol);

/// Presents the span-closure of an operator set as an abstract algebra
/// (structure constants over the trace-orthonormal closure basis)
/// together with its defining representation.
std::pair<StarAlgebra, Representation> closure_as_algebra(
    const OperatorSet& s, double tol = kDefaultTol);

}  // namespace finstar
