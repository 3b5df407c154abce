#pragma once

#include <vector>

#include "finstar/staralg.hpp"

namespace finstar {

/// Linear functional on a StarAlgebra: values on the basis elements.
struct Functional {
  std::vector<cxd> values;  // phi(b_i)

  cxd operator()(const AlgElement& a) const {
    cxd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * values[i];
    return s;
  }
};

/// Representation of a StarAlgebra: one carrier matrix per basis element.
struct Representation {
  std::size_t carrier_dim = 0;
  std::vector<CMat> mats;  // pi(b_i)

  CMat apply(const AlgElement& a) const;
  /// Worst deviation from multiplicativity and *-preservation.
  double law_residual(const StarAlgebra& alg) const;
};

struct FunctionalDiagnostics {
  bool positive = false;
  bool hermitian = false;
  double variation = 0.0;  // HUGE_VAL when infinite
  double min_gram_eigenvalue = 0.0;
};

/// Gram matrix G_ij = phi(b_i* b_j) of the induced Hilbert form.
CMat gram_matrix(const StarAlgebra& alg, const Functional& phi);

FunctionalDiagnostics functional_diagnostics(const StarAlgebra& alg,
                                             const Functional& phi,
                                             double tol = kDefaultTol);

struct GnsResult {
  Representation rep;
  CMat cyclic;             // c_phi in the orthonormal quotient coordinates
  CMat gram;               // G_ij = phi(b_i* b_j)
  std::size_t quotient_dim = 0;
  CMat class_map;          // quotient_dim x dim: element -> class coords
  double reproducing_residual = 0.0;
};

/// GNS construction: quotient by the isotropic subspace of <a,b> =
/// phi(b* a) via Gram eigenvectors above tol * lambda_max, left
/// multiplication in the orthonormal quotient coordinates, and the
/// reproducing vector (class of e when unital, least squares otherwise).
GnsResult gns_construct(const StarAlgebra& alg, const Functional& phi,
                        double tol = kDefaultTol);

/// Extension of a Hermitian finite-variation functional to the
/// unitisation with phi~(e) = gamma >= v(phi).
Functional extend_to_unitisation(const StarAlgebra& alg, const Functional& phi,
                                 double gamma, double tol = kDefaultTol);

/// Block-diagonal direct sum of the GNS representations of a family of
/// states (positive, variation 1).
Representation universal_rep(const StarAlgebra& alg,
                             const std::vector<Functional>& states,
                             double tol = kDefaultTol);

/// Gelfand-Naimark seminorm over a family: max_psi psi(a* a)^(1/2);
/// zero on an empty family.
double gn_seminorm(const StarAlgebra& alg, const AlgElement& a,
                   const std::vector<Functional>& states);

/// Canonical state family for an operator-tagged algebra: vector states
/// at the standard basis plus the top eigenvector state of a* a, which
/// attains the operator norm of `a`.
std::vector<Functional> canonical_states(const StarAlgebra& alg,
                                         const AlgElement& a);

/// Vector state phi(x) = <realize(x) v, v> on an operator-tagged algebra.
Functional vector_state(const StarAlgebra& alg, const CMat& v);

}  // namespace finstar
