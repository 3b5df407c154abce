#pragma once

#include <functional>
#include <vector>

#include "finstar/cmat.hpp"
#include "finstar/eig.hpp"

namespace finstar {

/// Finite resolution of identity: labelled orthogonal projections
/// summing to the identity.
struct ResolutionOfIdentity {
  std::vector<cxd> points;
  std::vector<CMat> projections;

  std::size_t carrier_dim() const {
    return projections.empty() ? 0 : projections.front().rows();
  }
  /// Worst deviation from p* = p = p^2, pairwise orthogonality and the
  /// partition-of-identity property.
  double law_residual() const;
};

/// Spectral integral pi_P(f) = sum f(point) * projection.
CMat integrate(const ResolutionOfIdentity& p,
               const std::function<cxd(cxd)>& f);

/// Same with one value per point; a size mismatch raises MissingPoint.
CMat integrate_values(const ResolutionOfIdentity& p,
                      const std::vector<cxd>& values);

/// Spectral resolution of a normal matrix: eigenvalue clusters (gap
/// max(tol*||b||, 1e-8)) with re-orthonormalized eigenprojections.
ResolutionOfIdentity spectral_resolution(const CMat& b,
                                         double tol = kDefaultTol);

/// Borel functional calculus f(b) through the spectral resolution.
CMat borel_function(const CMat& b, const std::function<cxd(cxd)>& f,
                    double tol = kDefaultTol);

/// Image measure f(P): distinct mapped points with merged projections.
ResolutionOfIdentity image_measure(const ResolutionOfIdentity& p,
                                   const std::function<cxd(cxd)>& f);

struct EigenAtom {
  bool is_eigenvalue = false;
  CMat eigenprojection;
};

/// Atom of the spectral resolution at lambda, if any.
EigenAtom eigen_atoms(const CMat& b, cxd lambda, double tol = kDefaultTol);

}  // namespace finstar
