#pragma once

#include <vector>

#include "finstar/cmat.hpp"

namespace finstar {

inline constexpr double kDefaultTol = 1e-10;

/// Eigendecomposition with a verified residual. Eigenvalues are ordered
/// lexicographically by (re, im); vectors(:,j) pairs with values[j].
/// For normal input the vectors form an orthonormal set.
struct EigenDecomp {
  std::vector<cxd> values;
  CMat vectors;
  double residual = 0.0;  // max_j ||m v_j - values[j] v_j|| / ||m||
};

/// Hermitian eigendecomposition: real eigenvalues ascending, unitary Q.
struct HermitianEig {
  std::vector<double> values;
  CMat vectors;
};

struct Svd {
  std::vector<double> sigma;  // descending
  CMat u;                     // left vectors (columns; zero where sigma=0)
  CMat v;                     // right vectors (columns), unitary
};

/// Operator norm = largest singular value, computed as
/// sqrt(max eigenvalue of m* m).
double op_norm(const CMat& m);

/// Householder tridiagonalization + implicit-shift QL.
HermitianEig hermitian_eig(const CMat& m);

/// General eigensolver. Hermitian and normal inputs get orthonormal
/// eigenvectors (tridiagonal QL resp. split into commuting Hermitian
/// parts); other inputs go through Hessenberg reduction + shifted QR
/// with eigenvectors by back-substitution on the Schur form.
EigenDecomp eig(const CMat& m, double tol = kDefaultTol);

/// One-sided Jacobi SVD.
Svd svd(const CMat& m);

/// Orthonormal basis (columns) of {x : ||m x|| <= tol * ||m|| * ||x||},
/// decided by singular values below tol * sigma_max.
CMat nullspace(const CMat& m, double tol = kDefaultTol);

/// Solve a x = b by LU with partial pivoting (b may have many columns).
CMat solve(const CMat& a, const CMat& b);
CMat inverse(const CMat& a);

/// ||m* m - m m*|| (operator norm); zero iff m is normal.
double normality_defect(const CMat& m);

bool is_hermitian(const CMat& m, double tol = kDefaultTol);
bool is_normal(const CMat& m, double tol = kDefaultTol);

/// Horner evaluation p(m) with coefficients c0 + c1 x + ... + ck x^k.
CMat poly_apply(const CMat& m, const std::vector<cxd>& coeffs);

}  // namespace finstar
