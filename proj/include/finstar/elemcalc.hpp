#pragma once

#include <string>
#include <vector>

#include "finstar/cmat.hpp"
#include "finstar/eig.hpp"

namespace finstar {

/// Exact dyadic-rational polynomial coefficient, numerator / 2^log2_den.
struct DyadicCoeff {
  std::string numerator;  // decimal digits (exact, arbitrary precision)
  unsigned log2_den = 0;
  double as_double() const;
};

/// Coefficients (ascending powers, exact rationals) of the n-th square
/// root iterate p_n on [0,1]:
///   p_0 = 0,  p_{n+1}(x) = p_n(x) + (x - p_n(x)^2) / 2.
/// Degree doubles each step; intended for small n.
std::vector<DyadicCoeff> sqrt_poly(std::size_t n);

/// Evaluates p_n(t) by running the recursion in extended precision;
/// monotone non-decreasing in n and bounded by sqrt(t) for t in [0,1].
double sqrt_poly_eval(double t, std::size_t n);

struct SqrtSeriesResult {
  CMat value;        // partial sum b of sum_{n>=1} binom(1/2,n) a^n
  double tail_bound; // estimated norm of the truncated tail
};

/// Binomial square-root series: (1 + b)^2 = 1 + a for r_lambda(a) < 1.
SqrtSeriesResult sqrt_series(const CMat& a, std::size_t terms,
                             double tol = kDefaultTol);

/// Unique positive square root of a positive matrix, via the spectral
/// decomposition with eigenvalues clamped at zero.
CMat positive_sqrt(const CMat& a, double tol = kDefaultTol);

struct PolarPair {
  CMat u;  // unitary factor
  CMat p;  // positive factor |a|
};

/// a = u |a| with |a| = (a* a)^(1/2); invertible a only.
PolarPair polar_factorise(const CMat& a, double tol = kDefaultTol);

struct JordanParts {
  CMat plus;   // a_+
  CMat minus;  // a_-
};

/// Orthogonal decomposition a = a_+ - a_- of a Hermitian matrix, both
/// parts positive with a_+ a_- = 0, diagonalized simultaneously with a.
JordanParts jordan_parts(const CMat& a, double tol = kDefaultTol);

/// Cayley transform u = (a - i mu)(a + i mu)^{-1} of a Hermitian matrix,
/// for mu > r_lambda(a); unitary with spectrum on the unit circle.
CMat cayley_bounded(const CMat& a, double mu, double tol = kDefaultTol);

}  // namespace finstar
