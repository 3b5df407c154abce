#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "finstar/staralg.hpp"

namespace finstar {

/// Result of the Gelfand-limit computation r = lim |a^n|^(1/n), taken
/// along n = 2^k with per-step renormalization so powers never overflow.
struct SpectralRadiusResult {
  double value = 0.0;
  std::vector<double> sequence;  // r_0 .. r_k
  double eig_gap = 0.0;          // |value - max |eig||, matrices only
};

SpectralRadiusResult spectral_radius(const CMat& a, std::size_t k_max = 20);
SpectralRadiusResult spectral_radius(const StarAlgebra& alg,
                                     const AlgElement& a,
                                     std::size_t k_max = 20);

/// Ptak function r_sigma(a) = r_lambda(a* a)^(1/2).
double ptak(const CMat& a);
double ptak(const StarAlgebra& alg, const AlgElement& a);

/// Outcome of the randomized Hermitian-algebra falsifier.
struct HermitianProbe {
  bool counterexample_found = false;
  AlgElement witness;       // offending element when found
  std::string reason;       // which law it violates
};

/// Tests real-spectrum on a Hermitian basis and random Hermitian
/// combinations, plus r_lambda <= r_sigma on random elements. This is a
/// falsifier, not a decision procedure.
HermitianProbe hermitian_probe(const StarAlgebra& alg, std::size_t samples,
                               std::uint64_t seed);

/// sp(a) in [0, inf) and a Hermitian, all up to tol * ||a||.
bool positive_test(const CMat& a, double tol = kDefaultTol);
bool positive_test(const StarAlgebra& alg, const AlgElement& a,
                   double tol = kDefaultTol);

/// Rational function r(x) = p(x) / prod (x - root_i)^{mult_i} given by
/// numerator coefficients (ascending powers) and denominator roots.
struct RationalFn {
  std::vector<cxd> numerator;
  std::vector<std::pair<cxd, std::size_t>> poles;  // (root, multiplicity)

  cxd eval(cxd x) const;
};

/// r(a) via Horner on the numerator and resolvent factors for the poles;
/// refuses poles within tol * (1 + r_lambda(a)) of sp(a).
CMat rational_apply(const CMat& a, const RationalFn& r,
                    double tol = kDefaultTol);

}  // namespace finstar
