#include "finstar/specanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace finstar {

namespace {

void scale_elem(CMat& m, double f) { m *= cxd(f); }
void scale_elem(AlgElement& a, double f) {
  for (auto& z : a) z *= f;
}

// Shared squaring loop over any normed algebra: square() maps an element
// to its square, norm() evaluates the algebra norm. Norms are tracked in
// log scale; elements are renormalized after every squaring.
template <typename Elem, typename SquareFn, typename NormFn>
SpectralRadiusResult gelfand_limit(Elem a, SquareFn square, NormFn norm,
                                   std::size_t k_max) {
  SpectralRadiusResult out;
  double n0 = norm(a);
  out.sequence.push_back(n0);
  if (n0 == 0.0) {
    out.value = 0.0;
    return out;
  }
  // b holds a^(2^k) / exp(logscale), with ||b|| == 1 after each step.
  Elem b = a;
  scale_elem(b, 1.0 / n0);
  double logscale = std::log(n0);
  double prev_rk = n0;
  double rk = n0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    b = square(b);
    double nb = norm(b);
    if (nb == 0.0) {
      // Nilpotent: some power vanished exactly.
      out.value = 0.0;
      out.sequence.push_back(0.0);
      return out;
    }
    scale_elem(b, 1.0 / nb);
    logscale = 2.0 * logscale + std::log(nb);
    double m = std::ldexp(1.0, static_cast<int>(k));  // 2^k
    prev_rk = rk;
    rk = std::exp(logscale / m);
    out.sequence.push_back(rk);
  }
  // One Richardson step: r_k = r (C)^(1/2^k) with slowly varying C, so
  // r_k^2 / r_{k-1} cancels the leading correction.
  out.value = (k_max >= 1 && prev_rk > 0.0) ? rk * (rk / prev_rk) : rk;
  if (!std::isfinite(out.value)) out.value = rk;
  return out;
}

}  // namespace

SpectralRadiusResult spectral_radius(const CMat& a, std::size_t k_max) {
  if (!a.square()) throw InvalidShape("spectral_radius needs a square matrix");
  SpectralRadiusResult out = gelfand_limit(
      a, [](const CMat& m) { return m * m; },
      [](const CMat& m) { return op_norm(m); }, k_max);
  double maxeig = 0.0;
  for (const cxd& lam : eig(a).values) maxeig = std::max(maxeig, std::abs(lam));
  out.eig_gap = std::abs(out.value - maxeig);
  return out;
}

SpectralRadiusResult spectral_radius(const StarAlgebra& alg,
                                     const AlgElement& a, std::size_t k_max) {
  SpectralRadiusResult out = gelfand_limit(
      a, [&](const AlgElement& x) { return alg.multiply(x, x); },
      [&](const AlgElement& x) { return alg.norm(x); }, k_max);
  double maxeig = 0.0;
  for (const cxd& lam : spectrum(alg, a)) maxeig = std::max(maxeig, std::abs(lam));
  out.eig_gap = std::abs(out.value - maxeig);
  return out;
}

double ptak(const CMat& a) {
  CMat gram = a.adjoint() * a;
  double r = 0.0;
  for (const cxd& lam : eig(gram).values) r = std::max(r, std::abs(lam));
  return std::sqrt(r);
}

double ptak(const StarAlgebra& alg, const AlgElement& a) {
  auto gram = alg.multiply(alg.star_of(a), a);
  double r = 0.0;
  for (const cxd& lam : spectrum(alg, gram)) r = std::max(r, std::abs(lam));
  return std::sqrt(r);
}

HermitianProbe hermitian_probe(const StarAlgebra& alg, std::size_t samples,
                               std::uint64_t seed) {
  HermitianProbe out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  auto hermitian_with_real_spectrum = [&](const AlgElement& h) {
    for (const cxd& z : spectrum(alg, h)) {
      double scale = 1.0 + std::abs(z);
      if (std::abs(z.imag()) > 1e-8 * scale) return false;
    }
    return true;
  };
  auto record = [&](const AlgElement& w, const char* why) {
    out.counterexample_found = true;
    out.witness = w;
    out.reason = why;
  };

  // Hermitianized basis: b + b* and i(b - b*).
  for (std::size_t i = 0; i < alg.dim && !out.counterexample_found; ++i) {
    AlgElement e(alg.dim, cxd(0.0));
    e[i] = 1.0;
    auto es = alg.star_of(e);
    AlgElement re(alg.dim), im(alg.dim);
    for (std::size_t k = 0; k < alg.dim; ++k) {
      re[k] = e[k] + es[k];
      im[k] = cxd(0.0, 1.0) * (e[k] - es[k]);
    }
    if (!hermitian_with_real_spectrum(re)) record(re, "non-real spectrum");
    else if (!hermitian_with_real_spectrum(im)) record(im, "non-real spectrum");
  }

  for (std::size_t s = 0; s < samples && !out.counterexample_found; ++s) {
    AlgElement c(alg.dim);
    for (auto& z : c) z = cxd(u(rng), u(rng));
    auto cs = alg.star_of(c);
    AlgElement h(alg.dim);
    for (std::size_t k = 0; k < alg.dim; ++k) h[k] = c[k] + cs[k];
    if (!hermitian_with_real_spectrum(h)) {
      record(h, "non-real spectrum");
      break;
    }
    // r_lambda(a) <= r_sigma(a) on an arbitrary element.
    double rl = 0.0;
    for (const cxd& z : spectrum(alg, c)) rl = std::max(rl, std::abs(z));
    double rs = ptak(alg, c);
    if (rl > rs * (1.0 + 1e-8) + 1e-10) {
      record(c, "r_lambda > r_sigma");
      break;
    }
  }
  return out;
}

bool positive_test(const CMat& a, double tol) {
  if (!a.square()) throw InvalidShape("positive_test needs a square matrix");
  double norm = op_norm(a);
  // Absolute floor: below a few hundred ulps nothing is decidable.
  double thresh = tol * norm + 256.0 * std::numeric_limits<double>::epsilon();
  if (op_norm(a - a.adjoint()) > thresh) return false;
  for (const cxd& z : eig(a, tol).values) {
    if (z.real() < -thresh) return false;
    if (std::abs(z.imag()) > thresh) return false;
  }
  return true;
}

bool positive_test(const StarAlgebra& alg, const AlgElement& a, double tol) {
  double norm = alg.norm(a);
  auto diff = alg.star_of(a);
  for (std::size_t k = 0; k < alg.dim; ++k) diff[k] -= a[k];
  if (alg.norm(diff) > tol * norm) return false;
  for (const cxd& z : spectrum(alg, a)) {
    if (z.real() < -tol * norm) return false;
    if (std::abs(z.imag()) > tol * norm) return false;
  }
  return true;
}

cxd RationalFn::eval(cxd x) const {
  cxd num = 0.0;
  for (std::size_t k = numerator.size(); k-- > 0;) num = num * x + numerator[k];
  cxd den = 1.0;
  for (const auto& [root, m] : poles)
    for (std::size_t i = 0; i < m; ++i) den *= (x - root);
  return num / den;
}

CMat rational_apply(const CMat& a, const RationalFn& r, double tol) {
  if (!a.square()) throw InvalidShape("rational_apply needs a square matrix");
  EigenDecomp d = eig(a, tol);
  double rl = 0.0;
  for (const cxd& lam : d.values) rl = std::max(rl, std::abs(lam));
  const double guard = tol * (1.0 + rl);
  for (const auto& [root, m] : r.poles) {
    double dist = HUGE_VAL;
    cxd nearest = 0.0;
    for (const cxd& lam : d.values)
      if (std::abs(lam - root) < dist) {
        dist = std::abs(lam - root);
        nearest = lam;
      }
    if (dist < guard)
      throw PoleOnSpectrum("denominator root too close to sp(a)",
                           {{"root_re", root.real()},
                            {"root_im", root.imag()},
                            {"nearest_re", nearest.real()},
                            {"nearest_im", nearest.imag()},
                            {"distance", dist}});
  }
  CMat out = poly_apply(a, r.numerator);
  const CMat id = CMat::identity(a.rows());
  for (const auto& [root, m] : r.poles) {
    CMat factor = inverse(a - id * root);
    for (std::size_t i = 0; i < m; ++i) out = out * factor;
  }
  return out;
}

}  // namespace finstar
