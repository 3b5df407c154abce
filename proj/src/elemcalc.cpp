#include "finstar/elemcalc.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>

#include "finstar/specanalysis.hpp"

namespace finstar {

namespace mp = boost::multiprecision;

double DyadicCoeff::as_double() const {
  double num = std::strtod(numerator.c_str(), nullptr);
  return std::ldexp(num, -static_cast<int>(log2_den));
}

std::vector<DyadicCoeff> sqrt_poly(std::size_t n) {
  // Common denominator 2^d for all coefficients; d follows d' = 2d + 1.
  std::vector<mp::cpp_int> coeff = {0};  // p_0 = 0
  unsigned d = 0;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t deg = coeff.size() - 1;
    std::vector<mp::cpp_int> sq(2 * deg + 1, 0);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < coeff.size(); ++j)
        if (coeff[j] != 0) sq[i + j] += coeff[i] * coeff[j];
    }
    // p' = p + (x - p^2)/2 over denominator 2^(2d+1).
    std::vector<mp::cpp_int> next(std::max<std::size_t>(sq.size(), 2), 0);
    const mp::cpp_int unit = mp::cpp_int(1) << (2 * d);
    for (std::size_t k = 0; k < coeff.size(); ++k)
      next[k] += coeff[k] << (d + 1);
    next[1] += unit;
    for (std::size_t k = 0; k < sq.size(); ++k) next[k] -= sq[k];
    while (next.size() > 1 && next.back() == 0) next.pop_back();
    coeff = std::move(next);
    d = 2 * d + 1;
  }
  std::vector<DyadicCoeff> out(coeff.size());
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    mp::cpp_int num = coeff[k];
    unsigned dk = d;
    while (dk > 0 && num != 0 && (num & 1) == 0) {
      num >>= 1;
      --dk;
    }
    out[k].numerator = num.str();
    out[k].log2_den = num == 0 ? 0 : dk;
  }
  return out;
}

double sqrt_poly_eval(double t, std::size_t n) {
  // Extended-precision recursion; the increment is clamped at zero so
  // the sequence stays monotone under rounding.
  long double v = 0.0L;
  const long double tl = t;
  for (std::size_t k = 0; k < n; ++k) {
    long double inc = (tl - v * v) * 0.5L;
    if (inc < 0.0L) inc = 0.0L;
    v += inc;
  }
  return static_cast<double>(v);
}

SqrtSeriesResult sqrt_series(const CMat& a, std::size_t terms, double tol) {
  if (!a.square()) throw InvalidShape("sqrt_series needs a square matrix");
  const double rl = spectral_radius(a).value;
  if (rl >= 1.0 - tol)
    throw SpectralRadiusTooLarge("series requires r_lambda(a) < 1",
                                 {{"spectral_radius", rl}});
  const std::size_t n = a.rows();
  CMat sum = CMat::zero(n, n);
  CMat power = a;
  double c = 0.5;  // binom(1/2, 1)
  for (std::size_t k = 1; k <= terms; ++k) {
    sum += power * cxd(c);
    power = power * a;
    c *= (0.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
  }
  SqrtSeriesResult out;
  out.value = sum;
  double pn = op_norm(power);
  double q = terms > 0 ? std::pow(pn, 1.0 / static_cast<double>(terms + 1))
                       : rl;
  q = std::max(q, rl);
  out.tail_bound =
      q < 1.0 ? std::abs(c) * pn / (1.0 - q) : HUGE_VAL;
  return out;
}

CMat positive_sqrt(const CMat& a, double tol) {
  if (!positive_test(a, tol))
    throw NotPositive("positive_sqrt needs a positive matrix");
  CMat h = (a + a.adjoint()) * cxd(0.5);
  HermitianEig he = hermitian_eig(h);
  std::vector<cxd> roots(he.values.size());
  for (std::size_t i = 0; i < he.values.size(); ++i)
    roots[i] = std::sqrt(std::max(0.0, he.values[i]));
  return he.vectors * CMat::diag(roots) * he.vectors.adjoint();
}

PolarPair polar_factorise(const CMat& a, double tol) {
  if (!a.square()) throw InvalidShape("polar_factorise needs a square matrix");
  Svd s = svd(a);
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  const double smin = s.sigma.empty() ? 0.0 : s.sigma.back();
  if (smin <= tol * smax || smax == 0.0)
    throw NotInvertible("polar factorisation needs an invertible element",
                        {{"min_singular_value", smin}});
  CMat gram = a.adjoint() * a;
  HermitianEig he = hermitian_eig(gram);
  std::vector<cxd> rt(he.values.size()), rti(he.values.size());
  for (std::size_t i = 0; i < he.values.size(); ++i) {
    double r = std::sqrt(std::max(0.0, he.values[i]));
    rt[i] = r;
    rti[i] = 1.0 / r;
  }
  PolarPair out;
  out.p = he.vectors * CMat::diag(rt) * he.vectors.adjoint();
  out.u = a * (he.vectors * CMat::diag(rti) * he.vectors.adjoint());
  return out;
}

JordanParts jordan_parts(const CMat& a, double tol) {
  if (!a.square()) throw InvalidShape("jordan_parts needs a square matrix");
  double norm = op_norm(a);
  if (op_norm(a - a.adjoint()) > std::max(tol, 1e-12) * std::max(norm, 1.0))
    throw NotHermitian("jordan_parts needs a Hermitian matrix");
  CMat h = (a + a.adjoint()) * cxd(0.5);
  HermitianEig he = hermitian_eig(h);
  std::vector<cxd> plus(he.values.size()), minus(he.values.size());
  for (std::size_t i = 0; i < he.values.size(); ++i) {
    plus[i] = std::max(0.0, he.values[i]);
    minus[i] = std::max(0.0, -he.values[i]);
  }
  JordanParts out;
  out.plus = he.vectors * CMat::diag(plus) * he.vectors.adjoint();
  out.minus = he.vectors * CMat::diag(minus) * he.vectors.adjoint();
  return out;
}

CMat cayley_bounded(const CMat& a, double mu, double tol) {
  if (!a.square()) throw InvalidShape("cayley_bounded needs a square matrix");
  double norm = op_norm(a);
  if (op_norm(a - a.adjoint()) > std::max(tol, 1e-12) * std::max(norm, 1.0))
    throw NotHermitian("cayley_bounded needs a Hermitian matrix");
  double rl = 0.0;
  for (const cxd& z : eig(a, tol).values) rl = std::max(rl, std::abs(z));
  // Equality is allowed: for Hermitian matrices a + i*mu stays invertible
  // whenever mu is a positive real, the spectrum being real.
  if (mu < rl || mu <= 0.0)
    throw MuTooSmall("cayley transform needs mu >= r_lambda(a), mu > 0",
                     {{"mu", mu}, {"spectral_radius", rl}});
  const CMat shift = CMat::identity(a.rows()) * cxd(0.0, mu);
  return (a - shift) * inverse(a + shift);
}

}  // namespace finstar
