#include "finstar/gnsrep.hpp"

#include <algorithm>
#include <cmath>

namespace finstar {

namespace {

std::vector<cxd> basis_vector(std::size_t dim, std::size_t i) {
  std::vector<cxd> e(dim, cxd(0.0));
  e[i] = 1.0;
  return e;
}

/// Matrix of left multiplication by b_i on the algebra itself.
CMat left_mult_matrix(const StarAlgebra& alg, std::size_t i) {
  CMat l(alg.dim, alg.dim);
  for (std::size_t j = 0; j < alg.dim; ++j)
    for (std::size_t k = 0; k < alg.dim; ++k) l(k, j) = alg.mult[i][j][k];
  return l;
}

}  // namespace

CMat Representation::apply(const AlgElement& a) const {
  if (a.size() != mats.size()) throw InvalidInput("element dimension mismatch");
  CMat out = CMat::zero(carrier_dim, carrier_dim);
  for (std::size_t i = 0; i < mats.size(); ++i) out += mats[i] * a[i];
  return out;
}

double Representation::law_residual(const StarAlgebra& alg) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < alg.dim; ++i) {
    CMat adj = mats[i].adjoint();
    CMat star = apply(alg.star_of(basis_vector(alg.dim, i)));
    worst = std::max(worst, op_norm(adj - star));
    for (std::size_t j = 0; j < alg.dim; ++j) {
      CMat prod = mats[i] * mats[j];
      CMat expect = apply(
          alg.multiply(basis_vector(alg.dim, i), basis_vector(alg.dim, j)));
      worst = std::max(worst, op_norm(prod - expect));
    }
  }
  return worst;
}

CMat gram_matrix(const StarAlgebra& alg, const Functional& phi) {
  if (phi.values.size() != alg.dim)
    throw InvalidInput("functional dimension mismatch");
  CMat g(alg.dim, alg.dim);
  for (std::size_t i = 0; i < alg.dim; ++i) {
    auto bi_star = alg.star_of(basis_vector(alg.dim, i));
    for (std::size_t j = 0; j < alg.dim; ++j) {
      auto prod = alg.multiply(bi_star, basis_vector(alg.dim, j));
      g(i, j) = phi(prod);
    }
  }
  return g;
}

FunctionalDiagnostics functional_diagnostics(const StarAlgebra& alg,
                                             const Functional& phi,
                                             double tol) {
  FunctionalDiagnostics out;
  CMat g = gram_matrix(alg, phi);
  double scale = std::max(g.max_abs(), 1.0);
  out.hermitian = true;
  for (std::size_t i = 0; i < alg.dim; ++i) {
    cxd lhs = phi(alg.star_of(basis_vector(alg.dim, i)));
    if (std::abs(lhs - std::conj(phi.values[i])) > std::max(tol, 1e-12) * scale)
      out.hermitian = false;
  }
  double herm_defect = op_norm(g - g.adjoint());
  HermitianEig he = hermitian_eig((g + g.adjoint()) * cxd(0.5));
  out.min_gram_eigenvalue = he.values.empty() ? 0.0 : he.values.front();
  out.positive = herm_defect <= std::max(tol, 1e-12) * scale &&
                 out.min_gram_eigenvalue >= -std::max(tol, 1e-12) * scale;

  if (!out.positive) {
    out.variation = HUGE_VAL;
    return out;
  }
  if (alg.is_unital()) {
    out.variation = phi(alg.unit_coeffs()).real();
    return out;
  }
  // Reproducing vector by least squares: c = D^{-1/2} W^H conj(phi),
  // consistent exactly when conj(phi) lies in the span of the kept
  // Gram eigenvectors. Inconsistency means infinite variation.
  double lam_max = he.values.empty() ? 0.0 : he.values.back();
  CMat conj_phi(alg.dim, 1);
  for (std::size_t i = 0; i < alg.dim; ++i)
    conj_phi(i, 0) = std::conj(phi.values[i]);
  double proj2 = 0.0, v2 = 0.0;
  for (std::size_t t = 0; t < he.values.size(); ++t) {
    if (he.values[t] <= tol * std::max(lam_max, 0.0) || he.values[t] <= 0.0)
      continue;
    cxd coord = frobenius_inner(conj_phi, he.vectors.column(t));
    proj2 += std::norm(coord);
    v2 += std::norm(coord) / he.values[t];
  }
  double resid2 = std::max(0.0, std::pow(vec_norm(conj_phi), 2) - proj2);
  if (std::sqrt(resid2) > std::max(tol, 1e-10) * (1.0 + vec_norm(conj_phi)))
    out.variation = HUGE_VAL;  // phi does not vanish on the isotropic part
  else
    out.variation = v2;
  return out;
}

GnsResult gns_construct(const StarAlgebra& alg, const Functional& phi,
                        double tol) {
  if (phi.values.size() != alg.dim)
    throw InvalidInput("functional dimension mismatch");
  double phinorm = 0.0;
  for (const cxd& z : phi.values) phinorm = std::max(phinorm, std::abs(z));
  if (phinorm <= 1e-14) throw ZeroFunctional("zero functional has no GNS");

  GnsResult out;
  out.gram = gram_matrix(alg, phi);
  double scale = std::max(out.gram.max_abs(), 1.0);
  if (op_norm(out.gram - out.gram.adjoint()) > std::max(tol, 1e-12) * scale)
    throw NotPositive("induced form is not Hermitian");
  HermitianEig he = hermitian_eig((out.gram + out.gram.adjoint()) * cxd(0.5));
  if (!he.values.empty() && he.values.front() < -std::max(tol, 1e-12) * scale)
    throw NotPositive("Gram matrix has a negative eigenvalue",
                      {{"min_eigenvalue", he.values.front()}});

  double lam_max = he.values.empty() ? 0.0 : he.values.back();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < he.values.size(); ++i)
    if (he.values[i] > tol * std::max(lam_max, 0.0) && he.values[i] > 0.0)
      kept.push_back(i);
  const std::size_t d = kept.size();
  out.quotient_dim = d;

  // class_map = D^{1/2} W^H maps coefficients to orthonormal coordinates.
  out.class_map = CMat(d, alg.dim);
  CMat w(alg.dim, d);
  std::vector<double> lam(d);
  for (std::size_t t = 0; t < d; ++t) {
    lam[t] = he.values[kept[t]];
    w.set_column(t, he.vectors.column(kept[t]));
    double root = std::sqrt(lam[t]);
    for (std::size_t i = 0; i < alg.dim; ++i)
      out.class_map(t, i) = root * std::conj(w(i, t));
  }

  out.rep.carrier_dim = d;
  out.rep.mats.resize(alg.dim);
  for (std::size_t i = 0; i < alg.dim; ++i) {
    CMat li = left_mult_matrix(alg, i);
    CMat mid = w.adjoint() * (li * w);  // d x d
    CMat pi(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        pi(r, c) = std::sqrt(lam[r]) * mid(r, c) / std::sqrt(lam[c]);
    out.rep.mats[i] = pi;
  }

  if (alg.is_unital()) {
    CMat e(alg.dim, 1);
    auto u = alg.unit_coeffs();
    for (std::size_t i = 0; i < alg.dim; ++i) e(i, 0) = u[i];
    out.cyclic = out.class_map * e;
  } else {
    // c = D^{-1/2} W^H conj(phi).
    CMat conj_phi(alg.dim, 1);
    for (std::size_t i = 0; i < alg.dim; ++i)
      conj_phi(i, 0) = std::conj(phi.values[i]);
    CMat coords = w.adjoint() * conj_phi;
    out.cyclic = CMat(d, 1);
    for (std::size_t t = 0; t < d; ++t)
      out.cyclic(t, 0) = coords(t, 0) / std::sqrt(lam[t]);
  }

  // Reproduction: phi(b_i) = <class(b_i), c>.
  double worst = 0.0;
  for (std::size_t i = 0; i < alg.dim; ++i) {
    CMat cls = out.class_map.column(i);
    cxd inner = frobenius_inner(cls, out.cyclic);
    worst = std::max(worst, std::abs(inner - phi.values[i]));
  }
  out.reproducing_residual = worst;
  return out;
}

Functional extend_to_unitisation(const StarAlgebra& alg, const Functional& phi,
                                 double gamma, double tol) {
  if (alg.is_unital())
    throw InvalidInput("extension applies to non-unital algebras");
  FunctionalDiagnostics diag = functional_diagnostics(alg, phi, tol);
  if (!diag.hermitian)
    throw InvalidInput("extension needs a Hermitian functional");
  if (diag.variation == HUGE_VAL)
    throw InvalidInput("extension needs finite variation");
  if (gamma < diag.variation - std::max(tol, 1e-12) * (1.0 + diag.variation))
    throw GammaTooSmall("phi~(e) must be at least the variation",
                        {{"variation", diag.variation}, {"gamma", gamma}});
  Functional out;
  out.values = phi.values;
  out.values.push_back(cxd(gamma));
  return out;
}

Representation universal_rep(const StarAlgebra& alg,
                             const std::vector<Functional>& states,
                             double tol) {
  std::vector<GnsResult> parts;
  std::size_t total = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    FunctionalDiagnostics diag = functional_diagnostics(alg, states[s], tol);
    if (!diag.positive || std::abs(diag.variation - 1.0) > 1e-6)
      throw NotAState("family member is not a state",
                      {{"index", double(s)}, {"variation", diag.variation}});
    parts.push_back(gns_construct(alg, states[s], tol));
    total += parts.back().quotient_dim;
  }
  Representation out;
  out.carrier_dim = total;
  out.mats.assign(alg.dim, CMat::zero(total, total));
  std::size_t off = 0;
  for (const GnsResult& part : parts) {
    for (std::size_t i = 0; i < alg.dim; ++i)
      for (std::size_t r = 0; r < part.quotient_dim; ++r)
        for (std::size_t c = 0; c < part.quotient_dim; ++c)
          out.mats[i](off + r, off + c) = part.rep.mats[i](r, c);
    off += part.quotient_dim;
  }
  return out;
}

double gn_seminorm(const StarAlgebra& alg, const AlgElement& a,
                   const std::vector<Functional>& states) {
  double sup = 0.0;
  auto gram_elem = alg.multiply(alg.star_of(a), a);
  for (const Functional& psi : states)
    sup = std::max(sup, std::sqrt(std::max(0.0, psi(gram_elem).real())));
  return sup;
}

Functional vector_state(const StarAlgebra& alg, const CMat& v) {
  Functional phi;
  phi.values.resize(alg.dim);
  double scale = 0.0;
  if (alg.is_unital()) {
    CMat e = alg.realize(alg.unit_coeffs());
    scale = frobenius_inner(e * v, v).real();
  } else {
    scale = std::pow(vec_norm(v), 2);
  }
  if (scale <= 0.0) throw ZeroVector("vector state needs phi(e) > 0");
  for (std::size_t i = 0; i < alg.dim; ++i) {
    std::vector<cxd> e(alg.dim, cxd(0.0));
    e[i] = 1.0;
    phi.values[i] = frobenius_inner(alg.realize(e) * v, v) / scale;
  }
  return phi;
}

std::vector<Functional> canonical_states(const StarAlgebra& alg,
                                         const AlgElement& a) {
  CMat m = alg.realize(a);
  const std::size_t n = m.rows();
  std::vector<Functional> family;
  for (std::size_t i = 0; i < n; ++i) {
    CMat e(n, 1);
    e(i, 0) = 1.0;
    family.push_back(vector_state(alg, e));
  }
  CMat ones(n, 1);
  for (std::size_t i = 0; i < n; ++i) ones(i, 0) = 1.0 / std::sqrt(double(n));
  family.push_back(vector_state(alg, ones));
  HermitianEig he = hermitian_eig(m.adjoint() * m);
  family.push_back(vector_state(alg, he.vectors.column(n - 1)));
  return family;
}

}  // namespace finstar
