#include "finstar/vonneumann.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace finstar {

namespace {

CMat vec_of(const CMat& m) {
  CMat v(m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      v(i * m.cols() + j, 0) = m(i, j);
  return v;
}

CMat unvec(const CMat& v, std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v(i * n + j, 0);
  return m;
}

/// Gram-Schmidt in the trace inner product; drops near-null directions.
std::vector<CMat> orthonormal_span(const std::vector<CMat>& mats,
                                   double drop_tol) {
  std::vector<CMat> basis;
  for (const CMat& m : mats) {
    CMat r = m;
    for (const CMat& b : basis) r -= b * frobenius_inner(r, b);
    // One re-orthogonalization pass keeps the basis numerically tight.
    for (const CMat& b : basis) r -= b * frobenius_inner(r, b);
    double nr = r.frobenius();
    if (nr > drop_tol) {
      r *= cxd(1.0 / nr);
      basis.push_back(r);
    }
  }
  return basis;
}

double span_scale(const std::vector<CMat>& mats) {
  double s = 0.0;
  for (const CMat& m : mats) s = std::max(s, m.frobenius());
  return s;
}

}  // namespace

OperatorSet commutant(const OperatorSet& s, double tol) {
  const std::size_t n = s.carrier_dim;
  if (n == 0) throw InvalidInput("commutant needs a carrier dimension");
  std::vector<CMat> gens = s.mats;
  if (s.star_closed)
    for (const CMat& m : s.mats) gens.push_back(m.adjoint());

  OperatorSet out;
  out.carrier_dim = n;
  out.star_closed = s.star_closed;
  if (gens.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CMat e(n, n);
        e(i, j) = 1.0;
        out.mats.push_back(e);
      }
    return out;
  }

  // Stacked Sylvester system: rows indexed by (generator, entry).
  CMat sys(gens.size() * n * n, n * n);
  double gen_scale = 0.0;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const CMat& a = gens[g];
    gen_scale = std::max(gen_scale, a.frobenius());
    const std::size_t base = g * n * n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          // (a X - X a)(i, j) in terms of X(k, l), row-major vec.
          sys(base + i * n + j, k * n + j) += a(i, k);
          sys(base + i * n + j, i * n + k) -= a(k, j);
        }
  }
  // Threshold against the generator scale as well: for near-central
  // generators the whole system is rounding noise and every direction
  // commutes.
  Svd sv = svd(sys);
  double smax = sv.sigma.empty() ? 0.0 : sv.sigma.front();
  double thresh = tol * std::max(smax, gen_scale);
  for (std::size_t c = 0; c < sv.sigma.size(); ++c)
    if (sv.sigma[c] <= thresh)
      out.mats.push_back(unvec(sv.v.column(c), n));
  return out;
}

OperatorSet bicommutant(const OperatorSet& s, double tol) {
  return commutant(commutant(s, tol), tol);
}

OperatorSet algebra_closure(const OperatorSet& s, double tol) {
  const std::size_t n = s.carrier_dim;
  if (n == 0) throw InvalidInput("closure needs a carrier dimension");
  std::vector<CMat> seed = {CMat::identity(n)};
  for (const CMat& m : s.mats) {
    seed.push_back(m);
    if (s.star_closed) seed.push_back(m.adjoint());
  }
  const double drop = std::max(tol, 1e-12) * std::max(1.0, span_scale(seed));
  std::vector<CMat> basis = orthonormal_span(seed, drop);
  bool grew = true;
  while (grew && basis.size() < n * n) {
    grew = false;
    const std::size_t sz = basis.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) {
        CMat prod = basis[i] * basis[j];
        for (const CMat& b : basis) prod -= b * frobenius_inner(prod, b);
        for (const CMat& b : basis) prod -= b * frobenius_inner(prod, b);
        double nr = prod.frobenius();
        if (nr > drop) {
          prod *= cxd(1.0 / nr);
          basis.push_back(prod);
          grew = true;
        }
      }
  }
  OperatorSet out;
  out.carrier_dim = n;
  out.star_closed = s.star_closed;
  out.mats = std::move(basis);
  return out;
}

double span_residual(const OperatorSet& a, const OperatorSet& b) {
  std::vector<CMat> basis = orthonormal_span(b.mats, 1e-12);
  double worst = 0.0;
  for (const CMat& m : a.mats) {
    double nm = m.frobenius();
    if (nm == 0.0) continue;
    CMat r = m;
    for (const CMat& bb : basis) r -= bb * frobenius_inner(r, bb);
    worst = std::max(worst, r.frobenius() / nm);
  }
  return worst;
}

IrreducibilityReport irreducibility_report(const Representation& pi,
                                           double tol) {
  double scale = 0.0;
  for (const CMat& m : pi.mats) scale = std::max(scale, op_norm(m));
  if (scale <= 1e-14) throw ZeroRepresentation("representation is zero");
  OperatorSet range;
  range.carrier_dim = pi.carrier_dim;
  range.mats = pi.mats;
  range.star_closed = true;
  OperatorSet comm = commutant(range, tol);
  IrreducibilityReport out;
  out.commutant_dim = comm.mats.size();
  out.irreducible = comm.mats.size() == 1;
  out.multiplicity_free = true;
  for (std::size_t i = 0; i < comm.mats.size() && out.multiplicity_free; ++i)
    for (std::size_t j = i + 1; j < comm.mats.size(); ++j) {
      CMat lhs = comm.mats[i] * comm.mats[j];
      CMat rhs = comm.mats[j] * comm.mats[i];
      if (op_norm(lhs - rhs) > std::max(tol, 1e-10) * (1.0 + op_norm(lhs))) {
        out.multiplicity_free = false;
        break;
      }
    }
  return out;
}

VectorReport vector_report(const OperatorSet& s, const CMat& x, double tol) {
  const std::size_t n = s.carrier_dim;
  if (vec_norm(x) <= 1e-14) throw ZeroVector("vector_report needs x != 0");
  std::vector<CMat> basis = orthonormal_span(s.mats, 1e-12);

  // Does the span contain the identity?
  CMat idres = CMat::identity(n);
  for (const CMat& b : basis) idres -= b * frobenius_inner(idres, b);
  const bool has_identity =
      idres.frobenius() <= std::max(tol, 1e-10) * std::sqrt(double(n));

  CMat orbit(n, basis.size() + (has_identity ? 1 : 0));
  for (std::size_t k = 0; k < basis.size(); ++k)
    orbit.set_column(k, basis[k] * x);
  if (has_identity) orbit.set_column(basis.size(), x);
  Svd so = svd(orbit);
  std::size_t rank = 0;
  double smax = so.sigma.empty() ? 0.0 : so.sigma.front();
  for (double sig : so.sigma)
    if (sig > std::max(tol, 1e-12) * std::max(smax, 1.0)) ++rank;

  VectorReport out;
  out.cyclic_rank = static_cast<double>(rank);
  out.cyclic = rank == n;

  CMat phi(n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    phi.set_column(k, basis[k] * x);
  Svd sp = svd(phi);
  double smin = basis.size() > 0 && phi.cols() <= phi.rows() && !sp.sigma.empty()
                    ? sp.sigma.back()
                    : 0.0;
  if (phi.cols() > phi.rows()) smin = 0.0;  // dimension count forces a kernel
  out.separating_gap = smin;
  out.separating =
      basis.empty() ? true
                    : smin > std::max(tol, 1e-12) *
                                 std::max(1.0, sp.sigma.empty() ? 0.0
                                                                : sp.sigma[0]);
  return out;
}

SeparatingSearch find_separating_vector(const OperatorSet& s,
                                        std::uint64_t seed, double tol) {
  const std::size_t n = s.carrier_dim;
  SeparatingSearch out;
  auto try_vec = [&](CMat v) -> bool {
    double nv = vec_norm(v);
    if (nv <= 1e-14) return false;
    v *= cxd(1.0 / nv);
    VectorReport r = vector_report(s, v, tol);
    if (r.separating) {
      out.vector = v;
      out.certificate = r.separating_gap;
      return true;
    }
    return false;
  };
  CMat ones(n, 1);
  for (std::size_t i = 0; i < n; ++i) ones(i, 0) = 1.0;
  ++out.draws;
  if (try_vec(ones)) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int draw = 0; draw < 64; ++draw) {
    CMat v(n, 1);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = cxd(u(rng), u(rng));
    ++out.draws;
    if (try_vec(v)) return out;
  }
  return out;  // no certificate found; existence is not refuted
}

DiagonalisationResult diagonalise_cyclic(const StarAlgebra& alg,
                                         const Representation& pi,
                                         const CMat& c, double tol) {
  const std::size_t n = pi.carrier_dim;
  double scale = 0.0;
  for (const CMat& m : pi.mats) scale = std::max(scale, op_norm(m));
  for (std::size_t i = 0; i < pi.mats.size(); ++i)
    for (std::size_t j = i + 1; j < pi.mats.size(); ++j) {
      CMat comm = pi.mats[i] * pi.mats[j] - pi.mats[j] * pi.mats[i];
      if (op_norm(comm) > std::max(tol, 1e-10) * std::max(1.0, scale * scale))
        throw NotCommutative("representation range does not commute",
                             {{"i", double(i)}, {"j", double(j)}});
    }
  if (vec_norm(c) <= 1e-14) throw ZeroVector("cyclic vector must be nonzero");
  CMat cv = c * cxd(1.0 / vec_norm(c));

  OperatorSet range;
  range.carrier_dim = n;
  range.mats = pi.mats;
  range.star_closed = true;
  OperatorSet closure = algebra_closure(range, tol);
  VectorReport vr = vector_report(closure, cv, tol);
  if (!vr.cyclic)
    throw NotCyclic("vector is not cyclic for the closed range",
                    {{"rank", vr.cyclic_rank}});

  // Hermitian spanning family of the closure.
  std::vector<CMat> herm;
  for (const CMat& m : closure.mats) {
    herm.push_back((m + m.adjoint()) * cxd(0.5));
    herm.push_back((m - m.adjoint()) * cxd(0.0, -0.5));
  }

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat best_u;
  std::vector<double> best_mu;
  CMat best_chars;
  double best_resid = HUGE_VAL;
  for (int attempt = 0; attempt < 3; ++attempt) {
    CMat g = CMat::zero(n, n);
    for (const CMat& h : herm) g += h * cxd(u(rng));
    HermitianEig he = hermitian_eig(g);
    std::vector<cxd> vals(he.values.begin(), he.values.end());
    const double gap = std::max(tol * op_norm(g), 1e-8);
    // Cluster and build projections from orthonormal eigenvector blocks.
    std::vector<std::vector<std::size_t>> clusters;
    {
      std::vector<bool> used(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cl = {i};
        used[i] = true;
        for (std::size_t k = 0; k < cl.size(); ++k)
          for (std::size_t j = 0; j < n; ++j)
            if (!used[j] && std::abs(vals[cl[k]] - vals[j]) <= gap) {
              used[j] = true;
              cl.push_back(j);
            }
        clusters.push_back(std::move(cl));
      }
    }
    // Atom data: projections, weights, scalar actions.
    std::vector<CMat> projections;
    for (const auto& cl : clusters) {
      CMat block(n, cl.size());
      for (std::size_t k = 0; k < cl.size(); ++k)
        block.set_column(k, he.vectors.column(cl[k]));
      projections.push_back(block * block.adjoint());
    }
    double resid = 0.0;
    for (std::size_t t = 0; t < projections.size(); ++t)
      for (std::size_t i = 0; i < pi.mats.size(); ++i) {
        double tr = projections[t].trace().real();
        cxd tau = (pi.mats[i] * projections[t]).trace() / tr;
        resid = std::max(
            resid, op_norm(pi.mats[i] * projections[t] - projections[t] * tau));
      }
    if (resid >= best_resid) continue;

    // Keep atoms with positive weight; cyclicity forces rank-one atoms.
    std::vector<double> mu;
    std::vector<CMat> kept_u;
    bool rank_ok = true;
    for (const CMat& p : projections) {
      CMat pc = p * cv;
      double w = std::pow(vec_norm(pc), 2);
      if (w <= tol) continue;
      if (p.trace().real() > 1.5) rank_ok = false;
      mu.push_back(w);
      kept_u.push_back(pc * cxd(1.0 / vec_norm(pc)));
    }
    if (!rank_ok) continue;
    CMat uu(kept_u.size(), n);
    CMat chars(kept_u.size(), pi.mats.size());
    for (std::size_t t = 0; t < kept_u.size(); ++t) {
      for (std::size_t col = 0; col < n; ++col)
        uu(t, col) = std::conj(kept_u[t](col, 0));
      for (std::size_t i = 0; i < pi.mats.size(); ++i)
        chars(t, i) = frobenius_inner(pi.mats[i] * kept_u[t], kept_u[t]);
    }
    best_resid = resid;
    best_u = uu;
    best_mu = mu;
    best_chars = chars;
    if (resid <= std::max(tol, 1e-10) * std::max(1.0, scale)) break;
  }
  if (best_mu.empty())
    throw NotCyclic("no rank-one atom decomposition found");

  DiagonalisationResult out;
  out.measure = best_mu;
  out.unitary = best_u;
  out.characters = best_chars;
  double worst = 0.0;
  for (std::size_t i = 0; i < pi.mats.size(); ++i) {
    CMat lhs = best_u * pi.mats[i];
    CMat rhs(best_u.rows(), best_u.cols());
    for (std::size_t t = 0; t < best_u.rows(); ++t)
      for (std::size_t col = 0; col < best_u.cols(); ++col)
        rhs(t, col) = best_chars(t, i) * best_u(t, col);
    worst = std::max(worst, op_norm(lhs - rhs));
  }
  out.intertwining_residual = worst;
  return out;
}

std::pair<StarAlgebra, Representation> closure_as_algebra(const OperatorSet& s,
                                                          double tol) {
  OperatorSet closure = algebra_closure(s, tol);
  StarAlgebra alg;
  alg.dim = closure.mats.size();
  alg.norm_tag = NormTag::Operator;
  alg.rep_mats = closure.mats;
  alg.mult.assign(alg.dim, std::vector<std::vector<cxd>>(
                               alg.dim, std::vector<cxd>(alg.dim)));
  alg.star = CMat(alg.dim, alg.dim);
  for (std::size_t i = 0; i < alg.dim; ++i) {
    for (std::size_t j = 0; j < alg.dim; ++j) {
      CMat prod = closure.mats[i] * closure.mats[j];
      for (std::size_t k = 0; k < alg.dim; ++k)
        alg.mult[i][j][k] = frobenius_inner(prod, closure.mats[k]);
    }
    CMat adj = closure.mats[i].adjoint();
    for (std::size_t k = 0; k < alg.dim; ++k)
      alg.star(i, k) = frobenius_inner(adj, closure.mats[k]);
  }
  alg = build_algebra(std::move(alg), std::max(tol, 1e-8));
  Representation pi;
  pi.carrier_dim = closure.carrier_dim;
  pi.mats = closure.mats;
  return {std::move(alg), std::move(pi)};
}

}  // namespace finstar
