#include "finstar/specmeasure.hpp"

#include <algorithm>
#include <cmath>

namespace finstar {

namespace {

/// Single-linkage clustering of complex values; returns member indices
/// per cluster, ordered by the lexicographically smallest member.
std::vector<std::vector<std::size_t>> cluster_values(
    const std::vector<cxd>& values, double gap) {
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<bool> assigned(values.size(), false);
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a].real() != values[b].real())
      return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  for (std::size_t oi : order) {
    if (assigned[oi]) continue;
    std::vector<std::size_t> cluster = {oi};
    assigned[oi] = true;
    for (std::size_t c = 0; c < cluster.size(); ++c)
      for (std::size_t j = 0; j < values.size(); ++j)
        if (!assigned[j] && std::abs(values[cluster[c]] - values[j]) <= gap) {
          assigned[j] = true;
          cluster.push_back(j);
        }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

}  // namespace

double ResolutionOfIdentity::law_residual() const {
  double worst = 0.0;
  if (projections.empty()) return worst;
  const std::size_t n = carrier_dim();
  CMat sum = CMat::zero(n, n);
  for (std::size_t i = 0; i < projections.size(); ++i) {
    const CMat& p = projections[i];
    worst = std::max(worst, op_norm(p - p.adjoint()));
    worst = std::max(worst, op_norm(p * p - p));
    for (std::size_t j = i + 1; j < projections.size(); ++j)
      worst = std::max(worst, op_norm(p * projections[j]));
    sum += p;
  }
  worst = std::max(worst, op_norm(sum - CMat::identity(n)));
  return worst;
}

CMat integrate(const ResolutionOfIdentity& p,
               const std::function<cxd(cxd)>& f) {
  std::vector<cxd> values(p.points.size());
  for (std::size_t i = 0; i < p.points.size(); ++i) values[i] = f(p.points[i]);
  return integrate_values(p, values);
}

CMat integrate_values(const ResolutionOfIdentity& p,
                      const std::vector<cxd>& values) {
  if (values.size() != p.points.size())
    throw MissingPoint("one value per atom required",
                       {{"expected", double(p.points.size())},
                        {"got", double(values.size())}});
  const std::size_t n = p.carrier_dim();
  CMat out = CMat::zero(n, n);
  for (std::size_t i = 0; i < p.points.size(); ++i)
    out += p.projections[i] * values[i];
  return out;
}

ResolutionOfIdentity spectral_resolution(const CMat& b, double tol) {
  if (!b.square()) throw InvalidShape("spectral_resolution needs square input");
  const double norm = op_norm(b);
  const double defect = normality_defect(b);
  if (defect > std::max(tol, 1e-12) * std::max(norm * norm, 1e-300))
    throw NotNormal("input is not normal", {{"defect", defect}});
  EigenDecomp d = eig(b, tol);
  const double gap = std::max(tol * norm, 1e-8);
  auto clusters = cluster_values(d.values, gap);
  ResolutionOfIdentity out;
  for (const auto& cluster : clusters) {
    cxd mean = 0.0;
    CMat block(b.rows(), cluster.size());
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      mean += d.values[cluster[k]];
      block.set_column(k, d.vectors.column(cluster[k]));
    }
    mean /= static_cast<double>(cluster.size());
    // Re-orthonormalize the cluster block (Gram-Schmidt); the vectors
    // are already near-orthonormal for normal input.
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      CMat col = block.column(k);
      for (std::size_t m = 0; m < k; ++m) {
        CMat prev = block.column(m);
        col -= prev * frobenius_inner(col, prev);
      }
      col *= cxd(1.0 / vec_norm(col));
      block.set_column(k, col);
    }
    out.points.push_back(mean);
    out.projections.push_back(block * block.adjoint());
  }
  return out;
}

CMat borel_function(const CMat& b, const std::function<cxd(cxd)>& f,
                    double tol) {
  return integrate(spectral_resolution(b, tol), f);
}

ResolutionOfIdentity image_measure(const ResolutionOfIdentity& p,
                                   const std::function<cxd(cxd)>& f) {
  std::vector<cxd> mapped(p.points.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    mapped[i] = f(p.points[i]);
    scale = std::max(scale, std::abs(mapped[i]));
  }
  auto clusters = cluster_values(mapped, 1e-10 * (1.0 + scale));
  ResolutionOfIdentity out;
  const std::size_t n = p.carrier_dim();
  for (const auto& cluster : clusters) {
    cxd mean = 0.0;
    CMat proj = CMat::zero(n, n);
    for (std::size_t idx : cluster) {
      mean += mapped[idx];
      proj += p.projections[idx];
    }
    mean /= static_cast<double>(cluster.size());
    out.points.push_back(mean);
    out.projections.push_back(proj);
  }
  return out;
}

EigenAtom eigen_atoms(const CMat& b, cxd lambda, double tol) {
  ResolutionOfIdentity p = spectral_resolution(b, tol);
  const double gap = std::max(tol * op_norm(b), 1e-8);
  EigenAtom out;
  out.eigenprojection = CMat::zero(b.rows(), b.cols());
  for (std::size_t i = 0; i < p.points.size(); ++i)
    if (std::abs(p.points[i] - lambda) <= gap) {
      out.is_eigenvalue = true;
      out.eigenprojection = p.projections[i];
      return out;
    }
  return out;
}

}  // namespace finstar
