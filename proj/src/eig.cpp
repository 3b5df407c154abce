#include "finstar/eig.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

namespace finstar {

namespace {

constexpr double kEps = DBL_EPSILON;

double matrix_scale(const CMat& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    s = std::max(s, row);
  }
  return s;
}

// Householder tridiagonalization of a Hermitian matrix. On return `a` is
// real tridiagonal (d, e) and `q` holds the accumulated unitary.
void tridiagonalize(CMat a, CMat& q, std::vector<double>& d,
                    std::vector<double>& e) {
  const std::size_t n = a.rows();
  q = CMat::identity(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Reflector annihilating a(k+2..n-1, k).
    double beta = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) beta += std::norm(a(i, k));
    beta = std::sqrt(beta);
    if (beta <= kEps * a.max_abs()) continue;
    cxd alpha = a(k + 1, k);
    cxd phase = std::abs(alpha) > 0.0 ? alpha / std::abs(alpha) : cxd(1.0);
    std::vector<cxd> v(n - k - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(k + 1 + i, k);
    v[0] += phase * beta;
    double wn = 0.0;
    for (const auto& z : v) wn += std::norm(z);
    wn = std::sqrt(wn);
    if (wn == 0.0) continue;
    for (auto& z : v) z /= wn;
    // a <- H a H with H = I - 2 v v* acting on rows/cols k+1..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      cxd t = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        t += std::conj(v[i]) * a(k + 1 + i, j);
      t *= 2.0;
      for (std::size_t i = 0; i < v.size(); ++i) a(k + 1 + i, j) -= v[i] * t;
    }
    for (std::size_t i = 0; i < n; ++i) {
      cxd t = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) t += a(i, k + 1 + j) * v[j];
      t *= 2.0;
      for (std::size_t j = 0; j < v.size(); ++j)
        a(i, k + 1 + j) -= t * std::conj(v[j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      cxd t = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) t += q(i, k + 1 + j) * v[j];
      t *= 2.0;
      for (std::size_t j = 0; j < v.size(); ++j)
        q(i, k + 1 + j) -= t * std::conj(v[j]);
    }
  }
  // Phase scaling making the subdiagonal real non-negative.
  std::vector<cxd> u(n, cxd(1.0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cxd ei = a(i + 1, i) * u[i];
    double m = std::abs(ei);
    u[i + 1] = m > 0.0 ? ei / m : u[i];
  }
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a(i, i).real();
    if (i + 1 < n) e[i] = std::abs(a(i + 1, i));
    for (std::size_t r = 0; r < n; ++r) q(r, i) *= u[i];
  }
}

// Implicit-shift QL on a real tridiagonal (d, e), rotations accumulated
// into the complex columns of z. Classic tql2/tqli scheme.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, CMat& z) {
  const std::size_t n = d.size();
  if (n < 2) return;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]));
  for (std::size_t i = 0; i + 1 < n; ++i)
    scale = std::max(scale, std::abs(e[i]));
  const double tiny = kEps * scale;
  e.resize(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd + tiny) break;
      }
      if (m != l) {
        if (iter++ == 80)
          throw NoConvergence("tridiagonal QL exceeded iteration cap",
                              {{"index", static_cast<double>(l)}});
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i1 = m; i1-- > l;) {
          double f = s * e[i1];
          double b = c * e[i1];
          r = std::hypot(f, g);
          e[i1 + 1] = r;
          if (r == 0.0) {
            d[i1 + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i1 + 1] - p;
          r = (d[i1] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i1 + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < z.rows(); ++k) {
            cxd zf = z(k, i1 + 1);
            z(k, i1 + 1) = s * z(k, i1) + c * zf;
            z(k, i1) = c * z(k, i1) - s * zf;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

cxd zrotg(cxd f, cxd g, double& c, cxd& s) {
  double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) {
    c = 1.0;
    s = 0.0;
    return f;
  }
  if (af == 0.0) {
    c = 0.0;
    s = cxd(1.0);
    return g;
  }
  double h = std::hypot(af, ag);
  c = af / h;
  cxd uf = f / af;
  s = uf * std::conj(g) / h;
  return uf * h;
}

// Shifted QR on an upper Hessenberg matrix; returns the Schur form in h
// and the accumulated unitary in z (a = z h z*).
void hessenberg_qr(CMat& h, CMat& z) {
  const std::size_t n = h.rows();
  if (n < 2) return;
  const double scale = std::max(matrix_scale(h), DBL_MIN);
  const double tiny = kEps * scale;
  std::size_t hi = n - 1;
  int iters_here = 0;
  long total = 0;
  const long total_cap = 200 * static_cast<long>(n) + 400;
  while (true) {
    // Deflate converged trailing eigenvalues.
    while (hi > 0) {
      double thresh =
          kEps * (std::abs(h(hi - 1, hi - 1)) + std::abs(h(hi, hi))) + tiny;
      if (std::abs(h(hi, hi - 1)) <= thresh) {
        h(hi, hi - 1) = 0.0;
        --hi;
        iters_here = 0;
      } else {
        break;
      }
    }
    if (hi == 0) break;
    std::size_t lo = hi;
    while (lo > 0) {
      double thresh =
          kEps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo))) + tiny;
      if (std::abs(h(lo, lo - 1)) <= thresh) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (++total > total_cap)
      throw NoConvergence("Hessenberg QR exceeded iteration cap",
                          {{"active", static_cast<double>(hi)}});
    // Wilkinson shift from the trailing 2x2 block.
    cxd sigma;
    {
      cxd a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
      cxd c2 = h(hi, hi - 1), dd = h(hi, hi);
      cxd t = (a - dd) * 0.5;
      cxd disc = std::sqrt(t * t + b * c2);
      cxd l1 = dd + t + disc, l2 = dd + t - disc;
      sigma = std::abs(l1 - dd) < std::abs(l2 - dd) ? l1 : l2;
      if (++iters_here % 16 == 0)
        sigma = dd + 0.75 * std::abs(h(hi, hi - 1));
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= sigma;
    std::vector<double> cs(hi);
    std::vector<cxd> sn(hi);
    for (std::size_t k = lo; k < hi; ++k) {
      double c1;
      cxd s1;
      cxd r = zrotg(h(k, k), h(k + 1, k), c1, s1);
      h(k, k) = r;
      h(k + 1, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) {
        cxd f = h(k, j), g = h(k + 1, j);
        h(k, j) = c1 * f + s1 * g;
        h(k + 1, j) = -std::conj(s1) * f + c1 * g;
      }
      cs[k] = c1;
      sn[k] = s1;
    }
    for (std::size_t k = lo; k < hi; ++k) {
      double c1 = cs[k];
      cxd s1 = sn[k];
      for (std::size_t i = 0; i <= k + 1; ++i) {
        cxd f = h(i, k), g = h(i, k + 1);
        h(i, k) = c1 * f + std::conj(s1) * g;
        h(i, k + 1) = -s1 * f + c1 * g;
      }
      for (std::size_t i = 0; i < n; ++i) {
        cxd f = z(i, k), g = z(i, k + 1);
        z(i, k) = c1 * f + std::conj(s1) * g;
        z(i, k + 1) = -s1 * f + c1 * g;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += sigma;
  }
}

void hessenberg_reduce(CMat& a, CMat& z) {
  const std::size_t n = a.rows();
  z = CMat::identity(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double beta = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) beta += std::norm(a(i, k));
    beta = std::sqrt(beta);
    if (beta <= kEps * a.max_abs()) continue;
    cxd alpha = a(k + 1, k);
    cxd phase = std::abs(alpha) > 0.0 ? alpha / std::abs(alpha) : cxd(1.0);
    std::vector<cxd> v(n - k - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(k + 1 + i, k);
    v[0] += phase * beta;
    double wn = 0.0;
    for (const auto& zz : v) wn += std::norm(zz);
    wn = std::sqrt(wn);
    if (wn == 0.0) continue;
    for (auto& zz : v) zz /= wn;
    for (std::size_t j = 0; j < n; ++j) {
      cxd t = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        t += std::conj(v[i]) * a(k + 1 + i, j);
      t *= 2.0;
      for (std::size_t i = 0; i < v.size(); ++i) a(k + 1 + i, j) -= v[i] * t;
    }
    for (std::size_t i = 0; i < n; ++i) {
      cxd t = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) t += a(i, k + 1 + j) * v[j];
      t *= 2.0;
      for (std::size_t j = 0; j < v.size(); ++j)
        a(i, k + 1 + j) -= t * std::conj(v[j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      cxd t = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) t += z(i, k + 1 + j) * v[j];
      t *= 2.0;
      for (std::size_t j = 0; j < v.size(); ++j)
        z(i, k + 1 + j) -= t * std::conj(v[j]);
    }
  }
}

double eig_residual(const CMat& m, const std::vector<cxd>& values,
                    const CMat& vectors) {
  double norm = op_norm(m);
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    CMat v = vectors.column(j);
    CMat r = m * v - values[j] * v;
    worst = std::max(worst, vec_norm(r));
  }
  return worst / norm;
}

void sort_pairs(std::vector<cxd>& values, CMat& vectors) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (values[a].real() != values[b].real())
      return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  std::vector<cxd> sv(values.size());
  CMat sm(vectors.rows(), vectors.cols());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    sv[j] = values[idx[j]];
    sm.set_column(j, vectors.column(idx[j]));
  }
  values = std::move(sv);
  vectors = std::move(sm);
}

// Joint Jacobi diagonalization (Cardoso-Souloumiac) of two commuting
// Hermitian matrices; fallback route for normal inputs.
CMat joint_diagonalize(CMat b, CMat c) {
  const std::size_t n = b.rows();
  CMat w = CMat::identity(n);
  const double scale = std::max(b.max_abs() + c.max_abs(), DBL_MIN);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool changed = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(b(p, q)) + std::abs(c(p, q)) <= 1e3 * kEps * scale)
          continue;
        changed = true;
        // 3x3 real symmetric G from the pair's rotation statistics.
        double g[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        for (const CMat* mp : {&b, &c}) {
          const CMat& m = *mp;
          cxd h0 = m(p, p) - m(q, q);
          cxd h1 = m(p, q) + m(q, p);
          cxd h2 = cxd(0, 1) * (m(q, p) - m(p, q));
          cxd hv[3] = {h0, h1, h2};
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              g[i][j] += (std::conj(hv[i]) * hv[j]).real();
        }
        CMat gm(3, 3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) gm(i, j) = g[i][j];
        HermitianEig ge = hermitian_eig(gm);
        double x = ge.vectors(0, 2).real();
        double y = ge.vectors(1, 2).real();
        double zc = ge.vectors(2, 2).real();
        if (x < 0) {
          x = -x;
          y = -y;
          zc = -zc;
        }
        double r = std::sqrt(x * x + y * y + zc * zc);
        if (r == 0.0) continue;
        double cth = std::sqrt((x + r) / (2.0 * r));
        cxd sth = cxd(y, -zc) / std::sqrt(2.0 * r * (x + r));
        if (std::abs(sth) <= kEps) continue;
        // Apply the rotation [ [c, -conj(s)], [s, c] ] to (p, q).
        auto rotate = [&](CMat& m, bool cols_only) {
          for (std::size_t i = 0; i < n; ++i) {
            cxd mp_ = m(i, p), mq_ = m(i, q);
            m(i, p) = cth * mp_ + std::conj(sth) * mq_;
            m(i, q) = -sth * mp_ + cth * mq_;
          }
          if (cols_only) return;
          for (std::size_t j = 0; j < n; ++j) {
            cxd mp_ = m(p, j), mq_ = m(q, j);
            m(p, j) = cth * mp_ + sth * mq_;
            m(q, j) = -std::conj(sth) * mp_ + cth * mq_;
          }
        };
        rotate(b, false);
        rotate(c, false);
        rotate(w, true);
      }
    }
    if (!changed) break;
  }
  return w;
}

}  // namespace

double op_norm(const CMat& m) {
  if (m.empty()) throw InvalidShape("op_norm of empty matrix");
  CMat gram = m.rows() <= m.cols() ? m * m.adjoint() : m.adjoint() * m;
  HermitianEig he = hermitian_eig(gram);
  double lam = he.values.empty() ? 0.0 : he.values.back();
  return std::sqrt(std::max(0.0, lam));
}

HermitianEig hermitian_eig(const CMat& m) {
  if (!m.square()) throw InvalidShape("hermitian_eig needs a square matrix");
  const std::size_t n = m.rows();
  HermitianEig out;
  if (n == 0) {
    out.vectors = CMat(0, 0);
    return out;
  }
  if (n == 1) {
    out.values = {m(0, 0).real()};
    out.vectors = CMat::identity(1);
    return out;
  }
  std::vector<double> d, e;
  CMat q;
  tridiagonalize(m, q, d, e);
  tql_implicit(d, e, q);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  out.values.resize(n);
  out.vectors = CMat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[idx[j]];
    out.vectors.set_column(j, q.column(idx[j]));
  }
  return out;
}

EigenDecomp eig(const CMat& m, double tol) {
  if (!m.square()) throw InvalidShape("eig needs a square matrix");
  const std::size_t n = m.rows();
  EigenDecomp out;
  if (n == 0) {
    out.vectors = CMat(0, 0);
    return out;
  }
  const double norm = op_norm(m);
  if (is_hermitian(m, tol)) {
    CMat h = (m + m.adjoint()) * cxd(0.5);
    HermitianEig he = hermitian_eig(h);
    out.values.assign(he.values.begin(), he.values.end());
    out.vectors = he.vectors;
    sort_pairs(out.values, out.vectors);
    out.residual = eig_residual(m, out.values, out.vectors);
    return out;
  }
  if (is_normal(m, tol)) {
    CMat b = (m + m.adjoint()) * cxd(0.5);
    CMat c = (m - m.adjoint()) * cxd(0.0, -0.5);
    // A generic angle separates the joint spectrum; retry on the rare
    // failure, then fall back to joint Jacobi diagonalization.
    const double angles[] = {0.8612113056534123, 1.9307336971127776,
                             0.2513994151757864, 2.7167312533859167};
    EigenDecomp best;
    best.residual = HUGE_VAL;
    auto finish = [&](const CMat& w) {
      EigenDecomp cand;
      cand.vectors = w;
      cand.values.resize(n);
      for (std::size_t j = 0; j < n; ++j) {
        CMat v = w.column(j);
        double re = frobenius_inner(b * v, v).real();
        double im = frobenius_inner(c * v, v).real();
        cand.values[j] = cxd(re, im);
      }
      sort_pairs(cand.values, cand.vectors);
      cand.residual = eig_residual(m, cand.values, cand.vectors);
      return cand;
    };
    for (double t : angles) {
      CMat ht = b * cxd(std::cos(t)) + c * cxd(std::sin(t));
      EigenDecomp cand = finish(hermitian_eig(ht).vectors);
      if (cand.residual < best.residual) best = cand;
      if (best.residual <= 0.5 * std::max(tol, 1e-14) * std::max(norm, 1.0))
        return best;
    }
    EigenDecomp cand = finish(joint_diagonalize(b, c));
    if (cand.residual < best.residual) best = cand;
    return best;
  }
  // General path: Schur form + back-substitution.
  CMat h = m, z;
  hessenberg_reduce(h, z);
  hessenberg_qr(h, z);
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = h(j, j);
  out.vectors = CMat(n, n);
  const double scale = std::max(matrix_scale(h), DBL_MIN);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cxd> y(n, cxd(0.0));
    y[j] = 1.0;
    for (std::size_t i1 = j; i1-- > 0;) {
      cxd num = 0.0;
      for (std::size_t k = i1 + 1; k <= j; ++k) num += h(i1, k) * y[k];
      cxd den = h(i1, i1) - h(j, j);
      if (std::abs(den) < kEps * scale) den = cxd(kEps * scale);
      y[i1] = -num / den;
    }
    CMat v(n, 1);
    for (std::size_t r = 0; r < n; ++r) {
      cxd acc = 0.0;
      for (std::size_t k = 0; k <= j; ++k) acc += z(r, k) * y[k];
      v(r, 0) = acc;
    }
    double nv = vec_norm(v);
    if (nv > 0.0) v *= cxd(1.0 / nv);
    out.vectors.set_column(j, v);
  }
  sort_pairs(out.values, out.vectors);
  out.residual = eig_residual(m, out.values, out.vectors);
  return out;
}

Svd svd(const CMat& m) {
  Svd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.u = CMat(m.rows(), 0);
    out.v = CMat(m.cols(), 0);
    return out;
  }
  const bool swapped = m.rows() < m.cols();
  CMat g = swapped ? m.adjoint() : m;
  const std::size_t n = g.cols();
  CMat v = CMat::identity(n);
  const double tiny = kEps * std::max(g.max_abs(), DBL_MIN);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool changed = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        cxd apq = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i) {
          app += std::norm(g(i, p));
          aqq += std::norm(g(i, q));
          apq += std::conj(g(i, p)) * g(i, q);
        }
        double off = std::abs(apq);
        if (off <= kEps * std::sqrt(app * aqq) + tiny * tiny) continue;
        changed = true;
        cxd alpha = std::conj(apq) / off;
        double tau = (aqq - app) / (2.0 * off);
        double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double cth = 1.0 / std::sqrt(1.0 + t * t);
        double sth = cth * t;
        for (std::size_t i = 0; i < g.rows(); ++i) {
          cxd gp = g(i, p), gq = g(i, q);
          g(i, p) = cth * gp - sth * alpha * gq;
          g(i, q) = sth * gp + cth * alpha * gq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          cxd vp = v(i, p), vq = v(i, q);
          v(i, p) = cth * vp - sth * alpha * vq;
          v(i, q) = sth * vp + cth * alpha * vq;
        }
      }
    }
    if (!changed) break;
  }
  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) s += std::norm(g(i, j));
    sig[j] = std::sqrt(s);
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return sig[a] > sig[b]; });
  CMat u(g.rows(), n), vs(n, n);
  out.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.sigma[j] = sig[idx[j]];
    vs.set_column(j, v.column(idx[j]));
    CMat col = g.column(idx[j]);
    if (out.sigma[j] > 0.0) col *= cxd(1.0 / out.sigma[j]);
    u.set_column(j, col);
  }
  if (swapped) {
    out.u = vs;
    out.v = u;
  } else {
    out.u = u;
    out.v = vs;
  }
  return out;
}

CMat nullspace(const CMat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return CMat::identity(m.cols());
  CMat work = m;
  if (work.rows() < work.cols()) {
    CMat padded(work.cols(), work.cols());
    for (std::size_t i = 0; i < work.rows(); ++i)
      for (std::size_t j = 0; j < work.cols(); ++j)
        padded(i, j) = work(i, j);
    work = padded;
  }
  Svd s = svd(work);
  double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  CMat out(m.cols(), 0);
  for (std::size_t j = 0; j < s.sigma.size(); ++j)
    if (s.sigma[j] <= tol * smax) out = out.hcat(s.v.column(j));
  return out;
}

CMat solve(const CMat& a, const CMat& b) {
  if (!a.square()) throw InvalidShape("solve needs a square matrix");
  if (a.rows() != b.rows()) throw InvalidShape("solve rhs shape mismatch");
  const std::size_t n = a.rows();
  CMat lu = a, x = b;
  std::vector<std::size_t> piv(n);
  std::iota(piv.begin(), piv.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        p = i;
      }
    if (best <= kEps * std::max(lu.max_abs(), DBL_MIN) * n)
      throw NotInvertible("singular matrix in solve", {{"pivot", best}});
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(p, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      cxd f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      cxd acc = x(k, j);
      for (std::size_t i = k + 1; i < n; ++i) acc -= lu(k, i) * x(i, j);
      x(k, j) = acc / lu(k, k);
    }
  }
  return x;
}

CMat inverse(const CMat& a) { return solve(a, CMat::identity(a.rows())); }

double normality_defect(const CMat& m) {
  return op_norm(m.adjoint() * m - m * m.adjoint());
}

bool is_hermitian(const CMat& m, double tol) {
  if (!m.square()) return false;
  double scale = m.max_abs();
  if (scale == 0.0) return true;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst <= std::max(tol, 1e-13) * scale * m.rows();
}

bool is_normal(const CMat& m, double tol) {
  if (!m.square()) return false;
  double norm = op_norm(m);
  if (norm == 0.0) return true;
  return normality_defect(m) <= std::max(tol, 1e-12) * norm * norm;
}

CMat poly_apply(const CMat& m, const std::vector<cxd>& coeffs) {
  if (!m.square()) throw InvalidShape("poly_apply needs a square matrix");
  const std::size_t n = m.rows();
  if (coeffs.empty()) return CMat::zero(n, n);
  CMat acc = CMat::identity(n) * coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;)
    acc = acc * m + CMat::identity(n) * coeffs[k];
  return acc;
}

}  // namespace finstar
