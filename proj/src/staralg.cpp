#include "finstar/staralg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace finstar {

namespace {

std::vector<cxd> basis_vector(std::size_t dim, std::size_t i) {
  std::vector<cxd> e(dim, cxd(0.0));
  e[i] = 1.0;
  return e;
}

double coeff_dist(const std::vector<cxd>& a, const std::vector<cxd>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

double coeff_scale(const std::vector<cxd>& a) {
  double s = 0.0;
  for (const auto& z : a) s = std::max(s, std::abs(z));
  return s;
}

}  // namespace

std::vector<cxd> StarAlgebra::multiply(const std::vector<cxd>& a,
                                       const std::vector<cxd>& b) const {
  if (a.size() != dim || b.size() != dim)
    throw InvalidInput("element dimension mismatch");
  std::vector<cxd> out(dim, cxd(0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i] == cxd(0.0)) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b[j] == cxd(0.0)) continue;
      const cxd f = a[i] * b[j];
      const auto& row = mult[i][j];
      for (std::size_t k = 0; k < dim; ++k) out[k] += f * row[k];
    }
  }
  return out;
}

std::vector<cxd> StarAlgebra::star_of(const std::vector<cxd>& a) const {
  if (a.size() != dim) throw InvalidInput("element dimension mismatch");
  std::vector<cxd> out(dim, cxd(0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i] == cxd(0.0)) continue;
    const cxd f = std::conj(a[i]);
    for (std::size_t j = 0; j < dim; ++j) out[j] += f * star(i, j);
  }
  return out;
}

double StarAlgebra::norm(const std::vector<cxd>& a) const {
  if (a.size() != dim) throw InvalidInput("element dimension mismatch");
  if (norm_tag == NormTag::Operator) return op_norm(realize(a));
  const std::size_t core = box_norm_unit ? dim - 1 : dim;
  double n = 0.0;
  if (norm_tag == NormTag::Ell1) {
    for (std::size_t i = 0; i < core; ++i) {
      double w = i < ell1_weights.size() ? ell1_weights[i] : 1.0;
      n += w * std::abs(a[i]);
    }
  } else {
    for (std::size_t i = 0; i < core; ++i) n = std::max(n, std::abs(a[i]));
  }
  if (box_norm_unit) n += std::abs(a[dim - 1]);
  return n;
}

std::vector<cxd> StarAlgebra::unit_coeffs() const {
  if (!unit_element) throw InvalidInput("algebra has no unit");
  return *unit_element;
}

CMat StarAlgebra::realize(const std::vector<cxd>& a) const {
  if (norm_tag != NormTag::Operator || rep_mats.size() != dim)
    throw InvalidInput("algebra carries no matrix realization");
  CMat out = CMat::zero(rep_mats[0].rows(), rep_mats[0].cols());
  for (std::size_t i = 0; i < dim; ++i) out += rep_mats[i] * a[i];
  return out;
}

bool StarAlgebra::commutative(double tol) const {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      auto ij = multiply(basis_vector(dim, i), basis_vector(dim, j));
      auto ji = multiply(basis_vector(dim, j), basis_vector(dim, i));
      double scale = std::max({coeff_scale(ij), coeff_scale(ji), 1.0});
      if (coeff_dist(ij, ji) > tol * scale) return false;
    }
  return true;
}

StarAlgebra build_algebra(StarAlgebra raw, double tol) {
  const std::size_t n = raw.dim;
  if (n == 0) throw InvalidInput("algebra dimension must be positive");
  if (raw.mult.size() != n)
    throw InvalidInput("structure-constant tensor has wrong shape");
  for (const auto& row : raw.mult) {
    if (row.size() != n)
      throw InvalidInput("structure-constant tensor has wrong shape");
    for (const auto& cell : row)
      if (cell.size() != n)
        throw InvalidInput("structure-constant tensor has wrong shape");
  }
  if (raw.star.rows() != n || raw.star.cols() != n)
    throw InvalidShape("involution matrix has wrong shape");
  if (raw.basis_names.size() != n) {
    raw.basis_names.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      if (raw.basis_names[i].empty())
        raw.basis_names[i] = "b" + std::to_string(i);
  }
  if (raw.norm_tag == NormTag::Operator) {
    if (raw.rep_mats.size() != n)
      throw InvalidInput("operator norm tag needs one matrix per basis element");
    for (const auto& m : raw.rep_mats)
      if (m.rows() != raw.rep_mats[0].rows() || !m.square())
        throw InvalidShape("realization matrices must be square, equal size");
  }

  auto e = [&](std::size_t i) { return basis_vector(n, i); };

  // star is an involution: applying it twice is the identity.
  for (std::size_t i = 0; i < n; ++i) {
    auto twice = raw.star_of(raw.star_of(e(i)));
    if (coeff_dist(twice, e(i)) > tol)
      throw InvolutionViolation("b" + std::to_string(i) + "** != b" +
                                    std::to_string(i),
                                {{"i", double(i)}});
  }
  // (ab)* = b* a* on basis pairs; checked before associativity so that
  // a corrupted product surfaces as the involution law it breaks.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto lhs = raw.star_of(raw.multiply(e(i), e(j)));
      auto rhs = raw.multiply(raw.star_of(e(j)), raw.star_of(e(i)));
      double scale = std::max({coeff_scale(lhs), coeff_scale(rhs), 1.0});
      if (coeff_dist(lhs, rhs) > tol * scale)
        throw InvolutionViolation(
            "(b" + std::to_string(i) + " b" + std::to_string(j) +
                ")* != b" + std::to_string(j) + "* b" + std::to_string(i) + "*",
            {{"i", double(i)}, {"j", double(j)}});
    }

  // Associativity on basis triples.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto lhs = raw.multiply(raw.multiply(e(i), e(j)), e(k));
        auto rhs = raw.multiply(e(i), raw.multiply(e(j), e(k)));
        double scale = std::max({coeff_scale(lhs), coeff_scale(rhs), 1.0});
        if (coeff_dist(lhs, rhs) > tol * scale)
          throw AssociativityViolation(
              "(b" + std::to_string(i) + " b" + std::to_string(j) + ") b" +
                  std::to_string(k) + " != b" + std::to_string(i) + " (b" +
                  std::to_string(j) + " b" + std::to_string(k) + ")",
              {{"i", double(i)}, {"j", double(j)}, {"k", double(k)}});
      }

  // Norm submultiplicative on basis pairs.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double lhs = raw.norm(raw.multiply(e(i), e(j)));
      double rhs = raw.norm(e(i)) * raw.norm(e(j));
      if (lhs > rhs * (1.0 + tol) + tol)
        throw NormViolation("|b" + std::to_string(i) + " b" +
                                std::to_string(j) + "| > |b" +
                                std::to_string(i) + "| |b" +
                                std::to_string(j) + "|",
                            {{"i", double(i)},
                             {"j", double(j)},
                             {"lhs", lhs},
                             {"rhs", rhs}});
    }

  // Realization must be a faithful *-homomorphism for the operator tag.
  if (raw.norm_tag == NormTag::Operator) {
    for (std::size_t i = 0; i < n; ++i) {
      CMat lhs = raw.rep_mats[i].adjoint();
      CMat rhs = raw.realize(raw.star_of(e(i)));
      if (op_norm(lhs - rhs) > tol * (1.0 + op_norm(lhs)))
        throw InvolutionViolation("realization is not *-compatible at b" +
                                      std::to_string(i),
                                  {{"i", double(i)}});
      for (std::size_t j = 0; j < n; ++j) {
        CMat prod = raw.rep_mats[i] * raw.rep_mats[j];
        CMat expect = raw.realize(raw.multiply(e(i), e(j)));
        if (op_norm(prod - expect) > tol * (1.0 + op_norm(prod)))
          throw NormViolation("realization not multiplicative at (b" +
                                  std::to_string(i) + ", b" +
                                  std::to_string(j) + ")",
                              {{"i", double(i)}, {"j", double(j)}});
      }
    }
    const std::size_t c = raw.rep_mats[0].rows();
    CMat stack(n, c * c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < c; ++r)
        for (std::size_t s = 0; s < c; ++s)
          stack(i, r * c + s) = raw.rep_mats[i](r, s);
    if (nullspace(stack.adjoint(), tol).cols() > 0)
      throw NormViolation("realization matrices are linearly dependent");
  }

  if (raw.unit) {
    auto u = e(*raw.unit);
    for (std::size_t i = 0; i < n; ++i) {
      if (coeff_dist(raw.multiply(u, e(i)), e(i)) > tol ||
          coeff_dist(raw.multiply(e(i), u), e(i)) > tol)
        throw InvalidInput("declared unit does not act as identity",
                           {{"unit", double(*raw.unit)}});
    }
    raw.unit_element = u;
  } else {
    // Detect a unit element by least squares on u b_j = b_j u = b_j.
    CMat m(2 * n * n, n), rhs(2 * n * n, 1);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          m(j * n + k, i) = raw.mult[i][j][k];
          m(n * n + j * n + k, i) = raw.mult[j][i][k];
        }
        rhs(j * n + k, 0) = (j == k) ? 1.0 : 0.0;
        rhs(n * n + j * n + k, 0) = (j == k) ? 1.0 : 0.0;
      }
    try {
      CMat u = solve(m.adjoint() * m, m.adjoint() * rhs);
      if (vec_norm(m * u - rhs) <= std::max(tol, 1e-10) * vec_norm(rhs)) {
        std::vector<cxd> uvec(n);
        for (std::size_t i = 0; i < n; ++i) uvec[i] = u(i, 0);
        raw.unit_element = uvec;
      }
    } catch (const NotInvertible&) {
      // No unit.
    }
  }
  return raw;
}

StarAlgebra group_ring(const std::vector<std::size_t>& orders) {
  if (orders.empty()) throw InvalidInput("group ring needs at least one order");
  for (std::size_t o : orders)
    if (o < 1) throw InvalidInput("cyclic orders must be >= 1");
  std::size_t n = 1;
  for (std::size_t o : orders) n *= o;

  auto to_tuple = [&](std::size_t idx) {
    std::vector<std::size_t> t(orders.size());
    for (std::size_t k = orders.size(); k-- > 0;) {
      t[k] = idx % orders[k];
      idx /= orders[k];
    }
    return t;
  };
  auto to_index = [&](const std::vector<std::size_t>& t) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < orders.size(); ++k) idx = idx * orders[k] + t[k];
    return idx;
  };
  auto add = [&](std::size_t a, std::size_t b) {
    auto ta = to_tuple(a), tb = to_tuple(b);
    for (std::size_t k = 0; k < orders.size(); ++k)
      ta[k] = (ta[k] + tb[k]) % orders[k];
    return to_index(ta);
  };
  auto neg = [&](std::size_t a) {
    auto t = to_tuple(a);
    for (std::size_t k = 0; k < orders.size(); ++k)
      t[k] = (orders[k] - t[k]) % orders[k];
    return to_index(t);
  };

  StarAlgebra alg;
  alg.dim = n;
  alg.norm_tag = NormTag::Ell1;
  alg.ell1_weights.assign(n, 1.0);
  alg.mult.assign(n, std::vector<std::vector<cxd>>(n, std::vector<cxd>(n)));
  alg.star = CMat(n, n);
  alg.basis_names.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto t = to_tuple(i);
    std::string name = "d";
    for (std::size_t k = 0; k < t.size(); ++k)
      name += (k ? "," : "") + std::to_string(t[k]);
    alg.basis_names[i] = name;
    alg.star(i, neg(i)) = 1.0;
    for (std::size_t j = 0; j < n; ++j) alg.mult[i][j][add(i, j)] = 1.0;
  }
  alg.unit = 0;
  return build_algebra(std::move(alg));
}

StarAlgebra unitise(const StarAlgebra& a) {
  if (a.is_unital()) return a;
  const std::size_t n = a.dim;
  StarAlgebra out;
  out.dim = n + 1;
  out.basis_names = a.basis_names;
  out.basis_names.push_back("e");
  out.norm_tag = a.norm_tag;
  out.ell1_weights = a.ell1_weights;
  out.mult.assign(n + 1, std::vector<std::vector<cxd>>(
                             n + 1, std::vector<cxd>(n + 1, cxd(0.0))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out.mult[i][j][k] = a.mult[i][j][k];
  for (std::size_t i = 0; i <= n; ++i) {
    out.mult[i][n][i] = 1.0;  // b_i e = b_i
    out.mult[n][i][i] = 1.0;  // e b_i = b_i
  }
  out.mult[n][n] = std::vector<cxd>(n + 1, cxd(0.0));
  out.mult[n][n][n] = 1.0;
  out.star = CMat(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.star(i, j) = a.star(i, j);
  out.star(n, n) = 1.0;
  out.unit = n;
  std::vector<cxd> uvec(n + 1, cxd(0.0));
  uvec[n] = 1.0;
  out.unit_element = uvec;
  if (a.norm_tag == NormTag::Operator) {
    out.rep_mats = a.rep_mats;
    out.rep_mats.push_back(CMat::identity(a.rep_mats.at(0).rows()));
  } else {
    out.box_norm_unit = true;
  }
  return out;
}

AlgElement embed_in_unitisation(const StarAlgebra& a, const AlgElement& x) {
  if (x.size() != a.dim) throw InvalidInput("element dimension mismatch");
  if (a.is_unital()) return x;
  AlgElement y = x;
  y.push_back(cxd(0.0));
  return y;
}

CMat left_regular(const StarAlgebra& a, const AlgElement& x) {
  if (x.size() != a.dim) throw InvalidInput("element dimension mismatch");
  const StarAlgebra tilde = a.is_unital() ? a : unitise(a);
  const AlgElement y = embed_in_unitisation(a, x);
  CMat l(tilde.dim, tilde.dim);
  for (std::size_t j = 0; j < tilde.dim; ++j) {
    std::vector<cxd> ej(tilde.dim, cxd(0.0));
    ej[j] = 1.0;
    auto col = tilde.multiply(y, ej);
    for (std::size_t i = 0; i < tilde.dim; ++i) l(i, j) = col[i];
  }
  return l;
}

std::vector<cxd> group_values(std::vector<cxd> values, double gap) {
  std::sort(values.begin(), values.end(), [](cxd a, cxd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<bool> assigned(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> cluster = {i};
    assigned[i] = true;
    for (std::size_t c = 0; c < cluster.size(); ++c)
      for (std::size_t j = 0; j < values.size(); ++j)
        if (!assigned[j] &&
            std::abs(values[cluster[c]] - values[j]) <= gap) {
          assigned[j] = true;
          cluster.push_back(j);
        }
    clusters.push_back(std::move(cluster));
  }
  std::vector<cxd> out;
  out.reserve(values.size());
  for (const auto& cluster : clusters) {
    cxd mean = 0.0;
    for (std::size_t idx : cluster) mean += values[idx];
    mean /= static_cast<double>(cluster.size());
    for (std::size_t k = 0; k < cluster.size(); ++k) out.push_back(mean);
  }
  std::sort(out.begin(), out.end(), [](cxd a, cxd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<cxd> spectrum(const StarAlgebra& alg, const AlgElement& a,
                          double tol) {
  CMat l = left_regular(alg, a);
  EigenDecomp d = eig(l, tol);
  double scale = op_norm(l);
  return group_values(d.values, tol * (1.0 + scale));
}

}  // namespace finstar
