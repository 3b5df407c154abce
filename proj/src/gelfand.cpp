#include "finstar/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace finstar {

namespace {

std::vector<cxd> basis_vector(std::size_t dim, std::size_t i) {
  std::vector<cxd> e(dim, cxd(0.0));
  e[i] = 1.0;
  return e;
}

bool lex_less(const std::vector<cxd>& a, const std::vector<cxd>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

}  // namespace

CharacterTable characters(const StarAlgebra& alg, double tol,
                          std::uint64_t seed) {
  for (std::size_t i = 0; i < alg.dim; ++i)
    for (std::size_t j = i + 1; j < alg.dim; ++j) {
      auto ij = alg.multiply(basis_vector(alg.dim, i), basis_vector(alg.dim, j));
      auto ji = alg.multiply(basis_vector(alg.dim, j), basis_vector(alg.dim, i));
      double worst = 0.0;
      for (std::size_t k = 0; k < alg.dim; ++k)
        worst = std::max(worst, std::abs(ij[k] - ji[k]));
      if (worst > std::max(tol, 1e-12))
        throw NotCommutative("basis elements do not commute",
                             {{"i", double(i)}, {"j", double(j)}});
    }

  const StarAlgebra tilde = alg.is_unital() ? alg : unitise(alg);
  const std::size_t n = tilde.dim;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  double best_residual = HUGE_VAL;
  CMat best_rows;
  for (int attempt = 0; attempt < 3; ++attempt) {
    AlgElement c(n);
    for (auto& z : c) z = cxd(u(rng), u(rng));
    CMat lc = left_regular(tilde, c);
    EigenDecomp d;
    try {
      d = eig(lc, tol);
    } catch (const NoConvergence&) {
      continue;
    }
    CMat s = d.vectors;
    // tau_t(b_i) = (S^{-1} L_{b_i} S)_{tt}; defective draws surface as a
    // singular eigenvector matrix or a large multiplicativity residual.
    CMat rows(n, alg.dim);
    double offdiag = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < alg.dim && ok; ++i) {
      CMat lb = left_regular(tilde, embed_in_unitisation(
                                        alg, basis_vector(alg.dim, i)));
      CMat diag;
      try {
        diag = solve(s, lb * s);
      } catch (const NotInvertible&) {
        ok = false;
        break;
      }
      for (std::size_t t = 0; t < n; ++t) {
        rows(t, i) = diag(t, t);
        for (std::size_t r = 0; r < n; ++r)
          if (r != t) offdiag = std::max(offdiag, std::abs(diag(r, t)));
      }
    }
    if (!ok) continue;
    // Multiplicativity residual through the structure constants.
    double resid = offdiag;
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t i = 0; i < alg.dim; ++i)
        for (std::size_t j = 0; j < alg.dim; ++j) {
          auto prod =
              alg.multiply(basis_vector(alg.dim, i), basis_vector(alg.dim, j));
          cxd lhs = 0.0;
          for (std::size_t k = 0; k < alg.dim; ++k)
            lhs += prod[k] * rows(t, k);
          cxd rhs = rows(t, i) * rows(t, j);
          resid = std::max(resid, std::abs(lhs - rhs));
        }
    if (resid < best_residual) {
      best_residual = resid;
      best_rows = rows;
    }
    if (resid <= 1e-8) break;
  }
  if (best_residual > 1e-7)
    throw NotSemisimple(
        "no multiplicative diagonalization found (defective draws)",
        {{"residual", best_residual}});

  // Drop the adjoined-unit character (vanishes on all of A), then any
  // duplicate rows, and order rows lexicographically.
  std::vector<std::vector<cxd>> rows;
  for (std::size_t t = 0; t < best_rows.rows(); ++t) {
    std::vector<cxd> row(alg.dim);
    double sup = 0.0;
    for (std::size_t i = 0; i < alg.dim; ++i) {
      row[i] = best_rows(t, i);
      sup = std::max(sup, std::abs(row[i]));
    }
    if (!alg.is_unital() && sup <= 1e-8) continue;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), lex_less);
  CharacterTable table;
  table.multiplicativity_residual = best_residual;
  table.characters = CMat(rows.size(), alg.dim);
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t i = 0; i < alg.dim; ++i)
      table.characters(t, i) = rows[t][i];
  return table;
}

std::vector<cxd> gelfand_transform(const StarAlgebra& alg,
                                   const CharacterTable& table,
                                   const AlgElement& a) {
  if (a.size() != alg.dim) throw InvalidInput("element dimension mismatch");
  std::vector<cxd> out(table.count(), cxd(0.0));
  for (std::size_t t = 0; t < table.count(); ++t)
    for (std::size_t i = 0; i < alg.dim; ++i)
      out[t] += a[i] * table.value(t, i);
  return out;
}

L1ZElement L1ZElement::delta(long k) {
  L1ZElement d;
  d.offset = k;
  d.coeffs = {cxd(1.0)};
  return d;
}

void L1ZElement::trim() {
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == cxd(0.0)) ++lead;
  if (lead == coeffs.size()) {
    coeffs.clear();
    offset = 0;
    return;
  }
  std::size_t tail = coeffs.size();
  while (tail > lead && coeffs[tail - 1] == cxd(0.0)) --tail;
  coeffs = std::vector<cxd>(coeffs.begin() + lead, coeffs.begin() + tail);
  offset += static_cast<long>(lead);
}

cxd L1ZElement::at(long k) const {
  if (k < lo() || k >= hi()) return cxd(0.0);
  return coeffs[static_cast<std::size_t>(k - offset)];
}

double L1ZElement::norm1() const {
  double s = 0.0;
  for (const auto& z : coeffs) s += std::abs(z);
  return s;
}

L1ZElement L1ZElement::star() const {
  L1ZElement out;
  if (coeffs.empty()) return out;
  out.offset = -(hi() - 1);
  out.coeffs.resize(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out.coeffs[i] = std::conj(coeffs[coeffs.size() - 1 - i]);
  return out;
}

L1ZElement l1z_convolve(const L1ZElement& a, const L1ZElement& b) {
  L1ZElement out;
  if (a.coeffs.empty() || b.coeffs.empty()) return out;
  out.offset = a.offset + b.offset;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, cxd(0.0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == cxd(0.0)) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  out.trim();
  return out;
}

L1ZElement l1z_add(const L1ZElement& a, const L1ZElement& b) {
  L1ZElement out;
  if (a.coeffs.empty()) return b;
  if (b.coeffs.empty()) return a;
  long lo = std::min(a.lo(), b.lo());
  long hi = std::max(a.hi(), b.hi());
  out.offset = lo;
  out.coeffs.assign(static_cast<std::size_t>(hi - lo), cxd(0.0));
  for (long k = lo; k < hi; ++k)
    out.coeffs[static_cast<std::size_t>(k - lo)] = a.at(k) + b.at(k);
  out.trim();
  return out;
}

std::vector<cxd> l1z_transform_grid(const L1ZElement& a, std::size_t grid) {
  if (grid < 2 * std::max<std::size_t>(a.coeffs.size(), 1))
    throw InvalidInput("grid too coarse for the support width");
  std::vector<cxd> out(grid, cxd(0.0));
  for (std::size_t j = 0; j < grid; ++j) {
    double t = 2.0 * std::numbers::pi * static_cast<double>(j) /
               static_cast<double>(grid);
    cxd s = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      long k = a.offset + static_cast<long>(i);
      s += a.coeffs[i] * std::polar(1.0, -static_cast<double>(k) * t);
    }
    out[j] = s;
  }
  return out;
}

WienerResult wiener_invert(const L1ZElement& a, std::size_t truncation,
                           std::size_t grid, double tol) {
  const long k_max = static_cast<long>(truncation);
  std::vector<cxd> f = l1z_transform_grid(a, grid);
  WienerResult out;
  out.min_symbol = HUGE_VAL;
  std::size_t argmin = 0;
  for (std::size_t j = 0; j < grid; ++j)
    if (std::abs(f[j]) < out.min_symbol) {
      out.min_symbol = std::abs(f[j]);
      argmin = j;
    }
  if (out.min_symbol <= std::max(tol, 1e-12))
    throw TransformVanishes(
        "symbol has a near-zero on the grid",
        {{"t", 2.0 * std::numbers::pi * double(argmin) / double(grid)},
         {"abs", out.min_symbol}});

  out.inverse.offset = -k_max;
  out.inverse.coeffs.assign(2 * truncation + 1, cxd(0.0));
  for (long k = -k_max; k <= k_max; ++k) {
    cxd s = 0.0;
    for (std::size_t j = 0; j < grid; ++j) {
      double t = 2.0 * std::numbers::pi * static_cast<double>(j) /
                 static_cast<double>(grid);
      s += std::polar(1.0, static_cast<double>(k) * t) / f[j];
    }
    out.inverse.coeffs[static_cast<std::size_t>(k + k_max)] =
        s / static_cast<double>(grid);
  }
  out.tail = std::max(std::abs(out.inverse.at(-k_max)),
                      std::abs(out.inverse.at(k_max)));
  L1ZElement conv = l1z_convolve(a, out.inverse);
  out.residual = l1z_add(conv, [] {
                   L1ZElement d = L1ZElement::delta(0);
                   d.coeffs[0] = cxd(-1.0);
                   return d;
                 }())
                     .norm1();
  out.inverse.trim();
  return out;
}

}  // namespace finstar
