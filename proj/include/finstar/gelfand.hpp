#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "finstar/staralg.hpp"

namespace finstar {

/// Character table of a commutative algebra: row t lists tau_t(b_i).
struct CharacterTable {
  CMat characters;                    // rows = characters, cols = basis
  double multiplicativity_residual = 0.0;
  std::size_t count() const { return characters.rows(); }
  cxd value(std::size_t t, std::size_t i) const { return characters(t, i); }
};

/// All multiplicative linear functionals of a commutative semisimple
/// algebra, found by diagonalizing the left-regular matrix of a generic
/// element (fixed seed, retried on defective draws).
CharacterTable characters(const StarAlgebra& alg, double tol = kDefaultTol,
                          std::uint64_t seed = 0);

/// Gelfand transform of an element: the vector (tau_t(a))_t.
std::vector<cxd> gelfand_transform(const StarAlgebra& alg,
                                   const CharacterTable& table,
                                   const AlgElement& a);

/// Finitely supported element of l1(Z): coefficients on
/// [offset, offset + coeffs.size()), canonically trimmed.
struct L1ZElement {
  long offset = 0;
  std::vector<cxd> coeffs;

  static L1ZElement delta(long k);
  void trim();
  cxd at(long k) const;
  long lo() const { return offset; }
  long hi() const { return offset + static_cast<long>(coeffs.size()); }
  double norm1() const;
  L1ZElement star() const;  // a*(k) = conj a(-k)
};

L1ZElement l1z_convolve(const L1ZElement& a, const L1ZElement& b);
L1ZElement l1z_add(const L1ZElement& a, const L1ZElement& b);

/// Symbol values f(t_j) = sum_k a(k) e^{-i k t_j} at t_j = 2 pi j / N.
std::vector<cxd> l1z_transform_grid(const L1ZElement& a, std::size_t grid);

struct WienerResult {
  L1ZElement inverse;       // support in [-K, K]
  double residual;          // ||a * b - delta_0||_1
  double tail;              // max(|b(-K)|, |b(K)|), heuristic certificate
  double min_symbol;        // min_t |f(t)| on the grid
};

/// Numerical Wiener inversion: Fourier coefficients of 1/f by grid
/// quadrature. Rejects symbols with a near-zero on the grid.
WienerResult wiener_invert(const L1ZElement& a, std::size_t truncation,
                           std::size_t grid, double tol = kDefaultTol);

}  // namespace finstar
