#pragma once

#include <map>
#include <string>
#include <vector>

#include "finstar/cmat.hpp"

namespace finstar {

/// Real symbol sequence g_n over n = 1, 2, ... in closed form.
struct Symbol {
  enum class Family { Table, Affine, Power };
  Family family = Family::Affine;
  double alpha = 1.0;  // affine: g_n = alpha n + beta; power: alpha n^t
  double beta = 0.0;
  double exponent = 1.0;       // power family exponent t
  std::vector<double> table;   // Table family, 1-based via table[n-1]

  double eval(std::size_t n) const;
  /// Growth exponent t with g_n ~ n^t (0 for bounded symbols).
  double growth_exponent() const;
  bool bounded() const;
};

/// Positive weights w_n with sum normalized to 1 at each truncation.
struct Weights {
  enum class Family { Uniform, Geometric, PowerLaw, Table };
  Family family = Family::Uniform;
  double ratio = 0.5;          // geometric: r^n
  double exponent = 2.0;       // power law: n^-q
  std::vector<double> table;

  double raw(std::size_t n) const;
  /// Normalized weights over n = 1..truncation.
  std::vector<double> normalized(std::size_t truncation) const;
};

/// Diagonal model of an unbounded self-adjoint multiplication operator
/// on a weighted sequence space.
struct DiagonalOperator {
  Symbol symbol;
  Weights weights;
  std::size_t truncation = 4096;
};

/// Sequence vector: finitely supported entries, or the power-law family
/// x_n = coeff * n^-s.
struct SeqVector {
  std::map<std::size_t, cxd> entries;  // finite support, 1-based indices
  bool power_family = false;
  double coeff = 1.0;
  double s = 1.0;

  static SeqVector basis(std::size_t n);
  bool finitely_supported() const { return !power_family; }
};

struct DomainCertificate {
  bool member = false;
  bool heuristic = false;      // decided by partial sums, not exponents
  double p_exponent = 0.0;     // p-series exponent 2(s - t) when exact
  std::string note;
};

/// Function-of-symbol for domain questions, tracked by its effect on
/// growth exponents: f(g)_n ~ n^(power * t_g).
struct SymbolFn {
  enum class Kind { Identity, Power, Bounded };
  Kind kind = Kind::Identity;
  double power = 1.0;
  double bound = 1.0;  // sup |f| for the bounded kind

  double eval(double g) const;
  double growth(double symbol_growth) const;
};

/// x in D_f iff sum |f(g_n)|^2 <P_n x, x> converges; power-law pairs are
/// decided exactly by p-series exponents, finite supports trivially, and
/// everything else by a flagged partial-sum heuristic.
DomainCertificate domain_membership(const DiagonalOperator& a,
                                    const SeqVector& x, const SymbolFn& f);

/// Psi_P(f) x = (f(g_n) x_n), entrywise on a finitely supported vector.
SeqVector apply_function(const DiagonalOperator& a, const SymbolFn& f,
                         const SeqVector& x, std::size_t truncation);

/// Weighted norm ||x||^2 = sum w_n |x_n|^2 at the operator's truncation.
double weighted_norm(const DiagonalOperator& a, const SeqVector& x);

struct CayleyPair {
  std::vector<cxd> u;          // u_n = (g_n - i) / (g_n + i), n <= sample
  double roundtrip_residual;   // max rel. error of i(1+u)(1-u)^{-1} vs g
};

/// Cayley transform of the diagonal operator and its inverse check.
CayleyPair cayley_pair(const DiagonalOperator& a, std::size_t sample = 0);

/// (U_t x)_n = exp(-i t g_n) x_n on finitely supported x.
SeqVector evolve(const DiagonalOperator& a, double t, const SeqVector& x);

/// || -(1/(i h))(U_h x - x) - Psi(id) x ||, first-order in h.
double generator_check(const DiagonalOperator& a, const SeqVector& x,
                       double h);

}  // namespace finstar
