#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finstar/cmat.hpp"
#include "finstar/eig.hpp"

namespace finstar {

enum class NormTag { Operator, Ell1, Sup };

/// Finite-dimensional *-algebra given by a basis, structure constants,
/// an involution matrix and a norm tag.
///
///   b_i b_j   = sum_k mult[i][j][k] b_k
///   (b_i)^*   = sum_j star(i, j) b_j
///
/// With the Ell1 tag, per-basis weights scale the coefficient norm
/// |a| = sum_i w_i |a_i|. The Operator tag attaches a matrix realization
/// (one matrix per basis element) and uses its operator norm.
struct StarAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  std::vector<std::vector<std::vector<cxd>>> mult;  // mult[i][j][k]
  CMat star;
  NormTag norm_tag = NormTag::Ell1;
  std::vector<double> ell1_weights;  // optional; defaults to all ones
  std::vector<CMat> rep_mats;        // required for NormTag::Operator
  std::optional<std::size_t> unit;   // index of the unit element, if any

  // Filled by build_algebra: the unit as a coefficient vector, either
  // from the declared index or detected by solving u b_j = b_j u = b_j.
  // (Matrix algebras have a unit that is not a basis element.)
  std::optional<std::vector<cxd>> unit_element;

  // Set by unitise() when a unit was adjoined to a non-operator algebra:
  // the last coordinate is the unit and |lambda e + a| = |lambda| + |a|.
  bool box_norm_unit = false;

  /// Coefficients of the product of two coefficient vectors.
  std::vector<cxd> multiply(const std::vector<cxd>& a,
                            const std::vector<cxd>& b) const;
  std::vector<cxd> star_of(const std::vector<cxd>& a) const;
  double norm(const std::vector<cxd>& a) const;
  std::vector<cxd> unit_coeffs() const;  // throws if not unital
  bool is_unital() const { return unit_element.has_value(); }
  /// Matrix realization of an element (Operator tag only).
  CMat realize(const std::vector<cxd>& a) const;
  bool commutative(double tol = kDefaultTol) const;
};

/// Element of a StarAlgebra: a coefficient vector on the basis.
using AlgElement = std::vector<cxd>;

/// Validates associativity, the involution laws and submultiplicativity
/// of the chosen norm on basis pairs; throws the first violation found,
/// naming the offending basis triple/pair.
StarAlgebra build_algebra(StarAlgebra raw, double tol = kDefaultTol);

/// Group ring C[G] of a finite abelian group given as a list of cyclic
/// orders, with convolution product, inversion-conjugation involution
/// and the l1 norm.
StarAlgebra group_ring(const std::vector<std::size_t>& orders);

/// The unitisation: the algebra itself when unital, else dimension
/// dim+1 with an adjoined unit e and (lambda e + a)^* = conj(lambda) e + a^*.
StarAlgebra unitise(const StarAlgebra& a);

/// Matrix of left translation x |-> ax on the unitisation, in its
/// canonical basis (unit last when adjoined).
CMat left_regular(const StarAlgebra& a, const AlgElement& x);

/// sp(a), computed as the eigenvalues of the left-regular matrix on the
/// unitisation; values grouped within tol * (1 + ||L_a||).
std::vector<cxd> spectrum(const StarAlgebra& alg, const AlgElement& a,
                          double tol = kDefaultTol);

/// Embeds an element of `a` into unitise(a) (identity when unital).
AlgElement embed_in_unitisation(const StarAlgebra& a, const AlgElement& x);

/// Groups complex values by single-linkage with the given gap and
/// replaces each cluster by its mean (multiset size preserved);
/// output sorted lexicographically by (re, im).
std::vector<cxd> group_values(std::vector<cxd> values, double gap);

}  // namespace finstar
