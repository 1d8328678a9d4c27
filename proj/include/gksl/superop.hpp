// superop.hpp — linear maps on N x N matrices.
//
// A SuperOperator stores the n^2 x n^2 matrix acting on column-stacked
// vectorizations: apply(L, A) = unvec(L.mat * vec(A)). The coefficient form
// expands L in the family Gamma_ab(A) = F_a A F_b* for an orthonormal basis F.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gksl/hs_basis.hpp"
#include "gksl/linalg.hpp"

namespace gksl {

inline constexpr double kDefaultPredicateTol = 1e-9;

class SuperOperator {
 public:
  SuperOperator() = default;
  // Throws DimensionMismatch unless mat is n^2 x n^2.
  SuperOperator(std::size_t n, ComplexMatrix mat);

  static SuperOperator zero(std::size_t n);
  static SuperOperator identity(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const ComplexMatrix& mat() const noexcept { return mat_; }

  friend bool operator==(const SuperOperator&, const SuperOperator&) = default;

 private:
  std::size_t n_ = 0;
  ComplexMatrix mat_;
};

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator*(Complex s, const SuperOperator& a);

// Frobenius distance between the n^2 x n^2 representations.
double distance(const SuperOperator& a, const SuperOperator& b);

ComplexMatrix apply(const SuperOperator& op, const ComplexMatrix& a);

struct SandwichTerm {
  ComplexMatrix left;   // X
  ComplexMatrix right;  // Y
};

// A -> sum_t X_t A Y_t, compiled via vec(X A Y) = kron(Y^T, X) vec(A).
SuperOperator from_sandwich_terms(std::size_t n, const std::vector<SandwichTerm>& terms);

struct CoeffMatrix {
  std::size_t n = 0;
  ComplexMatrix c;  // n^2 x n^2, indexed by the basis ordering
};

// c_ab = <L, Gamma_ab> = sum_k tr((F_a F_k F_b*)* L(F_k)).
CoeffMatrix to_coeff_matrix(const SuperOperator& op, const HSBasis& basis);

// A -> sum_ab c_ab F_a A F_b*.
SuperOperator from_coeff_matrix(const CoeffMatrix& coeffs, const HSBasis& basis);

// Both predicates use the default Gell-Mann basis; tolerances are relative to
// max(1, norm) of the object tested.
bool is_hermiticity_preserving(const SuperOperator& op, double tol = kDefaultPredicateTol);
bool is_trace_annihilating(const SuperOperator& op, double tol = kDefaultPredicateTol);

// ||c - c*|| / max(1, ||c||) and max_k |tr L(F_k)| / max(1, ||L||): the
// quantities the predicates threshold.
double hermiticity_defect(const SuperOperator& op);
double trace_annihilation_defect(const SuperOperator& op);

// L^(k) on (nk) x (nk) matrices: apply(L^(k), kron(A, E_ij)) = kron(L(A), E_ij).
// The first Kronecker factor is the system, the second the k-level ancilla.
SuperOperator ampliate(const SuperOperator& op, std::size_t k);

}  // namespace gksl
