// hs_basis.hpp — orthonormal bases of N x N matrices under the
// Hilbert-Schmidt inner product, identity direction last.

#pragma once

#include <cstddef>
#include <vector>

#include "gksl/linalg.hpp"

namespace gksl {

struct HSBasis {
  std::size_t n = 0;
  std::vector<ComplexMatrix> elements;  // n^2 entries; elements.back() = I / sqrt(n)

  std::size_t size() const noexcept { return elements.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return elements[i]; }
};

// Generalized Gell-Mann matrices, ordered: symmetric (E_ij + E_ji)/sqrt2 for
// i < j, antisymmetric -i(E_ij - E_ji)/sqrt2 for i < j, the n - 1 traceless
// diagonals, then I/sqrt(n). For n = 2 this is (sx, sy, sz, I)/sqrt2.
HSBasis gell_mann_basis(std::size_t n);

// E_ij with the 1 at row i, column j, (i, j) lexicographic.
std::vector<ComplexMatrix> matrix_units(std::size_t n);

// sum_a F_a A F_a*. Equals tr(A) * I for any orthonormal basis.
ComplexMatrix completeness_sum(const HSBasis& basis, const ComplexMatrix& a);

// F'_a = sum_b U(a, b) F_b. Orthonormality is preserved for unitary U; pass
// direct_sum(V, 1) to keep the identity element last.
HSBasis rotate_basis(const HSBasis& basis, const ComplexMatrix& unitary);

// Largest deviation of the Gram matrix from the identity.
double orthonormality_defect(const std::vector<ComplexMatrix>& family);

// Throws InvariantViolation unless the basis is orthonormal within tol and
// ends with I / sqrt(n).
void validate_basis(const HSBasis& basis, double tol = 1e-12);

}  // namespace gksl
