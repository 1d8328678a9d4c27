#include "gksl/hs_basis.hpp"

#include <cmath>
#include <string>

#include "gksl/error.hpp"

namespace gksl {

HSBasis gell_mann_basis(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "gell_mann_basis: n must be >= 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit{0.0, 1.0};

  HSBasis basis;
  basis.n = n;
  basis.elements.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ComplexMatrix s(n, n);
      s(i, j) = inv_sqrt2;
      s(j, i) = inv_sqrt2;
      basis.elements.push_back(std::move(s));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ComplexMatrix a(n, n);
      a(i, j) = -i_unit * inv_sqrt2;
      a(j, i) = i_unit * inv_sqrt2;
      basis.elements.push_back(std::move(a));
    }
  for (std::size_t k = 1; k < n; ++k) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    ComplexMatrix d(n, n);
    for (std::size_t j = 0; j < k; ++j) d(j, j) = norm;
    d(k, k) = -static_cast<double>(k) * norm;
    basis.elements.push_back(std::move(d));
  }
  basis.elements.push_back(ComplexMatrix::identity(n) * Complex(1.0 / std::sqrt(static_cast<double>(n))));
  return basis;
}

std::vector<ComplexMatrix> matrix_units(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "matrix_units: n must be >= 1");
  std::vector<ComplexMatrix> units;
  units.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) units.push_back(ComplexMatrix::unit(n, i, j));
  return units;
}

ComplexMatrix completeness_sum(const HSBasis& basis, const ComplexMatrix& a) {
  if (a.rows() != basis.n || a.cols() != basis.n) {
    throw Error(ErrorCode::DimensionMismatch, "completeness_sum: operand is " + std::to_string(a.rows()) +
                                                  "x" + std::to_string(a.cols()) + ", basis n = " +
                                                  std::to_string(basis.n));
  }
  ComplexMatrix sum(basis.n, basis.n);
  for (const auto& f : basis.elements) sum += f * a * f.adjoint();
  return sum;
}

HSBasis rotate_basis(const HSBasis& basis, const ComplexMatrix& unitary) {
  const std::size_t dim = basis.size();
  if (unitary.rows() != dim || unitary.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "rotate_basis: unitary must be " + std::to_string(dim) +
                                                  "x" + std::to_string(dim));
  }
  HSBasis out;
  out.n = basis.n;
  out.elements.reserve(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    ComplexMatrix f(basis.n, basis.n);
    for (std::size_t b = 0; b < dim; ++b) f += unitary(a, b) * basis[b];
    out.elements.push_back(std::move(f));
  }
  return out;
}

double orthonormality_defect(const std::vector<ComplexMatrix>& family) {
  double worst = 0.0;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < family.size(); ++b) {
      const Complex expected = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(hs_inner(family[b], family[a]) - expected));
    }
  return worst;
}

void validate_basis(const HSBasis& basis, double tol) {
  if (basis.n < 1 || basis.size() != basis.n * basis.n) {
    throw Error(ErrorCode::InvariantViolation, "basis must hold n^2 elements");
  }
  for (const auto& f : basis.elements) {
    if (f.rows() != basis.n || f.cols() != basis.n) {
      throw Error(ErrorCode::InvariantViolation, "basis element has wrong shape");
    }
  }
  if (const double defect = orthonormality_defect(basis.elements); defect > tol) {
    throw Error(ErrorCode::InvariantViolation, "basis is not orthonormal (defect " + std::to_string(defect) + ")");
  }
  const ComplexMatrix last = ComplexMatrix::identity(basis.n) * Complex(1.0 / std::sqrt(static_cast<double>(basis.n)));
  if (distance(basis.elements.back(), last) > tol) {
    throw Error(ErrorCode::InvariantViolation, "last basis element is not I / sqrt(n)");
  }
}

}  // namespace gksl
