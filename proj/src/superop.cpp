#include "gksl/superop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gksl/error.hpp"

namespace gksl {

namespace {

void require_operand(const SuperOperator& op, const ComplexMatrix& a, const char* where) {
  if (a.rows() != op.n() || a.cols() != op.n()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": operand is " + std::to_string(a.rows()) +
                                                  "x" + std::to_string(a.cols()) + ", map acts on n = " +
                                                  std::to_string(op.n()));
  }
}

void require_basis(const HSBasis& basis, std::size_t n, const char* where) {
  if (basis.n != n || basis.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": basis n = " + std::to_string(basis.n) +
                                                  ", map n = " + std::to_string(n));
  }
}

}  // namespace

SuperOperator::SuperOperator(std::size_t n, ComplexMatrix mat) : n_(n), mat_(std::move(mat)) {
  if (mat_.rows() != n * n || mat_.cols() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "superoperator on n = " + std::to_string(n) + " needs a " +
                                                  std::to_string(n * n) + "x" + std::to_string(n * n) +
                                                  " matrix, got " + std::to_string(mat_.rows()) + "x" +
                                                  std::to_string(mat_.cols()));
  }
}

SuperOperator SuperOperator::zero(std::size_t n) { return {n, ComplexMatrix(n * n, n * n)}; }

SuperOperator SuperOperator::identity(std::size_t n) { return {n, ComplexMatrix::identity(n * n)}; }

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "superoperator sum");
  return {a.n(), a.mat() + b.mat()};
}

SuperOperator operator*(Complex s, const SuperOperator& a) { return {a.n(), s * a.mat()}; }

double distance(const SuperOperator& a, const SuperOperator& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "superoperator distance");
  return distance(a.mat(), b.mat());
}

ComplexMatrix apply(const SuperOperator& op, const ComplexMatrix& a) {
  require_operand(op, a, "apply");
  const ComplexVector v = vec(a);
  return unvec(op.mat() * std::span<const Complex>(v), op.n());
}

SuperOperator from_sandwich_terms(std::size_t n, const std::vector<SandwichTerm>& terms) {
  ComplexMatrix mat(n * n, n * n);
  for (const auto& term : terms) {
    if (term.left.rows() != n || term.left.cols() != n || term.right.rows() != n || term.right.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "from_sandwich_terms: every X and Y must be " +
                                                    std::to_string(n) + "x" + std::to_string(n));
    }
    mat += kron(term.right.transpose(), term.left);
  }
  return {n, std::move(mat)};
}

CoeffMatrix to_coeff_matrix(const SuperOperator& op, const HSBasis& basis) {
  require_basis(basis, op.n(), "to_coeff_matrix");
  const std::size_t dim = basis.size();

  std::vector<ComplexMatrix> images;
  std::vector<ComplexMatrix> adjoints;
  images.reserve(dim);
  adjoints.reserve(dim);
  for (const auto& f : basis.elements) {
    images.push_back(apply(op, f));
    adjoints.push_back(f.adjoint());
  }

  CoeffMatrix out{op.n(), ComplexMatrix(dim, dim)};
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t k = 0; k < dim; ++k) {
      const ComplexMatrix left = basis[a] * basis[k];
      for (std::size_t b = 0; b < dim; ++b) {
        // tr((F_a F_k F_b*)* L(F_k)) = <L(F_k), F_a F_k F_b*>
        out.c(a, b) += hs_inner(images[k], left * adjoints[b]);
      }
    }
  }
  return out;
}

SuperOperator from_coeff_matrix(const CoeffMatrix& coeffs, const HSBasis& basis) {
  require_basis(basis, coeffs.n, "from_coeff_matrix");
  const std::size_t dim = basis.size();
  if (coeffs.c.rows() != dim || coeffs.c.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "from_coeff_matrix: coefficient matrix must be " +
                                                  std::to_string(dim) + "x" + std::to_string(dim));
  }
  ComplexMatrix mat(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    // A -> F_a A F_b* has matrix kron(conj(F_b), F_a).
    const ComplexMatrix right = basis[b].conjugate();
    for (std::size_t a = 0; a < dim; ++a) {
      const Complex cab = coeffs.c(a, b);
      if (cab == Complex{}) continue;
      mat += cab * kron(right, basis[a]);
    }
  }
  return {coeffs.n, std::move(mat)};
}

double hermiticity_defect(const SuperOperator& op) {
  const CoeffMatrix c = to_coeff_matrix(op, gell_mann_basis(op.n()));
  return distance(c.c, c.c.adjoint()) / std::max(1.0, c.c.frobenius_norm());
}

double trace_annihilation_defect(const SuperOperator& op) {
  const HSBasis basis = gell_mann_basis(op.n());
  double worst = 0.0;
  for (const auto& f : basis.elements) worst = std::max(worst, std::abs(apply(op, f).trace()));
  return worst / std::max(1.0, op.mat().frobenius_norm());
}

bool is_hermiticity_preserving(const SuperOperator& op, double tol) { return hermiticity_defect(op) <= tol; }

bool is_trace_annihilating(const SuperOperator& op, double tol) { return trace_annihilation_defect(op) <= tol; }

SuperOperator ampliate(const SuperOperator& op, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidDimension, "ampliate: k must be >= 1");
  const std::size_t n = op.n();
  const std::size_t big = n * k;
  ComplexMatrix mat(big * big, big * big);
  // Input unit kron(E_ab, E_ij) sits at row a*k+i, column b*k+j; its image is
  // kron(L(E_ab), E_ij).
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t src = b * n + a;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t col = (b * k + j) * big + (a * k + i);
          for (std::size_t ap = 0; ap < n; ++ap)
            for (std::size_t bp = 0; bp < n; ++bp) {
              const Complex value = op.mat()(bp * n + ap, src);
              if (value == Complex{}) continue;
              mat((bp * k + j) * big + (ap * k + i), col) = value;
            }
        }
    }
  return {big, std::move(mat)};
}

}  // namespace gksl
