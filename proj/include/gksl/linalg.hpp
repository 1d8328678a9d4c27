// linalg.hpp — dense complex matrices and the handful of factorizations the
// rest of the library needs (Hermitian Jacobi eigensolver, matrix exponential,
// column-stacking vectorization, Kronecker products, LU inverse).
//
// Vectorization convention: vec() stacks COLUMNS, so the map A -> X A Y has
// matrix kron(transpose(Y), X). Every module relies on this.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gksl {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Row-major entries; throws DimensionMismatch / NonFiniteEntry.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);
  // Matrix unit with a single 1 at (row, col), zero-based.
  static ComplexMatrix unit(std::size_t n, std::size_t row, std::size_t col);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

// Frobenius norm of a - b; dimensions must agree.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Hilbert-Schmidt inner product <a, b> = tr(b* a), linear in the first slot.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// (M + M*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

// ||M - M*||_F <= tol * max(1, ||M||_F).
bool is_hermitian(const ComplexMatrix& m, double tol);

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column j belongs to eigenvalues[j]
};

// Cyclic complex Jacobi. Requires ||M - M*|| <= 1e-9 ||M||; the Hermitian part
// is what actually gets diagonalized.
HermitianEigenResult hermitian_eig(const ComplexMatrix& m);

double min_eig_hermitian(const ComplexMatrix& m);

// min eigenvalue >= -tol * max(1, ||M||_F).
bool is_psd(const ComplexMatrix& m, double tol);

// Scaling and squaring with a 20-term Taylor core.
ComplexMatrix expm(const ComplexMatrix& m);

// Gauss-Jordan with partial pivoting; throws SingularMatrix.
ComplexMatrix inverse(const ComplexMatrix& m);

ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned long long exponent);

ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(std::span<const Complex> v, std::size_t n);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Block-diagonal direct sum.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gksl
