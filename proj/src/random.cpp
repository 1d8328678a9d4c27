#include "gksl/random.hpp"

#include <cmath>

#include "gksl/error.hpp"

namespace gksl {

double gaussian(Rng& rng) {
  // Box-Muller on the raw engine output keeps streams identical across
  // standard library implementations (std::normal_distribution is not).
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) {
    const double re = gaussian(rng);
    const double im = gaussian(rng);
    z = Complex(re, im);
  }
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  return hermitian_part(gaussian_matrix(rng, n, n));
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  ComplexMatrix q = gaussian_matrix(rng, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    // Two passes of modified Gram-Schmidt against earlier columns.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj{};
        for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, k)) * q(r, j);
        for (std::size_t r = 0; r < n; ++r) q(r, j) -= proj * q(r, k);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(q(r, j));
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Error(ErrorCode::InternalConsistency, "random_unitary: degenerate draw");
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
  }
  return q;
}

ComplexMatrix random_density(Rng& rng, std::size_t n, std::size_t rank) {
  if (rank < 1 || rank > n) throw Error(ErrorCode::InvalidDimension, "random_density: rank out of range");
  const ComplexMatrix x = gaussian_matrix(rng, n, rank);
  ComplexMatrix rho = x * x.adjoint();
  rho = hermitian_part(rho);
  return rho * Complex(1.0 / rho.trace().real());
}

}  // namespace gksl
