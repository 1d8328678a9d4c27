#pragma once

#include <cstdint>
#include <random>

#include "gksl/linalg.hpp"

namespace gksl {

// All randomness in the library flows through an explicitly seeded engine
// owned by the caller; there is no global state.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

double gaussian(Rng& rng);

// Entries with independent standard normal real and imaginary parts.
ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);

ComplexMatrix random_hermitian(Rng& rng, std::size_t n);

// Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

// X X* / tr(X X*) with X of shape n x rank; rank in [1, n].
ComplexMatrix random_density(Rng& rng, std::size_t n, std::size_t rank);

}  // namespace gksl
