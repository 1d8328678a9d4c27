#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gksl/error.hpp"
#include "gksl/random.hpp"
#include "gksl/superop.hpp"
#include "test_support.hpp"

using namespace gksl;
using fixtures::kI;
using fixtures::thrown_code;

namespace {

// The four matrix units give a complete check of a map on 2x2 matrices.
double max_unit_deviation(const SuperOperator& op, const std::vector<SandwichTerm>& terms) {
  double worst = 0.0;
  for (const auto& e : matrix_units(op.n()))
    worst = std::max(worst, distance(apply(op, e), fixtures::sandwich_direct(terms, e)));
  return worst;
}

double direct_hermiticity_defect(const SuperOperator& op, Rng& rng, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const ComplexMatrix a = gaussian_matrix(rng, op.n(), op.n());
    const double scale = std::max(1.0, op.mat().frobenius_norm() * a.frobenius_norm());
    worst = std::max(worst, distance(apply(op, a.adjoint()), apply(op, a).adjoint()) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("SuperOperator shape invariant") {
  CHECK(thrown_code([] { SuperOperator(2, ComplexMatrix(3, 3)); }) == ErrorCode::DimensionMismatch);
  CHECK(SuperOperator::identity(3).mat() == ComplexMatrix::identity(9));
}

TEST_CASE("apply: worked examples") {
  Rng rng = make_rng(31);
  const ComplexMatrix a = gaussian_matrix(rng, 3, 3);
  CHECK(apply(SuperOperator::identity(3), a) == a);
  CHECK(apply(SuperOperator::zero(3), a).frobenius_norm() == 0.0);

  const SuperOperator conj_z(2, kron(fixtures::sigma_z().transpose(), fixtures::sigma_z()));
  CHECK(apply(conj_z, fixtures::unit(2, 0, 1)) == -fixtures::unit(2, 0, 1));
  CHECK(thrown_code([&] { apply(conj_z, a); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("apply is linear") {
  Rng rng = make_rng(32);
  const SuperOperator op = fixtures::random_superop(rng, 3);
  const ComplexMatrix a = gaussian_matrix(rng, 3, 3);
  const ComplexMatrix b = gaussian_matrix(rng, 3, 3);
  const Complex s(-0.4, 2.0);
  CHECK(distance(apply(op, a + s * b), apply(op, a) + s * apply(op, b)) < 1e-12);
}

TEST_CASE("from_sandwich_terms: worked examples") {
  const ComplexMatrix id = fixtures::id2();
  CHECK(from_sandwich_terms(2, {{id, id}}) == SuperOperator::identity(2));

  const std::vector<SandwichTerm> dephasing_terms{{fixtures::sigma_z(), fixtures::sigma_z()}, {-id, id}};
  const SuperOperator deph = from_sandwich_terms(2, dephasing_terms);
  CHECK(max_unit_deviation(deph, dephasing_terms) < 1e-15);
  // sz E12 sz - E12 = -2 E12; diagonal units are annihilated.
  CHECK(distance(apply(deph, fixtures::unit(2, 0, 1)), fixtures::unit(2, 0, 1) * Complex(-2.0)) < 1e-15);
  CHECK(apply(deph, fixtures::unit(2, 1, 1)).frobenius_norm() < 1e-15);

  Rng rng = make_rng(33);
  const ComplexMatrix k = gaussian_matrix(rng, 2, 2);
  const std::vector<SandwichTerm> k_terms{{k, id}, {id, k.adjoint()}};
  const SuperOperator k_map = from_sandwich_terms(2, k_terms);
  const ComplexMatrix a = gaussian_matrix(rng, 2, 2);
  CHECK(distance(apply(k_map, a), k * a + a * k.adjoint()) < 1e-12);

  CHECK(thrown_code([&] { from_sandwich_terms(2, {{ComplexMatrix::identity(3), id}}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("from_sandwich_terms matches direct evaluation on random terms") {
  Rng rng = make_rng(34);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<SandwichTerm> terms;
    for (int t = 0; t < 3; ++t) terms.push_back({gaussian_matrix(rng, n, n), gaussian_matrix(rng, n, n)});
    const SuperOperator op = from_sandwich_terms(n, terms);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix a = gaussian_matrix(rng, n, n);
      CHECK(distance(apply(op, a), fixtures::sandwich_direct(terms, a)) <= 1e-12);
    }
  }
}

TEST_CASE("to_coeff_matrix: worked examples") {
  const HSBasis pauli = gell_mann_basis(2);
  CHECK(to_coeff_matrix(SuperOperator::zero(2), pauli).c.frobenius_norm() == 0.0);

  ComplexMatrix expected_id(4, 4);
  expected_id(3, 3) = 2.0;
  CHECK(distance(to_coeff_matrix(SuperOperator::identity(2), pauli).c, expected_id) < 1e-14);

  const double diag[] = {0.0, 0.0, 2.0, -2.0};
  CHECK(distance(to_coeff_matrix(fixtures::dephasing(), pauli).c, ComplexMatrix::diagonal(std::span<const double>(diag))) <
        1e-14);

  CHECK(thrown_code([&] { to_coeff_matrix(SuperOperator::zero(3), pauli); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("from_coeff_matrix: worked examples") {
  const HSBasis pauli = gell_mann_basis(2);
  CHECK(from_coeff_matrix({2, ComplexMatrix(4, 4)}, pauli) == SuperOperator::zero(2));

  const double diag[] = {0.0, 0.0, 2.0, -2.0};
  const SuperOperator deph = from_coeff_matrix({2, ComplexMatrix::diagonal(std::span<const double>(diag))}, pauli);
  CHECK(distance(deph, fixtures::dephasing()) < 1e-14);

  for (std::size_t n = 1; n <= 4; ++n) {
    ComplexMatrix c(n * n, n * n);
    c(n * n - 1, n * n - 1) = static_cast<double>(n);
    CHECK(distance(from_coeff_matrix({n, c}, gell_mann_basis(n)), SuperOperator::identity(n)) < 1e-13);
  }
  CHECK(thrown_code([&] { from_coeff_matrix({2, ComplexMatrix(9, 9)}, pauli); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("Gamma family is orthonormal for n = 2, 3") {
  for (std::size_t n : {2u, 3u}) {
    const HSBasis basis = gell_mann_basis(n);
    const std::size_t dim = n * n;
    // Gamma_ab(F_k) for every (a, b) and k, stored once.
    std::vector<std::vector<ComplexMatrix>> images(dim * dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t k = 0; k < dim; ++k) images[a * dim + b].push_back(basis[a] * basis[k] * basis[b].adjoint());
    double worst = 0.0;
    for (std::size_t p = 0; p < dim * dim; ++p)
      for (std::size_t q = 0; q < dim * dim; ++q) {
        Complex inner = 0.0;
        for (std::size_t k = 0; k < dim; ++k) inner += (images[p][k].adjoint() * images[q][k]).trace();
        worst = std::max(worst, std::abs(inner - Complex(p == q ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("coefficient round trip on random superoperators") {
  Rng rng = make_rng(35);
  for (std::size_t n : {2u, 3u, 4u}) {
    const HSBasis basis = gell_mann_basis(n);
    for (int trial = 0; trial < 100; ++trial) {
      const SuperOperator op = fixtures::random_superop(rng, n);
      CHECK(distance(from_coeff_matrix(to_coeff_matrix(op, basis), basis), op) <= 1e-10);
    }
  }
}

TEST_CASE("coefficient round trip in a rotated basis") {
  Rng rng = make_rng(36);
  for (std::size_t n : {2u, 3u}) {
    const HSBasis rotated = fixtures::random_identity_last_basis(rng, n);
    const SuperOperator op = fixtures::random_superop(rng, n);
    CHECK(distance(from_coeff_matrix(to_coeff_matrix(op, rotated), rotated), op) <= 1e-10);
  }
}

TEST_CASE("is_hermiticity_preserving: worked examples") {
  CHECK(is_hermiticity_preserving(fixtures::dephasing()));
  CHECK(is_hermiticity_preserving(SuperOperator::zero(2)));
  const ComplexMatrix e12 = fixtures::unit(2, 0, 1);
  const SuperOperator one_sided = from_sandwich_terms(2, {{e12, e12}});
  CHECK_FALSE(is_hermiticity_preserving(one_sided));
  CHECK(hermiticity_defect(one_sided) > 0.1);
}

TEST_CASE("is_hermiticity_preserving agrees with the direct adjoint test") {
  Rng rng = make_rng(37);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const SuperOperator hp = fixtures::random_hermiticity_preserving(rng, n);
      CHECK(is_hermiticity_preserving(hp));
      CHECK(direct_hermiticity_defect(hp, rng, 50) <= kDefaultPredicateTol);

      const SuperOperator general = fixtures::random_superop(rng, n);
      CHECK_FALSE(is_hermiticity_preserving(general));
      CHECK(direct_hermiticity_defect(general, rng, 50) > kDefaultPredicateTol);
    }
  }
}

TEST_CASE("is_trace_annihilating: worked examples") {
  CHECK(is_trace_annihilating(fixtures::dephasing()));
  CHECK_FALSE(is_trace_annihilating(SuperOperator::identity(2)));
  CHECK(is_trace_annihilating(SuperOperator::zero(2)));
  CHECK(is_trace_annihilating(fixtures::amplitude_damping(0.7)));
}

TEST_CASE("ampliate: worked examples") {
  Rng rng = make_rng(38);
  const SuperOperator op = fixtures::random_superop(rng, 2);
  CHECK(distance(ampliate(op, 1), op) == 0.0);
  CHECK(ampliate(SuperOperator::identity(2), 3) == SuperOperator::identity(6));

  const ComplexMatrix input = kron(fixtures::unit(2, 0, 1), fixtures::unit(2, 0, 0));
  const ComplexMatrix expected = kron(fixtures::unit(2, 0, 1) * Complex(-2.0), fixtures::unit(2, 0, 0));
  CHECK(distance(apply(ampliate(fixtures::dephasing(), 2), input), expected) < 1e-14);
  CHECK(thrown_code([&] { ampliate(op, 0); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("ampliate acts factorwise on A (x) E_ij") {
  Rng rng = make_rng(39);
  for (std::size_t k : {2u, 3u}) {
    const SuperOperator op = fixtures::random_superop(rng, 2);
    const SuperOperator amp = ampliate(op, k);
    const ComplexMatrix a = gaussian_matrix(rng, 2, 2);
    for (const auto& e : matrix_units(k)) CHECK(distance(apply(amp, kron(a, e)), kron(apply(op, a), e)) <= 1e-12);
  }
}

TEST_CASE("ampliate preserves the structural properties") {
  Rng rng = make_rng(40);
  for (std::size_t n : {2u, 3u}) {
    const SuperOperator qds = sample_generator(n, 7 + n, Verdict::QdsGen);
    const SuperOperator hp = fixtures::random_hermiticity_preserving(rng, n);
    for (std::size_t k : {2u, 3u}) {
      CHECK(is_trace_annihilating(ampliate(qds, k)));
      CHECK(is_hermiticity_preserving(ampliate(qds, k)));
      CHECK(is_hermiticity_preserving(ampliate(hp, k)));
    }
  }
}
