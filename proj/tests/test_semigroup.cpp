#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gksl/error.hpp"
#include "gksl/generator.hpp"
#include "gksl/random.hpp"
#include "gksl/semigroup.hpp"
#include "test_support.hpp"

using namespace gksl;
using fixtures::thrown_code;

namespace {

ComplexMatrix plus_state() { return (fixtures::id2() + fixtures::sigma_x()) * Complex(0.5); }

std::vector<double> geometric_grid() {
  std::vector<double> ts;
  for (int k = 0; k <= 8; ++k) ts.push_back(1e-3 * std::pow(10.0, k / 2.0));
  return ts;
}

std::vector<double> rates_of(const std::vector<Jump>& jumps) {
  std::vector<double> out;
  for (const auto& j : jumps) out.push_back(j.rate);
  return out;
}

double power_error(const SuperOperator& op, double t, std::size_t steps) {
  return distance(resolvent_power_approx(op, t, steps).mat(), expm(op.mat() * Complex(t)));
}

}  // namespace

TEST_CASE("propagate: worked examples") {
  Rng rng = make_rng(61);
  const SuperOperator op = sample_generator(3, 1, Verdict::QdsGen);
  const ComplexMatrix rho = random_density(rng, 3, 2);
  const double t0[] = {0.0};
  CHECK(distance(propagate(op, rho, t0).states[0], rho) == 0.0);

  const double ts[] = {0.0, 0.5, 1.0};
  const Trajectory traj = propagate(fixtures::dephasing(), plus_state(), ts);
  for (std::size_t i = 0; i < 3; ++i) {
    const ComplexMatrix expected =
        (fixtures::id2() + fixtures::sigma_x() * Complex(std::exp(-2.0 * ts[i]))) * Complex(0.5);
    CHECK(distance(traj.states[i], expected) <= 1e-12);
  }
  CHECK(std::abs(traj.states[2](0, 1) - Complex(std::exp(-2.0) / 2.0)) <= 1e-10);

  const Trajectory still = propagate(fixtures::dephasing(), fixtures::unit(2, 0, 0), ts);
  for (const auto& s : still.states) CHECK(distance(s, fixtures::unit(2, 0, 0)) <= 1e-14);
}

TEST_CASE("propagate: errors") {
  const double unsorted[] = {1.0, 0.5};
  const double negative[] = {-1.0};
  const double ok[] = {1.0};
  CHECK(thrown_code([&] { propagate(fixtures::dephasing(), plus_state(), unsorted); }) == ErrorCode::UnsortedTimes);
  CHECK(thrown_code([&] { propagate(fixtures::dephasing(), plus_state(), negative); }) == ErrorCode::UnsortedTimes);
  CHECK(thrown_code([&] { propagate(fixtures::dephasing(), ComplexMatrix::identity(3), ok); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("trajectories of QDS generators stay density matrices") {
  Rng rng = make_rng(62);
  const double ts[] = {0.0, 0.1, 1.0, 5.0};
  for (std::size_t n : {2u, 3u, 4u}) {
    const SuperOperator op = sample_generator(n, 17, Verdict::QdsGen);
    const Trajectory traj = propagate(op, random_density(rng, n, 1), ts);
    for (const auto& s : traj.states) {
      CHECK(is_hermitian(s, 1e-9));
      CHECK(std::abs(s.trace() - Complex(1.0)) <= 1e-9);
      CHECK(is_psd(hermitian_part(s), 1e-9));
    }
  }
}

TEST_CASE("choi: worked examples") {
  for (std::size_t n : {2u, 3u}) {
    const ChoiMatrix c = choi_of_exp(SuperOperator::zero(n), 0.7);
    ComplexMatrix expected(n * n, n * n);
    for (const auto& e : matrix_units(n)) expected += kron(e, e);
    CHECK(distance(c.mat, expected) <= 1e-14);
    // Rank one with eigenvalue n along the maximally entangled vector.
    const auto eig = hermitian_eig(c.mat);
    CHECK(eig.eigenvalues.back() == doctest::Approx(static_cast<double>(n)));
    CHECK(std::abs(eig.eigenvalues[eig.eigenvalues.size() - 2]) <= 1e-12);
    ComplexVector omega(n * n);
    for (std::size_t i = 0; i < n; ++i) omega[i * n + i] = 1.0;
    const ComplexVector image = c.mat * std::span<const Complex>(omega);
    for (std::size_t k = 0; k < omega.size(); ++k) CHECK(std::abs(image[k] - omega[k] * double(n)) <= 1e-12);
  }

  CHECK(is_cp_at(fixtures::dephasing(), 1.0, 1e-9));

  // Rate -1 along sz/sqrt2 makes coherences grow as e^t; the Choi block on
  // span{|11>, |22>} is [[1, e^t], [e^t, 1]].
  const SuperOperator negative = fixtures::dephasing_with_rate(-1.0);
  CHECK_FALSE(is_cp_at(negative, 0.1, 1e-9));
  CHECK(choi_min_eig(negative, 0.1) == doctest::Approx(1.0 - std::exp(0.1)).epsilon(1e-12));
}

TEST_CASE("verify_trace_preservation: worked examples") {
  Rng rng = make_rng(63);
  std::vector<ComplexMatrix> rhos;
  for (int i = 0; i < 5; ++i) rhos.push_back(random_density(rng, 2, 2));
  const double ts[] = {0.1, 1.0, 10.0};
  CHECK(verify_trace_preservation(sample_generator(2, 4, Verdict::QdsGen), rhos, ts, 1e-9));
  CHECK(verify_trace_preservation(SuperOperator::zero(2), rhos, ts, 1e-9));

  const ComplexMatrix half_id[] = {fixtures::id2() * Complex(0.5)};
  const double one[] = {1.0};
  CHECK_FALSE(verify_trace_preservation(SuperOperator::identity(2), half_id, one, 1e-9));
  CHECK(worst_trace_drift(SuperOperator::identity(2), half_id, one) == doctest::Approx(std::exp(1.0) - 1.0));
}

TEST_CASE("dissipativity_check: worked examples") {
  const ComplexMatrix e12 = fixtures::unit(2, 0, 1);
  const DissipativityResult deph = dissipativity_check(fixtures::dephasing(), e12, 1e-9);
  CHECK(deph.passed);
  CHECK(distance(deph.witness, fixtures::unit(2, 1, 1) * Complex(4.0)) <= 1e-14);

  Rng rng = make_rng(64);
  const SuperOperator any = fixtures::random_superop(rng, 3);
  CHECK(dissipativity_check(any, ComplexMatrix::identity(3), 1e-9).witness.frobenius_norm() <= 1e-12);

  // Linear in L: rate -1 is -1/2 of the dephasing generator above.
  const DissipativityResult neg = dissipativity_check(fixtures::dephasing_with_rate(-1.0), e12, 1e-9);
  CHECK_FALSE(neg.passed);
  CHECK(distance(neg.witness, fixtures::unit(2, 1, 1) * Complex(-2.0)) <= 1e-14);

  CHECK(thrown_code([&] { dissipativity_check(fixtures::dephasing(), ComplexMatrix::identity(3), 1e-9); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("QDS generators satisfy the certificates") {
  Rng rng = make_rng(65);
  for (std::size_t n : {2u, 3u})
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SuperOperator op = sample_generator(n, 500 + seed, Verdict::QdsGen);
      for (double t : {0.1, 1.0, 10.0}) CHECK(is_cp_at(op, t, 1e-8));
      for (int i = 0; i < 20; ++i) CHECK(dissipativity_check(op, gaussian_matrix(rng, n, n), 1e-8).passed);
      const SuperOperator amp = ampliate(op, 2);
      for (int i = 0; i < 10; ++i) CHECK(dissipativity_check(amp, gaussian_matrix(rng, 2 * n, 2 * n), 1e-8).passed);
      CHECK(resolvent_positivity_check(op, 2.0 * op.mat().frobenius_norm(), 100, seed, 1e-9));
      CHECK_FALSE(find_dissipativity_witness(op, 10, seed, 1e-8).has_value());
    }
}

TEST_CASE("negative rates are caught by every certificate") {
  for (std::size_t n : {2u, 3u})
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SuperOperator op = sample_generator(n, 700 + seed, Verdict::StarTraceSemigroupGen);
      const auto w = find_dissipativity_witness(op, 20, seed, 1e-8);
      REQUIRE(w.has_value());
      CHECK(w->min_eig < 0.0);
      const SuperOperator target = w->ancilla == 1 ? op : ampliate(op, w->ancilla);
      CHECK_FALSE(dissipativity_check(target, w->x, 1e-8).passed);

      double lowest = INFINITY;
      for (double t : geometric_grid()) lowest = std::min(lowest, choi_min_eig(op, t));
      CHECK(lowest < -1e-6);
    }
}

TEST_CASE("resolvent: worked examples") {
  CHECK(distance(resolvent(SuperOperator::zero(2), 3.0), SuperOperator::identity(2)) == 0.0);
  CHECK(resolvent_positivity_check(SuperOperator::zero(2), 3.0, 10, 0, 1e-9));
  CHECK(resolvent_positivity_check(fixtures::dephasing(), 10.0, 100, 1, 1e-9));
  CHECK_FALSE(resolvent_positivity_check(fixtures::dephasing_with_rate(-1.0), 10.0, 100, 1, 1e-9));

  const SuperOperator res = resolvent(fixtures::dephasing(), 10.0);
  const ComplexMatrix shifted = ComplexMatrix::identity(4) - fixtures::dephasing().mat() * Complex(0.1);
  CHECK(distance(res.mat() * shifted, ComplexMatrix::identity(4)) <= 1e-14);

  CHECK(thrown_code([] { resolvent(fixtures::dephasing(), 1.0); }) == ErrorCode::LambdaTooSmall);
  CHECK(thrown_code([] { resolvent(fixtures::dephasing(), -5.0); }) == ErrorCode::LambdaTooSmall);
}

TEST_CASE("resolvent_power_approx: worked examples") {
  for (std::size_t steps : {1u, 7u, 64u})
    CHECK(resolvent_power_approx(SuperOperator::zero(2), 1.0, steps) == SuperOperator::identity(2));

  const SuperOperator deph = fixtures::dephasing();
  for (std::size_t steps : {64u, 128u, 256u}) {
    const double ratio = power_error(deph, 1.0, steps) / power_error(deph, 1.0, 2 * steps);
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.3);
  }
  CHECK(power_error(deph, 1.0, 4096) < 1e-3);

  CHECK(thrown_code([&] { resolvent_power_approx(deph, 1.0, 1); }) == ErrorCode::LambdaTooSmall);
  CHECK(thrown_code([&] { resolvent_power_approx(deph, 1.0, 0); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("projection_rate_check: worked examples") {
  const HSBasis pauli = gell_mann_basis(2);
  const auto deph = projection_rate_check(fixtures::dephasing(), pauli);
  REQUIRE(deph.size() == 3);
  CHECK(deph[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(deph[1]) <= 1e-12);
  CHECK(std::abs(deph[2]) <= 1e-12);

  for (double r : projection_rate_check(SuperOperator::zero(2), pauli)) CHECK(std::abs(r) <= 1e-14);

  const auto damping = projection_rate_check(fixtures::amplitude_damping(1.0), pauli);
  REQUIRE(damping.size() == 3);
  CHECK(damping[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(damping[1]) <= 1e-12);
  CHECK(std::abs(damping[2]) <= 1e-12);

  CHECK(thrown_code([&] { projection_rate_check(SuperOperator::identity(2), pauli); }) ==
        ErrorCode::NotTraceAnnihilating);
  Rng rng = make_rng(66);
  CHECK(thrown_code([&] { projection_rate_check(fixtures::random_superop(rng, 2), pauli); }) ==
        ErrorCode::NotHermiticityPreserving);
}

TEST_CASE("projection oracle agrees with the decomposition, including negative rates") {
  for (std::size_t n : {2u, 3u})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Verdict v = seed % 2 == 0 ? Verdict::QdsGen : Verdict::StarTraceSemigroupGen;
      const SuperOperator op = sample_generator(n, 800 + seed, v);
      const ProjectionRates pr = projection_rates(op, gell_mann_basis(n));
      CHECK(pr.family.self_adjoint <= 1e-9);
      CHECK(pr.family.orthogonality <= 1e-9);
      CHECK(pr.family.resolution <= 1e-9);
      const auto decomposed = rates_of(pad_zero_jumps(n, decompose_gksl(op).jumps));
      CHECK(fixtures::max_abs_diff(pr.rates, decomposed) <= 1e-8);
    }
}

TEST_CASE("projection family for an arbitrary orthonormal basis") {
  Rng rng = make_rng(67);
  for (std::size_t n : {2u, 3u}) {
    const HSBasis basis = fixtures::random_identity_last_basis(rng, n);
    const auto family = projection_family(basis.elements);
    CHECK(family.size() == n * n);
    CHECK(projection_family_defects(family).worst() <= 1e-9);
  }
}

TEST_CASE("Choi positivity matches the sign of the rates") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed % 2;
    const Verdict v = seed % 4 < 2 ? Verdict::QdsGen : Verdict::StarTraceSemigroupGen;
    const SuperOperator op = sample_generator(n, 900 + seed, v);
    bool cp_everywhere = true;
    for (double t : geometric_grid()) cp_everywhere = cp_everywhere && is_cp_at(op, t, 1e-8);
    CHECK(classify(op).rates_nonnegative == cp_everywhere);
  }
}

TEST_CASE("QDS generators map orthogonal projections to positive overlaps") {
  Rng rng = make_rng(68);
  for (std::size_t n : {2u, 3u, 4u}) {
    const SuperOperator op = sample_generator(n, 40 + n, Verdict::QdsGen);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix u = random_unitary(rng, n);
      const std::size_t split = 1 + static_cast<std::size_t>(trial) % (n - 1);
      ComplexMatrix p_r(n, n);
      ComplexMatrix p_s(n, n);
      for (std::size_t col = 0; col < n; ++col) {
        ComplexMatrix v(n, 1);
        for (std::size_t row = 0; row < n; ++row) v(row, 0) = u(row, col);
        (col < split ? p_r : p_s) += v * v.adjoint();
      }
      CHECK((p_r * apply(op, p_s)).trace().real() >= -1e-9);
    }
  }
}
