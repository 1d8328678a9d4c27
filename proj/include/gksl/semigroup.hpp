// semigroup.hpp — the semigroup T_t = exp(tL) and the positivity certificates
// around it: Choi matrices, trace preservation, the dissipativity inequality,
// resolvent positivity, the resolvent-power limit, and the projection-family
// rate oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gksl/hs_basis.hpp"
#include "gksl/linalg.hpp"
#include "gksl/superop.hpp"

namespace gksl {

struct ChoiMatrix {
  std::size_t n = 0;
  ComplexMatrix mat;  // sum_ij T(E_ij) (x) E_ij, n^2 x n^2
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
};

// states[i] = unvec(expm(times[i] L) vec(rho0)). Times ascending and >= 0.
Trajectory propagate(const SuperOperator& op, const ComplexMatrix& rho0, std::span<const double> times);

ChoiMatrix choi(const SuperOperator& map);
ChoiMatrix choi_of_exp(const SuperOperator& generator, double t);

// Smallest eigenvalue of the Hermitian part of the Choi matrix of exp(tL).
double choi_min_eig(const SuperOperator& generator, double t);

// False if the Choi matrix is not Hermitian (within 1e-9) or has an
// eigenvalue below -tol * max(1, ||Choi||).
bool is_cp_at(const SuperOperator& generator, double t, double tol);

bool verify_trace_preservation(const SuperOperator& generator, std::span<const ComplexMatrix> rho_samples,
                               std::span<const double> t_samples, double tol);

// max |tr T_t(rho) - tr rho| over the sample grid.
double worst_trace_drift(const SuperOperator& generator, std::span<const ComplexMatrix> rho_samples,
                         std::span<const double> t_samples);

struct DissipativityResult {
  bool passed = false;
  ComplexMatrix witness;  // D(x) = L(x*x) - x*L(x) - L(x*)x + x*L(1)x
};

DissipativityResult dissipativity_check(const SuperOperator& op, const ComplexMatrix& x, double tol);

struct DissipativityWitness {
  std::size_t ancilla = 1;  // k of the ampliation the witness lives in
  ComplexMatrix x;
  double min_eig = 0.0;  // of D(x)
};

// Searches matrix units and seeded random x at k = 1, then the maximally
// entangled projector and random x at k = n. Returns the first x whose D(x)
// has an eigenvalue below -tol * max(1, ||D||).
std::optional<DissipativityWitness> find_dissipativity_witness(const SuperOperator& op, std::size_t trials,
                                                               std::uint64_t seed, double tol);

// (1 - L / lambda)^{-1}. Requires lambda > ||L||_F.
SuperOperator resolvent(const SuperOperator& op, double lambda);

// Worst relative eigenvalue min_eig(out) / max(1, ||out||) over the resolvent
// images of `trials` seeded random density matrices of random rank. Returns
// -infinity if some image is not Hermitian.
double resolvent_positivity_margin(const SuperOperator& op, double lambda, std::size_t trials, std::uint64_t seed);

// resolvent_positivity_margin(...) >= -tol.
bool resolvent_positivity_check(const SuperOperator& op, double lambda, std::size_t trials, std::uint64_t seed,
                                double tol);

// ((1 - (t/n) L)^{-1})^n, converging to exp(tL) at rate O(1/n).
SuperOperator resolvent_power_approx(const SuperOperator& op, double t, std::size_t n_steps);

// R_q = sum_ij G_q E_ij G_q* (x) E_ij for each member of an orthonormal basis.
std::vector<ComplexMatrix> projection_family(std::span<const ComplexMatrix> orthonormal_basis);

struct ProjectionFamilyDefects {
  double self_adjoint = 0.0;   // max ||R_q - R_q*||
  double orthogonality = 0.0;  // max ||R_q R_s - delta_qs R_q||
  double resolution = 0.0;     // ||sum R_q - 1||
  double worst() const;
};

ProjectionFamilyDefects projection_family_defects(std::span<const ComplexMatrix> family);

struct ProjectionRates {
  std::vector<double> rates;             // one per traceless jump, jump order
  std::vector<double> decomposition;     // rates of the padded jump set, same order
  ProjectionFamilyDefects family;
};

// N tr(R_q L^(N)(R_{N^2})) for q < N^2, with G_q taken from decompose_gksl,
// padded with zero-rate jumps, and G_{N^2} = I / sqrt(N). The values are
// computed through the ampliated map only.
ProjectionRates projection_rates(const SuperOperator& op, const HSBasis& basis);

std::vector<double> projection_rate_check(const SuperOperator& op, const HSBasis& basis);

}  // namespace gksl
