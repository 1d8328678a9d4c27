#include "gksl/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gksl/error.hpp"
#include "gksl/generator.hpp"
#include "gksl/random.hpp"

namespace gksl {

namespace {

constexpr double kChoiHermitianTol = 1e-9;
constexpr double kProjectionTol = 1e-9;

ComplexMatrix exp_generator(const SuperOperator& op, double t) { return expm(op.mat() * Complex(t)); }

SuperOperator as_map(std::size_t n, ComplexMatrix mat) { return {n, std::move(mat)}; }

bool psd_hermitian(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, kChoiHermitianTol)) return false;
  return is_psd(hermitian_part(m), tol);
}

}  // namespace

Trajectory propagate(const SuperOperator& op, const ComplexMatrix& rho0, std::span<const double> times) {
  if (rho0.rows() != op.n() || rho0.cols() != op.n()) {
    throw Error(ErrorCode::DimensionMismatch, "propagate: initial state is " + std::to_string(rho0.rows()) + "x" +
                                                  std::to_string(rho0.cols()) + ", generator acts on n = " +
                                                  std::to_string(op.n()));
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw Error(ErrorCode::UnsortedTimes, "propagate: times must be finite and nonnegative");
    }
    if (i > 0 && times[i] < times[i - 1]) throw Error(ErrorCode::UnsortedTimes, "propagate: times must ascend");
  }
  Trajectory out;
  out.times.assign(times.begin(), times.end());
  const ComplexVector v0 = vec(rho0);
  for (double t : times) {
    const ComplexVector vt = exp_generator(op, t) * std::span<const Complex>(v0);
    out.states.push_back(unvec(vt, op.n()));
  }
  return out;
}

ChoiMatrix choi(const SuperOperator& map) {
  const std::size_t n = map.n();
  ChoiMatrix out{n, ComplexMatrix(n * n, n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ComplexMatrix e = ComplexMatrix::unit(n, i, j);
      out.mat += kron(apply(map, e), e);
    }
  return out;
}

ChoiMatrix choi_of_exp(const SuperOperator& generator, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::UnsortedTimes, "choi_of_exp: t must be nonnegative");
  return choi(as_map(generator.n(), exp_generator(generator, t)));
}

double choi_min_eig(const SuperOperator& generator, double t) {
  return min_eig_hermitian(hermitian_part(choi_of_exp(generator, t).mat));
}

bool is_cp_at(const SuperOperator& generator, double t, double tol) {
  return psd_hermitian(choi_of_exp(generator, t).mat, tol);
}

double worst_trace_drift(const SuperOperator& generator, std::span<const ComplexMatrix> rho_samples,
                         std::span<const double> t_samples) {
  double worst = 0.0;
  for (double t : t_samples) {
    const SuperOperator map = as_map(generator.n(), exp_generator(generator, t));
    for (const auto& rho : rho_samples) worst = std::max(worst, std::abs(apply(map, rho).trace() - rho.trace()));
  }
  return worst;
}

bool verify_trace_preservation(const SuperOperator& generator, std::span<const ComplexMatrix> rho_samples,
                               std::span<const double> t_samples, double tol) {
  return worst_trace_drift(generator, rho_samples, t_samples) <= tol;
}

DissipativityResult dissipativity_check(const SuperOperator& op, const ComplexMatrix& x, double tol) {
  if (x.rows() != op.n() || x.cols() != op.n()) {
    throw Error(ErrorCode::DimensionMismatch, "dissipativity_check: x must be " + std::to_string(op.n()) + "x" +
                                                  std::to_string(op.n()));
  }
  const ComplexMatrix xd = x.adjoint();
  const ComplexMatrix l_one = apply(op, ComplexMatrix::identity(op.n()));
  DissipativityResult out;
  out.witness = apply(op, xd * x) - xd * apply(op, x) - apply(op, xd) * x + xd * l_one * x;
  out.passed = psd_hermitian(out.witness, tol);
  return out;
}

std::optional<DissipativityWitness> find_dissipativity_witness(const SuperOperator& op, std::size_t trials,
                                                               std::uint64_t seed, double tol) {
  Rng rng = make_rng(seed);
  auto try_candidate = [&](const SuperOperator& map, std::size_t ancilla,
                           const ComplexMatrix& x) -> std::optional<DissipativityWitness> {
    const ComplexMatrix d = dissipativity_check(map, x, tol).witness;
    const double lowest = min_eig_hermitian(hermitian_part(d));
    if (lowest < -tol * std::max(1.0, d.frobenius_norm())) return DissipativityWitness{ancilla, x, lowest};
    return std::nullopt;
  };

  const std::size_t n = op.n();
  for (const auto& e : matrix_units(n))
    if (auto w = try_candidate(op, 1, e)) return w;
  for (std::size_t i = 0; i < trials; ++i)
    if (auto w = try_candidate(op, 1, gaussian_matrix(rng, n, n))) return w;

  if (n > 1) {
    const SuperOperator amp = ampliate(op, n);
    ComplexMatrix omega(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) omega(i * n + i, j * n + j) = 1.0 / static_cast<double>(n);
    if (auto w = try_candidate(amp, n, omega)) return w;
    for (std::size_t i = 0; i < trials; ++i)
      if (auto w = try_candidate(amp, n, gaussian_matrix(rng, n * n, n * n))) return w;
  }
  return std::nullopt;
}

SuperOperator resolvent(const SuperOperator& op, double lambda) {
  const double bound = op.mat().frobenius_norm();
  if (!(lambda > bound)) {
    throw Error(ErrorCode::LambdaTooSmall,
                "resolvent: lambda = " + std::to_string(lambda) + " must exceed ||L|| = " + std::to_string(bound));
  }
  const std::size_t dim = op.n() * op.n();
  const ComplexMatrix shifted = ComplexMatrix::identity(dim) - op.mat() * Complex(1.0 / lambda);
  try {
    return as_map(op.n(), inverse(shifted));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularResolvent, "resolvent: 1 - L / lambda is singular");
  }
}

double resolvent_positivity_margin(const SuperOperator& op, double lambda, std::size_t trials, std::uint64_t seed) {
  const SuperOperator res = resolvent(op, lambda);
  Rng rng = make_rng(seed);
  const std::size_t n = op.n();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t rank = 1 + static_cast<std::size_t>(rng() % n);
    const ComplexMatrix image = apply(res, random_density(rng, n, rank));
    if (!is_hermitian(image, kChoiHermitianTol)) return -std::numeric_limits<double>::infinity();
    const ComplexMatrix h = hermitian_part(image);
    worst = std::min(worst, min_eig_hermitian(h) / std::max(1.0, h.frobenius_norm()));
  }
  return worst;
}

bool resolvent_positivity_check(const SuperOperator& op, double lambda, std::size_t trials, std::uint64_t seed,
                                double tol) {
  return resolvent_positivity_margin(op, lambda, trials, seed) >= -tol;
}

SuperOperator resolvent_power_approx(const SuperOperator& op, double t, std::size_t n_steps) {
  if (n_steps < 1) throw Error(ErrorCode::InvalidDimension, "resolvent_power_approx: n_steps must be >= 1");
  const double step = t / static_cast<double>(n_steps);
  const double norm = op.mat().frobenius_norm();
  if (!(step * norm < 1.0)) {
    throw Error(ErrorCode::LambdaTooSmall, "resolvent_power_approx: (t / n) ||L|| = " + std::to_string(step * norm) +
                                               " must be below 1");
  }
  const std::size_t dim = op.n() * op.n();
  const ComplexMatrix shifted = ComplexMatrix::identity(dim) - op.mat() * Complex(step);
  ComplexMatrix single;
  try {
    single = inverse(shifted);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularResolvent, "resolvent_power_approx: 1 - (t / n) L is singular");
  }
  return as_map(op.n(), matrix_power(single, n_steps));
}

std::vector<ComplexMatrix> projection_family(std::span<const ComplexMatrix> orthonormal_basis) {
  std::vector<ComplexMatrix> family;
  if (orthonormal_basis.empty()) return family;
  const std::size_t n = orthonormal_basis.front().rows();
  const auto units = matrix_units(n);
  for (const auto& g : orthonormal_basis) {
    const ComplexMatrix gd = g.adjoint();
    ComplexMatrix r(n * n, n * n);
    for (const auto& e : units) r += kron(g * e * gd, e);
    family.push_back(std::move(r));
  }
  return family;
}

double ProjectionFamilyDefects::worst() const { return std::max({self_adjoint, orthogonality, resolution}); }

ProjectionFamilyDefects projection_family_defects(std::span<const ComplexMatrix> family) {
  ProjectionFamilyDefects out;
  if (family.empty()) return out;
  const std::size_t dim = family.front().rows();
  ComplexMatrix sum(dim, dim);
  for (std::size_t q = 0; q < family.size(); ++q) {
    out.self_adjoint = std::max(out.self_adjoint, distance(family[q], family[q].adjoint()));
    for (std::size_t s = 0; s < family.size(); ++s) {
      const ComplexMatrix product = family[q] * family[s];
      const double defect = q == s ? distance(product, family[q]) : product.frobenius_norm();
      out.orthogonality = std::max(out.orthogonality, defect);
    }
    sum += family[q];
  }
  out.resolution = distance(sum, ComplexMatrix::identity(dim));
  return out;
}

ProjectionRates projection_rates(const SuperOperator& op, const HSBasis& basis) {
  const std::size_t n = op.n();
  const GKSLForm form = decompose_gksl(op, basis);
  const std::vector<Jump> padded = pad_zero_jumps(n, form.jumps);

  std::vector<ComplexMatrix> frame;
  ProjectionRates out;
  for (const auto& j : padded) {
    frame.push_back(j.op);
    out.decomposition.push_back(j.rate);
  }
  frame.push_back(ComplexMatrix::identity(n) * Complex(1.0 / std::sqrt(static_cast<double>(n))));

  const std::vector<ComplexMatrix> family = projection_family(frame);
  out.family = projection_family_defects(family);
  if (out.family.worst() > kProjectionTol) {
    throw Error(ErrorCode::InternalConsistency,
                "projection family fails the projection checks (defect " + std::to_string(out.family.worst()) + ")");
  }

  const SuperOperator amp = ampliate(op, n);
  const ComplexMatrix image = apply(amp, family.back());
  for (std::size_t q = 0; q + 1 < family.size(); ++q) {
    out.rates.push_back(static_cast<double>(n) * (family[q] * image).trace().real());
  }
  return out;
}

std::vector<double> projection_rate_check(const SuperOperator& op, const HSBasis& basis) {
  return projection_rates(op, basis).rates;
}

}  // namespace gksl
