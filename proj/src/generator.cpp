#include "gksl/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gksl/error.hpp"
#include "gksl/random.hpp"

namespace gksl {

namespace {

constexpr double kHermiticityTol = 1e-9;
constexpr double kZeroRateTol = 1e-12;
constexpr double kDegenerateRateTol = 1e-10;
constexpr double kNegativeRateTol = 1e-9;
constexpr double kBasisTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kOrthonormalTol = 1e-9;
constexpr double kTraceKTol = 1e-9;
constexpr double kCertificateTol = 1e-9;
constexpr int kMaxSampleAttempts = 64;

const Complex kI{0.0, 1.0};

double rel_scale(double norm) { return std::max(1.0, norm); }

// First entry with magnitude above the noise floor, row-major, made real positive.
ComplexMatrix fix_phase(ComplexMatrix g) {
  const double floor = 1e-12 * rel_scale(g.frobenius_norm());
  for (const auto& z : g.entries()) {
    if (std::abs(z) > floor) {
      const Complex phase = std::conj(z) / std::abs(z);
      g *= phase;
      break;
    }
  }
  return g;
}

bool lex_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].real() != eb[i].real()) return ea[i].real() < eb[i].real();
    if (ea[i].imag() != eb[i].imag()) return ea[i].imag() < eb[i].imag();
  }
  return false;
}

// Descending rates; runs of numerically equal rates ordered lexicographically
// by their (phase-fixed) jump matrix.
void canonical_order(std::vector<Jump>& jumps, double scale) {
  std::stable_sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.rate > b.rate; });
  const double tie = kDegenerateRateTol * scale;
  std::size_t start = 0;
  while (start < jumps.size()) {
    std::size_t end = start + 1;
    while (end < jumps.size() && jumps[end - 1].rate - jumps[end].rate <= tie) ++end;
    std::sort(jumps.begin() + static_cast<std::ptrdiff_t>(start), jumps.begin() + static_cast<std::ptrdiff_t>(end),
              [](const Jump& a, const Jump& b) { return lex_less(a.op, b.op); });
    start = end;
  }
}

struct Decomposition {
  KForm form;
  double coeff_norm = 0.0;
};

Decomposition k_form_from_coeffs(const CoeffMatrix& coeffs, const HSBasis& basis) {
  const ComplexMatrix& c = coeffs.c;
  const double c_norm = c.frobenius_norm();
  if (distance(c, c.adjoint()) > kHermiticityTol * rel_scale(c_norm)) {
    throw Error(ErrorCode::NotHermiticityPreserving, "coefficient matrix is not Hermitian");
  }
  const std::size_t n = basis.n;
  const std::size_t d = n * n - 1;
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  Decomposition out;
  out.coeff_norm = c_norm;
  out.form.trace_defect = c(d, d).real();
  out.form.k = ComplexMatrix::identity(n) * Complex(c(d, d).real() / (2.0 * static_cast<double>(n)));
  for (std::size_t a = 0; a < d; ++a) out.form.k += (c(a, d) / sqrt_n) * basis[a];

  if (d == 0) return out;

  ComplexMatrix block(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) block(a, b) = c(a, b);
  const auto eig = hermitian_eig(hermitian_part(block));

  for (std::size_t p = 0; p < d; ++p) {
    const double rate = eig.eigenvalues[p];
    if (std::abs(rate) < kZeroRateTol * rel_scale(c_norm)) continue;
    ComplexMatrix g(n, n);
    for (std::size_t a = 0; a < d; ++a) g += eig.eigenvectors(a, p) * basis[a];
    out.form.jumps.push_back({rate, fix_phase(std::move(g))});
  }
  canonical_order(out.form.jumps, rel_scale(c_norm));
  return out;
}

void require_identity_last(const HSBasis& basis, std::size_t n) {
  if (basis.n != n) throw Error(ErrorCode::DimensionMismatch, "basis dimension differs from the map's");
  validate_basis(basis, kBasisTol);
}

void validate_jumps(std::size_t n, const std::vector<Jump>& jumps) {
  if (jumps.size() > n * n - 1) {
    throw Error(ErrorCode::InvariantViolation, "more than n^2 - 1 jump operators");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(jumps.size());
  for (const auto& j : jumps) {
    if (j.op.rows() != n || j.op.cols() != n) throw Error(ErrorCode::InvariantViolation, "jump operator has wrong shape");
    if (!std::isfinite(j.rate)) throw Error(ErrorCode::InvariantViolation, "jump rate is not finite");
    if (std::abs(j.op.trace()) > kTraceTol) throw Error(ErrorCode::InvariantViolation, "jump operator is not traceless");
    ops.push_back(j.op);
  }
  if (orthonormality_defect(ops) > kOrthonormalTol) {
    throw Error(ErrorCode::InvariantViolation, "jump operators are not Hilbert-Schmidt orthonormal");
  }
}

// Orthonormal traceless family of the given size drawn from Gaussian matrices.
std::vector<ComplexMatrix> random_traceless_frame(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<ComplexMatrix> frame;
  frame.push_back(ComplexMatrix::identity(n) * Complex(1.0 / std::sqrt(static_cast<double>(n))));
  while (frame.size() < count + 1) {
    ComplexMatrix v = gaussian_matrix(rng, n, n);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : frame) v -= hs_inner(v, q) * q;
    const double norm = v.frobenius_norm();
    if (norm < 1e-6) continue;
    frame.push_back(v * Complex(1.0 / norm));
  }
  frame.erase(frame.begin());
  return frame;
}

ComplexMatrix random_traceless_hermitian(Rng& rng, std::size_t n) {
  ComplexMatrix h = random_hermitian(rng, n);
  return h - ComplexMatrix::identity(n) * Complex(h.trace().real() / static_cast<double>(n));
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::General: return "GENERAL";
    case Verdict::StarSemigroupGen: return "STAR_SEMIGROUP_GEN";
    case Verdict::StarTraceSemigroupGen: return "STAR_TRACE_SEMIGROUP_GEN";
    case Verdict::QdsGen: return "QDS_GEN";
  }
  return "GENERAL";
}

std::optional<Verdict> parse_verdict(std::string_view name) {
  for (Verdict v : {Verdict::General, Verdict::StarSemigroupGen, Verdict::StarTraceSemigroupGen, Verdict::QdsGen}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

Verdict verdict_for(bool hermiticity_preserving, bool trace_annihilating, bool rates_nonnegative) {
  if (!hermiticity_preserving) return Verdict::General;
  if (!trace_annihilating) return Verdict::StarSemigroupGen;
  return rates_nonnegative ? Verdict::QdsGen : Verdict::StarTraceSemigroupGen;
}

KForm decompose_k_form(const SuperOperator& op, const HSBasis& basis) {
  require_identity_last(basis, op.n());
  return k_form_from_coeffs(to_coeff_matrix(op, basis), basis).form;
}

KForm decompose_k_form(const SuperOperator& op) { return decompose_k_form(op, gell_mann_basis(op.n())); }

SuperOperator reconstruct_k(std::size_t n, const KForm& form) {
  validate(n, form);
  const ComplexMatrix id = ComplexMatrix::identity(n);
  std::vector<SandwichTerm> terms;
  terms.push_back({id, form.k.adjoint()});
  terms.push_back({form.k, id});
  for (const auto& j : form.jumps) terms.push_back({Complex(j.rate) * j.op, j.op.adjoint()});
  return from_sandwich_terms(n, terms);
}

double real_part_certificate(const KForm& form) {
  ComplexMatrix residual = hermitian_part(form.k);
  for (const auto& j : form.jumps) residual += Complex(0.5 * j.rate) * (j.op.adjoint() * j.op);
  return residual.frobenius_norm();
}

GKSLForm decompose_gksl(const SuperOperator& op, const HSBasis& basis) {
  require_identity_last(basis, op.n());
  const CoeffMatrix coeffs = to_coeff_matrix(op, basis);
  const ComplexMatrix& c = coeffs.c;
  if (distance(c, c.adjoint()) > kHermiticityTol * rel_scale(c.frobenius_norm())) {
    throw Error(ErrorCode::NotHermiticityPreserving, "decompose_gksl: map does not preserve adjoints");
  }
  if (!is_trace_annihilating(op)) {
    throw Error(ErrorCode::NotTraceAnnihilating, "decompose_gksl: tr L(A) does not vanish");
  }
  KForm k_form = k_form_from_coeffs(coeffs, basis).form;

  const double certificate = real_part_certificate(k_form);
  if (certificate > kCertificateTol * rel_scale(k_form.k.frobenius_norm())) {
    throw Error(ErrorCode::InternalConsistency,
                "Re(K) + 1/2 sum rate G*G = " + std::to_string(certificate) + " on a trace-annihilating map");
  }
  // H = -Im(K) = (i/2)(K - K*)
  GKSLForm out;
  out.h = hermitian_part((0.5 * kI) * (k_form.k - k_form.k.adjoint()));
  out.jumps = std::move(k_form.jumps);
  return out;
}

GKSLForm decompose_gksl(const SuperOperator& op) { return decompose_gksl(op, gell_mann_basis(op.n())); }

SuperOperator reconstruct_gksl(std::size_t n, const GKSLForm& form) {
  validate(n, form);
  const ComplexMatrix id = ComplexMatrix::identity(n);
  std::vector<SandwichTerm> terms;
  terms.push_back({-kI * form.h, id});
  terms.push_back({id, kI * form.h});
  for (const auto& j : form.jumps) {
    const ComplexMatrix gdg = j.op.adjoint() * j.op;
    terms.push_back({Complex(j.rate) * j.op, j.op.adjoint()});
    terms.push_back({Complex(-0.5 * j.rate) * gdg, id});
    terms.push_back({id, Complex(-0.5 * j.rate) * gdg});
  }
  SuperOperator op = from_sandwich_terms(n, terms);
  if (!is_trace_annihilating(op) || !is_hermiticity_preserving(op)) {
    throw Error(ErrorCode::InternalConsistency, "reconstructed GKSL map lost trace or adjoint preservation");
  }
  return op;
}

GeneratorClass classify(const SuperOperator& op) {
  GeneratorClass out;
  const HSBasis basis = gell_mann_basis(op.n());
  const CoeffMatrix coeffs = to_coeff_matrix(op, basis);
  const double c_norm = coeffs.c.frobenius_norm();
  out.hermiticity_preserving = distance(coeffs.c, coeffs.c.adjoint()) <= kDefaultPredicateTol * rel_scale(c_norm);
  out.trace_annihilating = is_trace_annihilating(op);
  if (out.hermiticity_preserving) {
    const KForm form = k_form_from_coeffs(coeffs, basis).form;
    out.rates_nonnegative = std::all_of(form.jumps.begin(), form.jumps.end(), [&](const Jump& j) {
      return j.rate >= -kNegativeRateTol * rel_scale(c_norm);
    });
  }
  out.verdict = verdict_for(out.hermiticity_preserving, out.trace_annihilating, out.rates_nonnegative);
  return out;
}

std::vector<Jump> pad_zero_jumps(std::size_t n, const std::vector<Jump>& jumps) {
  std::vector<Jump> out = jumps;
  const std::size_t target = n * n - 1;
  std::vector<ComplexMatrix> frame;
  frame.push_back(ComplexMatrix::identity(n) * Complex(1.0 / std::sqrt(static_cast<double>(n))));
  for (const auto& j : jumps) frame.push_back(j.op);

  const HSBasis basis = gell_mann_basis(n);
  for (std::size_t a = 0; a + 1 < basis.size() && out.size() < target; ++a) {
    ComplexMatrix v = basis[a];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : frame) v -= hs_inner(v, q) * q;
    const double norm = v.frobenius_norm();
    if (norm < 1e-6) continue;
    ComplexMatrix g = fix_phase(v * Complex(1.0 / norm));
    frame.push_back(g);
    out.push_back({0.0, std::move(g)});
  }
  if (out.size() != target) {
    throw Error(ErrorCode::InternalConsistency, "pad_zero_jumps: complement did not span the traceless subspace");
  }
  return out;
}

SuperOperator sample_generator(std::size_t n, std::uint64_t seed, Verdict verdict) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "sample_generator: n must be >= 1");
  Rng rng = make_rng(seed);
  const std::size_t d = n * n - 1;

  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    SuperOperator candidate;
    switch (verdict) {
      case Verdict::General: {
        candidate = SuperOperator(n, gaussian_matrix(rng, n * n, n * n));
        break;
      }
      case Verdict::QdsGen: {
        if (n == 1) return SuperOperator::zero(1);
        GKSLForm form{random_traceless_hermitian(rng, n), {}};
        for (auto& g : random_traceless_frame(rng, n, d)) form.jumps.push_back({std::abs(gaussian(rng)), std::move(g)});
        candidate = reconstruct_gksl(n, form);
        break;
      }
      case Verdict::StarTraceSemigroupGen: {
        if (n == 1) {
          throw Error(ErrorCode::UnsatisfiableClass, "n = 1 has no jump operators, so no rate can be negative");
        }
        GKSLForm form{random_traceless_hermitian(rng, n), {}};
        for (auto& g : random_traceless_frame(rng, n, d)) form.jumps.push_back({gaussian(rng), std::move(g)});
        // Guarantee a clearly negative rate.
        form.jumps.front().rate = -(0.1 + std::abs(form.jumps.front().rate));
        candidate = reconstruct_gksl(n, form);
        break;
      }
      case Verdict::StarSemigroupGen: {
        const double sign = gaussian(rng) < 0.0 ? -1.0 : 1.0;
        KForm form;
        form.trace_defect = sign * (0.5 + std::abs(gaussian(rng)));
        form.k = gaussian_matrix(rng, n, n);
        form.k -= ComplexMatrix::identity(n) *
                  (form.k.trace() / static_cast<double>(n) - Complex(form.trace_defect / (2.0 * static_cast<double>(n))));
        if (n > 1) {
          for (auto& g : random_traceless_frame(rng, n, d)) form.jumps.push_back({gaussian(rng), std::move(g)});
        }
        candidate = reconstruct_k(n, form);
        break;
      }
    }
    if (classify(candidate).verdict == verdict) return candidate;
  }
  throw Error(ErrorCode::InternalConsistency, "sample_generator: could not realize requested class");
}

void validate(std::size_t n, const KForm& form) {
  if (form.k.rows() != n || form.k.cols() != n) throw Error(ErrorCode::InvariantViolation, "K has wrong shape");
  validate_jumps(n, form.jumps);
  if (std::abs(form.k.trace() - Complex(0.5 * form.trace_defect)) > kTraceKTol * rel_scale(std::abs(form.trace_defect))) {
    throw Error(ErrorCode::InvariantViolation, "tr(K) differs from trace_defect / 2");
  }
}

void validate(std::size_t n, const GKSLForm& form) {
  if (form.h.rows() != n || form.h.cols() != n) throw Error(ErrorCode::InvariantViolation, "H has wrong shape");
  const double scale = rel_scale(form.h.frobenius_norm());
  if (distance(form.h, form.h.adjoint()) > kTraceTol * scale) {
    throw Error(ErrorCode::InvariantViolation, "H is not self-adjoint");
  }
  if (std::abs(form.h.trace()) > kTraceTol * scale) throw Error(ErrorCode::InvariantViolation, "H is not traceless");
  validate_jumps(n, form.jumps);
}

}  // namespace gksl
