// generator.hpp — canonical forms of semigroup generators.
//
// Any hermiticity-preserving map can be written as
//     L(A) = A K* + K A + sum_p rate_p G_p A G_p*
// with traceless, Hilbert-Schmidt-orthonormal G_p and tr(K) = trace_defect / 2.
// If L also annihilates traces, Re(K) = -1/2 sum_p rate_p G_p* G_p and the map
// takes the commutator form
//     L(A) = -i[H, A] + sum_p rate_p (G_p A G_p* - 1/2 {G_p* G_p, A})
// with H = -Im(K). L generates a quantum dynamical semigroup iff every rate is
// nonnegative.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gksl/hs_basis.hpp"
#include "gksl/linalg.hpp"
#include "gksl/superop.hpp"

namespace gksl {

struct Jump {
  double rate = 0.0;
  ComplexMatrix op;  // G
};

struct KForm {
  ComplexMatrix k;
  std::vector<Jump> jumps;
  double trace_defect = 0.0;  // c_{N^2, N^2}
};

struct GKSLForm {
  ComplexMatrix h;
  std::vector<Jump> jumps;
};

enum class Verdict { General, StarSemigroupGen, StarTraceSemigroupGen, QdsGen };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view name);

struct GeneratorClass {
  bool hermiticity_preserving = false;
  bool trace_annihilating = false;
  bool rates_nonnegative = false;
  Verdict verdict = Verdict::General;
};

// The verdict implied by the three flags.
Verdict verdict_for(bool hermiticity_preserving, bool trace_annihilating, bool rates_nonnegative);

// Spectral decomposition of the (N^2-1)-block of the coefficient matrix.
// Rates come out descending; near-zero rates are dropped.
KForm decompose_k_form(const SuperOperator& op, const HSBasis& basis);
KForm decompose_k_form(const SuperOperator& op);

SuperOperator reconstruct_k(std::size_t n, const KForm& form);

GKSLForm decompose_gksl(const SuperOperator& op, const HSBasis& basis);
GKSLForm decompose_gksl(const SuperOperator& op);

SuperOperator reconstruct_gksl(std::size_t n, const GKSLForm& form);

// ||Re(K) + 1/2 sum rate G*G||_F: zero exactly when the K-form annihilates traces.
double real_part_certificate(const KForm& form);

GeneratorClass classify(const SuperOperator& op);

// Zero-rate jumps appended until the set spans the traceless subspace
// (N^2 - 1 members). Complement comes from modified Gram-Schmidt on the
// default basis, orthogonalized twice.
std::vector<Jump> pad_zero_jumps(std::size_t n, const std::vector<Jump>& jumps);

// Deterministic in (n, seed, verdict); classify(result).verdict == verdict.
SuperOperator sample_generator(std::size_t n, std::uint64_t seed, Verdict verdict);

// Throw InvariantViolation if the stated form invariants fail.
void validate(std::size_t n, const KForm& form);
void validate(std::size_t n, const GKSLForm& form);

}  // namespace gksl
