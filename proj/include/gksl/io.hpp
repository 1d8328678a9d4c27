// io.hpp — JSON and CSV formats used by the command-line tool.
//
//   MatrixJson     {"n": N, "re": [[...]], "im": [[...]]}
//   SuperOperator  {"kind": "matrix", "n": N, "mat": MatrixJson (N^2)}
//                | {"kind": "sandwich", "n": N, "terms": [{"X": MatrixJson, "Y": MatrixJson}, ...]}
//   GKSLForm       {"n": N, "H": MatrixJson, "jumps": [{"rate": r, "G": MatrixJson}, ...]}
//   KForm          {"n": N, "K": MatrixJson, "trace_defect": d, "jumps": [...]}
//   Trajectory CSV header t,re_11,im_11,re_12,im_12,... (row-major, 1-based)
//
// Output keys are emitted in the order listed; reals use 17 significant digits.
// Structural problems raise ParseError, inconsistent sizes DimensionMismatch.

#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "gksl/generator.hpp"
#include "gksl/hs_basis.hpp"
#include "gksl/linalg.hpp"
#include "gksl/semigroup.hpp"
#include "gksl/superop.hpp"

namespace gksl::io {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const SuperOperator& op);
SuperOperator superop_from_json(const Json& j);

Json to_json(std::size_t n, const GKSLForm& form);
Json to_json(std::size_t n, const KForm& form);

struct ParsedForm {
  std::size_t n = 0;
  std::variant<GKSLForm, KForm> form;
};

// A document carrying "K" is read as a KForm, otherwise as a GKSLForm.
ParsedForm form_from_json(const Json& j);

Json to_json(const HSBasis& basis);

Json parse(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Deterministic pretty printer (two-space indent, %.17g reals, trailing newline).
std::string dump(const Json& j);

std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace gksl::io
