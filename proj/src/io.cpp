#include "gksl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gksl/error.hpp"

namespace gksl::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t read_dimension(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) parse_error("\"n\" must be a positive integer");
  return static_cast<std::size_t>(n.get<long long>());
}

double read_real(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json jumps_to_json(const std::vector<Jump>& jumps) {
  Json arr = Json::array();
  for (const auto& jump : jumps) {
    Json item = Json::object();
    item["rate"] = jump.rate;
    item["G"] = to_json(jump.op);
    arr.push_back(std::move(item));
  }
  return arr;
}

std::vector<Jump> jumps_from_json(const Json& j, std::size_t n) {
  const Json& arr = field(j, "jumps");
  if (!arr.is_array()) parse_error("\"jumps\" must be an array");
  std::vector<Jump> jumps;
  for (const auto& item : arr) {
    Jump jump{read_real(field(item, "rate"), "\"rate\""), matrix_from_json(field(item, "G"))};
    if (jump.op.rows() != n) throw Error(ErrorCode::DimensionMismatch, "jump operator dimension differs from n");
    jumps.push_back(std::move(jump));
  }
  return jumps;
}

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump_into(value, out, indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line (matrix rows, rate lists).
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(j[i], out, indent + 2);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_into(j[i], out, indent + 2);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "MatrixJson holds square matrices only");
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  Json out = Json::object();
  out["n"] = m.rows();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t n = read_dimension(j);
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  if (!re.is_array() || !im.is_array()) parse_error("\"re\" and \"im\" must be arrays");
  if (re.size() != n || im.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "\"re\"/\"im\" must have n = " + std::to_string(n) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!re[r].is_array() || !im[r].is_array()) parse_error("matrix rows must be arrays");
    if (re[r].size() != n || im[r].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "matrix row " + std::to_string(r) + " is not of length n");
    }
    for (std::size_t c = 0; c < n; ++c) {
      entries.emplace_back(read_real(re[r][c], "matrix entry"), read_real(im[r][c], "matrix entry"));
    }
  }
  return {n, n, std::move(entries)};
}

Json to_json(const SuperOperator& op) {
  Json out = Json::object();
  out["kind"] = "matrix";
  out["n"] = op.n();
  out["mat"] = to_json(op.mat());
  return out;
}

SuperOperator superop_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("\"kind\" must be a string");
  const std::size_t n = read_dimension(j);
  if (kind == "matrix") {
    ComplexMatrix mat = matrix_from_json(field(j, "mat"));
    if (mat.rows() != n * n) {
      throw Error(ErrorCode::DimensionMismatch, "\"mat\" must be " + std::to_string(n * n) + "x" +
                                                    std::to_string(n * n) + " for n = " + std::to_string(n));
    }
    return {n, std::move(mat)};
  }
  if (kind == "sandwich") {
    const Json& arr = field(j, "terms");
    if (!arr.is_array()) parse_error("\"terms\" must be an array");
    std::vector<SandwichTerm> terms;
    for (const auto& t : arr) terms.push_back({matrix_from_json(field(t, "X")), matrix_from_json(field(t, "Y"))});
    return from_sandwich_terms(n, terms);
  }
  parse_error("unknown superoperator kind \"" + kind.get<std::string>() + "\"");
}

Json to_json(std::size_t n, const GKSLForm& form) {
  Json out = Json::object();
  out["n"] = n;
  out["H"] = to_json(form.h);
  out["jumps"] = jumps_to_json(form.jumps);
  return out;
}

Json to_json(std::size_t n, const KForm& form) {
  Json out = Json::object();
  out["n"] = n;
  out["K"] = to_json(form.k);
  out["trace_defect"] = form.trace_defect;
  out["jumps"] = jumps_to_json(form.jumps);
  return out;
}

ParsedForm form_from_json(const Json& j) {
  ParsedForm out;
  out.n = read_dimension(j);
  if (j.contains("K")) {
    KForm form;
    form.k = matrix_from_json(field(j, "K"));
    form.trace_defect = read_real(field(j, "trace_defect"), "\"trace_defect\"");
    form.jumps = jumps_from_json(j, out.n);
    if (form.k.rows() != out.n) throw Error(ErrorCode::DimensionMismatch, "K dimension differs from n");
    out.form = std::move(form);
  } else {
    GKSLForm form;
    form.h = matrix_from_json(field(j, "H"));
    form.jumps = jumps_from_json(j, out.n);
    if (form.h.rows() != out.n) throw Error(ErrorCode::DimensionMismatch, "H dimension differs from n");
    out.form = std::move(form);
  }
  return out;
}

Json to_json(const HSBasis& basis) {
  Json out = Json::object();
  out["n"] = basis.n;
  Json elements = Json::array();
  for (const auto& f : basis.elements) elements.push_back(to_json(f));
  out["elements"] = std::move(elements);
  return out;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_error("cannot write " + path);
  out << contents;
  if (!out) parse_error("write failed for " + path);
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t";
  const std::size_t n = trajectory.states.empty() ? 0 : trajectory.states.front().rows();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      // Indices are concatenated for n < 10 and underscore-separated beyond.
      const std::string sep = n < 10 ? "" : "_";
      const std::string idx = std::to_string(r + 1) + sep + std::to_string(c + 1);
      out += ",re_" + idx + ",im_" + idx;
    }
  out += "\n";
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    out += format_real(trajectory.times[i]);
    const auto& s = trajectory.states[i];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out += "," + format_real(s(r, c).real()) + "," + format_real(s(r, c).imag());
    out += "\n";
  }
  return out;
}

}  // namespace gksl::io
