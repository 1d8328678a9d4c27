// gksl — command-line front end for classifying, decomposing, reconstructing,
// propagating, verifying and sampling semigroup generators.
//
// Exit codes:
//   0  success (classify succeeds regardless of verdict)
//   1  internal error
//   2  unreadable or malformed input, bad flags, invalid argument values
//   3  dimension mismatch
//   4  input is not decomposable into GKSL form
//   5  at least one verification check failed (report is still printed)

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gksl/error.hpp"
#include "gksl/generator.hpp"
#include "gksl/hs_basis.hpp"
#include "gksl/io.hpp"
#include "gksl/random.hpp"
#include "gksl/semigroup.hpp"
#include "gksl/superop.hpp"

namespace {

using gksl::io::Json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kBadInput = 2,
  kDimension = 3,
  kNotDecomposable = 4,
  kVerifyFailed = 5,
};

// Thrown by a subcommand that wants a specific exit status after printing.
struct ExitWith {
  int code;
};

int exit_code_for(gksl::ErrorCode code) {
  using gksl::ErrorCode;
  switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonSquare:
    case ErrorCode::InvalidDimension:
      return kDimension;
    case ErrorCode::NotHermiticityPreserving:
    case ErrorCode::NotTraceAnnihilating:
      return kNotDecomposable;
    case ErrorCode::InternalConsistency:
    case ErrorCode::SingularMatrix:
      return kInternal;
    default:
      return kBadInput;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    gksl::io::write_file(path, text);
  }
}

gksl::SuperOperator load_superop(const std::string& path) {
  return gksl::io::superop_from_json(gksl::io::parse(gksl::io::read_file(path)));
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> times;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double t = 0.0;
    try {
      t = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw gksl::Error(gksl::ErrorCode::ParseError, "bad time value \"" + item + "\"");
    }
    times.push_back(t);
  }
  if (times.empty()) throw gksl::Error(gksl::ErrorCode::ParseError, "--times is empty");
  return times;
}

Json certificate(bool pass, std::optional<double> worst) {
  Json c = Json::object();
  c["pass"] = pass;
  if (worst && std::isfinite(*worst)) {
    c["worst_value"] = *worst;
  } else {
    c["worst_value"] = nullptr;
  }
  return c;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---- classify --------------------------------------------------------------

void run_classify(const std::string& in) {
  const gksl::SuperOperator op = load_superop(in);
  const gksl::GeneratorClass cls = gksl::classify(op);

  Json rates = Json::array();
  double min_rate = 0.0;
  if (cls.hermiticity_preserving) {
    for (const auto& j : gksl::decompose_k_form(op).jumps) {
      rates.push_back(j.rate);
      min_rate = std::min(min_rate, j.rate);
    }
  }

  Json report = Json::object();
  report["verdict"] = std::string(gksl::to_string(cls.verdict));
  report["hermiticity_preserving"] = cls.hermiticity_preserving;
  report["trace_annihilating"] = cls.trace_annihilating;
  report["rates_nonnegative"] = cls.rates_nonnegative;
  report["rates"] = std::move(rates);
  Json certs = Json::object();
  certs["hermiticity"] = certificate(cls.hermiticity_preserving, gksl::hermiticity_defect(op));
  certs["trace_annihilation"] = certificate(cls.trace_annihilating, gksl::trace_annihilation_defect(op));
  certs["rate_sign"] = certificate(cls.rates_nonnegative,
                                   cls.hermiticity_preserving ? std::optional<double>(min_rate) : std::nullopt);
  report["certificates"] = std::move(certs);
  std::cout << gksl::io::dump(report);
}

// ---- decompose / reconstruct ------------------------------------------------

void run_decompose(const std::string& in, const std::string& out, bool pad) {
  const gksl::SuperOperator op = load_superop(in);
  gksl::GKSLForm form = gksl::decompose_gksl(op);
  if (pad) form.jumps = gksl::pad_zero_jumps(op.n(), form.jumps);
  emit(out, gksl::io::dump(gksl::io::to_json(op.n(), form)));
}

void run_reconstruct(const std::string& in, const std::string& out) {
  const auto parsed = gksl::io::form_from_json(gksl::io::parse(gksl::io::read_file(in)));
  const gksl::SuperOperator op =
      std::holds_alternative<gksl::GKSLForm>(parsed.form)
          ? gksl::reconstruct_gksl(parsed.n, std::get<gksl::GKSLForm>(parsed.form))
          : gksl::reconstruct_k(parsed.n, std::get<gksl::KForm>(parsed.form));
  emit(out, gksl::io::dump(gksl::io::to_json(op)));
}

// ---- propagate --------------------------------------------------------------

void run_propagate(const std::string& in, const std::string& rho_path, const std::string& times,
                   const std::string& out) {
  const gksl::SuperOperator op = load_superop(in);
  const gksl::ComplexMatrix rho0 = gksl::io::matrix_from_json(gksl::io::parse(gksl::io::read_file(rho_path)));
  const std::vector<double> grid = parse_times(times);
  emit(out, gksl::io::trajectory_csv(gksl::propagate(op, rho0, grid)));
}

// ---- verify -----------------------------------------------------------------

struct VerifyFlags {
  bool roundtrip = false;
  bool cp = false;
  bool trace = false;
  bool resolvent = false;
  bool dissipativity = false;
  bool rate_oracle = false;
  std::uint64_t seed = 0;

  bool any() const { return roundtrip || cp || trace || resolvent || dissipativity || rate_oracle; }
};

constexpr double kRoundTripTol = 1e-9;
constexpr double kChoiTol = 1e-8;
constexpr double kTraceTol = 1e-9;
constexpr double kDissipativityTol = 1e-8;
constexpr double kResolventTol = 1e-9;
constexpr double kRateOracleTol = 1e-8;
constexpr std::size_t kResolventTrials = 100;
constexpr std::size_t kDissipativityTrials = 20;
constexpr std::size_t kAmpliatedTrials = 10;
constexpr std::size_t kTraceSamples = 5;
const std::vector<double> kTimeGrid = {0.1, 1.0, 10.0};

Json check_roundtrip(const gksl::SuperOperator& op) {
  const double scale = std::max(1.0, op.mat().frobenius_norm());
  if (!gksl::is_hermiticity_preserving(op)) return certificate(false, std::nullopt);
  double err = 0.0;
  if (gksl::is_trace_annihilating(op)) {
    err = gksl::distance(gksl::reconstruct_gksl(op.n(), gksl::decompose_gksl(op)), op) / scale;
  } else {
    err = gksl::distance(gksl::reconstruct_k(op.n(), gksl::decompose_k_form(op)), op) / scale;
  }
  return certificate(err <= kRoundTripTol, err);
}

Json check_cp(const gksl::SuperOperator& op) {
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();
  for (double t : kTimeGrid) {
    pass = gksl::is_cp_at(op, t, kChoiTol) && pass;
    worst = std::min(worst, gksl::choi_min_eig(op, t));
  }
  return certificate(pass, worst);
}

Json check_trace(const gksl::SuperOperator& op, std::uint64_t seed) {
  gksl::Rng rng = gksl::make_rng(seed);
  std::vector<gksl::ComplexMatrix> samples;
  for (std::size_t i = 0; i < kTraceSamples; ++i) samples.push_back(gksl::random_density(rng, op.n(), op.n()));
  const double drift = gksl::worst_trace_drift(op, samples, kTimeGrid);
  return certificate(drift <= kTraceTol, drift);
}

Json check_resolvent(const gksl::SuperOperator& op, std::uint64_t seed) {
  const double norm = op.mat().frobenius_norm();
  const double lambda = norm > 0.0 ? 2.0 * norm : 1.0;
  const double margin = gksl::resolvent_positivity_margin(op, lambda, kResolventTrials, seed);
  return certificate(margin >= -kResolventTol, margin);
}

Json check_dissipativity(const gksl::SuperOperator& op, std::uint64_t seed) {
  gksl::Rng rng = gksl::make_rng(seed);
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();
  auto run = [&](const gksl::SuperOperator& map, std::size_t trials) {
    for (std::size_t i = 0; i < trials; ++i) {
      const auto x = gksl::gaussian_matrix(rng, map.n(), map.n());
      const auto result = gksl::dissipativity_check(map, x, kDissipativityTol);
      pass = result.passed && pass;
      const auto h = gksl::hermitian_part(result.witness);
      worst = std::min(worst, gksl::min_eig_hermitian(h) / std::max(1.0, h.frobenius_norm()));
    }
  };
  run(op, kDissipativityTrials);
  run(gksl::ampliate(op, 2), kAmpliatedTrials);
  return certificate(pass, worst);
}

Json check_rate_oracle(const gksl::SuperOperator& op) {
  if (!gksl::is_hermiticity_preserving(op) || !gksl::is_trace_annihilating(op)) {
    return certificate(false, std::nullopt);
  }
  const auto result = gksl::projection_rates(op, gksl::gell_mann_basis(op.n()));
  const auto a = sorted(result.rates);
  const auto b = sorted(result.decomposition);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return certificate(worst <= kRateOracleTol, worst);
}

void run_verify(const std::string& in, VerifyFlags flags) {
  const gksl::SuperOperator op = load_superop(in);
  if (!flags.any()) {
    flags.roundtrip = flags.cp = flags.trace = flags.resolvent = flags.dissipativity = flags.rate_oracle = true;
  }
  Json certs = Json::object();
  if (flags.roundtrip) certs["roundtrip"] = check_roundtrip(op);
  if (flags.cp) certs["cp"] = check_cp(op);
  if (flags.trace) certs["trace"] = check_trace(op, flags.seed);
  if (flags.resolvent) certs["resolvent"] = check_resolvent(op, flags.seed);
  if (flags.dissipativity) certs["dissipativity"] = check_dissipativity(op, flags.seed);
  if (flags.rate_oracle) certs["rate_oracle"] = check_rate_oracle(op);

  bool all = true;
  for (const auto& [name, c] : certs.items()) all = all && c["pass"].get<bool>();

  Json report = Json::object();
  report["n"] = op.n();
  report["seed"] = flags.seed;
  report["pass"] = all;
  report["certificates"] = std::move(certs);
  std::cout << gksl::io::dump(report);
  if (!all) throw ExitWith{kVerifyFailed};
}

// ---- sample / basis ---------------------------------------------------------

void run_sample(std::size_t n, std::uint64_t seed, const std::string& cls, const std::string& out) {
  const auto verdict = gksl::parse_verdict(cls);
  if (!verdict || *verdict == gksl::Verdict::General) {
    throw gksl::Error(gksl::ErrorCode::ParseError,
                      "--class must be QDS_GEN, STAR_TRACE_SEMIGROUP_GEN or STAR_SEMIGROUP_GEN, got \"" + cls + "\"");
  }
  emit(out, gksl::io::dump(gksl::io::to_json(gksl::sample_generator(n, seed, *verdict))));
}

void run_basis(std::size_t n, const std::string& out) {
  emit(out, gksl::io::dump(gksl::io::to_json(gksl::gell_mann_basis(n))));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify, decompose and verify generators of quantum dynamical semigroups"};
  app.require_subcommand(1);

  std::string in;
  std::string out;

  auto* classify = app.add_subcommand("classify", "Print the generator class report (JSON) for a superoperator");
  classify->add_option("--in", in, "Superoperator JSON file")->required();

  bool pad = false;
  auto* decompose = app.add_subcommand("decompose", "Write the GKSL form of a star- and trace-preserving generator");
  decompose->add_option("--in", in, "Superoperator JSON file")->required();
  decompose->add_option("--out", out, "Output GKSLForm JSON (stdout if omitted)");
  decompose->add_flag("--pad-zero-jumps", pad, "Pad with zero-rate jumps up to N^2 - 1");

  auto* reconstruct = app.add_subcommand("reconstruct", "Build the superoperator of a GKSLForm (or KForm) JSON");
  reconstruct->add_option("--in", in, "GKSLForm or KForm JSON file")->required();
  reconstruct->add_option("--out", out, "Output superoperator JSON (stdout if omitted)");

  std::string rho0;
  std::string times;
  auto* propagate = app.add_subcommand(
      "propagate",
      "Write the trajectory exp(tL) rho0 as CSV. Header: t,re_11,im_11,re_12,im_12,... with the state "
      "flattened row-major and real/imaginary parts interleaved (indices 1-based, underscore-separated for N >= 10)");
  propagate->add_option("--in", in, "Superoperator JSON file")->required();
  propagate->add_option("--rho0", rho0, "Initial state MatrixJson file")->required();
  propagate->add_option("--times", times, "Comma-separated ascending times, e.g. 0,0.5,1")->required();
  propagate->add_option("--out", out, "Output CSV (stdout if omitted)");

  VerifyFlags flags;
  auto* verify = app.add_subcommand("verify", "Run certificate checks; exit 5 if any fails (all checks if none named)");
  verify->add_option("--in", in, "Superoperator JSON file")->required();
  verify->add_flag("--roundtrip", flags.roundtrip, "decompose -> reconstruct reproduces the input within 1e-9");
  verify->add_flag("--cp", flags.cp, "Choi matrix of exp(tL) PSD within 1e-8 for t in {0.1, 1, 10}");
  verify->add_flag("--trace", flags.trace, "tr exp(tL) rho = tr rho within 1e-9 on seeded samples");
  verify->add_flag("--resolvent", flags.resolvent, "(1 - L/lambda)^-1 maps PSD to PSD at lambda = 2||L||");
  verify->add_flag("--dissipativity", flags.dissipativity, "dissipativity inequality on seeded x, k = 1 and 2");
  verify->add_flag("--rate-oracle", flags.rate_oracle, "projection-family rates match decomposition rates");
  verify->add_option("--seed", flags.seed, "Seed for all sampled inputs")->default_val(0);

  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string cls;
  auto* sample = app.add_subcommand("sample", "Write a deterministic random generator of the requested class");
  sample->add_option("--n", n, "Hilbert space dimension")->required();
  sample->add_option("--seed", seed, "Seed")->default_val(0);
  sample->add_option("--class", cls, "QDS_GEN | STAR_TRACE_SEMIGROUP_GEN | STAR_SEMIGROUP_GEN")->required();
  sample->add_option("--out", out, "Output superoperator JSON (stdout if omitted)");

  auto* basis = app.add_subcommand("basis", "Write the default Gell-Mann basis as JSON");
  basis->add_option("--n", n, "Hilbert space dimension")->required();
  basis->add_option("--out", out, "Output JSON (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*classify) run_classify(in);
    if (*decompose) run_decompose(in, out, pad);
    if (*reconstruct) run_reconstruct(in, out);
    if (*propagate) run_propagate(in, rho0, times, out);
    if (*verify) run_verify(in, flags);
    if (*sample) run_sample(n, seed, cls, out);
    if (*basis) run_basis(n, out);
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const gksl::Error& e) {
    std::cerr << "gksl: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "gksl: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
