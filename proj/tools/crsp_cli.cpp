// crsp: command-line front end for the CRSP simulator.
//
//   crsp decompose  --in state.json [--out canonical.json]
//   crsp run1       --in channel.json --theta T [--eta E] --target "a,b" [--format json|csv]
//   crsp run2       --in channel.json --theta T [--eta E] --target "a,b,c,d" [--format json|csv]
//   crsp sweep      --in channel.json [--grid 19x37] [--out landscape.csv]
//   crsp optimize   --in channel.json [--grid 181x361] [--tolerance-refine 1e-7]
//   crsp montecarlo [--trials N] [--seed S] [--protocol crsp1|crsp2] [--in channel.json] [--mix r,c,z]
//
// Exit status: 0 ok, 2 input error, 3 decomposition fidelity miss,
// 4 unusable channel, 5 invariant failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>

#include "CLI11.hpp"

#include "crsp/campaign.hpp"
#include "crsp/canonical.hpp"
#include "crsp/optimizer.hpp"
#include "crsp/protocols.hpp"
#include "crsp/serialize.hpp"

namespace {

enum Exit : int { kOk = 0, kInputError = 2, kFidelityMiss = 3, kUnusableChannel = 4, kInvariantFailure = 5 };

struct ExitRequest {
  int code;
  std::string message;
};

struct Options {
  std::string in;
  std::string out;
  double theta = 0.0;
  double eta = 0.0;
  std::string target;
  std::string grid;
  std::string format = "json";
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::string protocol = "crsp1";
  std::string mix;
  double refine = 1e-7;
  crsp::Tolerances tol;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    crsp::write_text_file(opt.out, text);
  }
}

std::string dump(const crsp::Json& j) { return j.dump(2) + "\n"; }

void warn_renormalized(const char* what) {
  std::cerr << "warning: " << what << " was renormalized\n";
}

crsp::CanonicalThreeQubit decompose_state(const crsp::PureState& state, const crsp::Tolerances& tol) {
  if (state.num_wires() != 3) throw crsp::Error(crsp::ErrorCode::DimensionMismatch, "expected a three-wire state");
  return crsp::acin_decompose(state, tol);
}

bool fidelity_ok(const crsp::CanonicalThreeQubit& result, const crsp::Tolerances& tol) {
  return result.source_fidelity >= 1.0 - tol.success_fidelity;
}

ExitRequest fidelity_miss(const crsp::CanonicalThreeQubit& result) {
  return {kFidelityMiss, "reconstruction fidelity " + crsp::format_sig12(result.source_fidelity) + " below threshold"};
}

// Channel files hold either canonical coefficients or a three-wire state.
crsp::CanonicalCoefficients load_channel(const Options& opt) {
  const crsp::Json j = crsp::read_json_file(opt.in);
  if (j.is_object() && j.contains("wires")) {
    const auto state = crsp::state_from_json(j, opt.tol);
    if (state.renormalized) warn_renormalized("channel state");
    const crsp::CanonicalThreeQubit result = decompose_state(state.value, opt.tol);
    if (!fidelity_ok(result, opt.tol)) throw fidelity_miss(result);
    return result.coeffs;
  }
  const auto coeffs = crsp::canonical_from_json(j, opt.tol);
  if (coeffs.renormalized) warn_renormalized("channel coefficients");
  return coeffs.value;
}

int cmd_decompose(const Options& opt) {
  const auto state = crsp::state_from_json(crsp::read_json_file(opt.in), opt.tol);
  if (state.renormalized) warn_renormalized("input state");
  const crsp::CanonicalThreeQubit result = decompose_state(state.value, opt.tol);
  crsp::Json j = crsp::canonical_to_json(result);
  if (state.renormalized) j["renormalized"] = true;
  emit(opt, dump(j));
  if (!opt.out.empty()) std::cout << "source_fidelity " << crsp::format_sig12(result.source_fidelity) << "\n";
  if (!fidelity_ok(result, opt.tol)) throw fidelity_miss(result);
  return kOk;
}

int finish_report(const Options& opt, const crsp::ProtocolReport& report, bool renormalized) {
  emit(opt, opt.format == "csv" ? crsp::report_to_csv(report) : dump(crsp::report_to_json(report, renormalized)));
  if (const auto violation = report.invariant_violation(opt.tol)) {
    std::cerr << "error: " << *violation << "\n";
    return kInvariantFailure;
  }
  return kOk;
}

crsp::Loaded<std::vector<crsp::Amplitude>> load_target(const Options& opt, std::size_t expected) {
  auto coeffs = crsp::parse_complex_list(opt.target);
  if (coeffs.size() != expected) {
    throw crsp::Error(crsp::ErrorCode::ParseError,
                      "target needs " + std::to_string(expected) + " comma-separated components");
  }
  auto fixed = crsp::normalize_input(std::move(coeffs), opt.tol);
  if (fixed.renormalized) warn_renormalized("target");
  return fixed;
}

int cmd_run1(const Options& opt) {
  const auto channel = load_channel(opt);
  const auto t = load_target(opt, 2);
  const crsp::TargetQubit target{t.value[0], t.value[1]};
  return finish_report(opt, crsp::run_crsp_single(channel, {opt.theta, opt.eta}, target, opt.tol), t.renormalized);
}

int cmd_run2(const Options& opt) {
  const auto channel = load_channel(opt);
  const auto t = load_target(opt, 4);
  const crsp::TargetTwoQubit target{t.value[0], t.value[1], t.value[2], t.value[3]};
  return finish_report(opt, crsp::run_crsp_two(channel, {opt.theta, opt.eta}, target, opt.tol), t.renormalized);
}

int cmd_sweep(const Options& opt) {
  const auto channel = load_channel(opt);
  const auto [t, e] = crsp::parse_grid(opt.grid.empty() ? "19x37" : opt.grid);
  emit(opt, crsp::landscape_to_csv(crsp::sweep(channel, t, e, opt.tol)));
  return kOk;
}

int cmd_optimize(const Options& opt) {
  const auto channel = load_channel(opt);
  crsp::OptimizerOptions o;
  if (!opt.grid.empty()) std::tie(o.theta_steps, o.eta_steps) = crsp::parse_grid(opt.grid);
  o.min_step = opt.refine;
  emit(opt, dump(crsp::optimum_to_json(crsp::maximize(channel, o, opt.tol))));
  return kOk;
}

crsp::ClassMix parse_mix(const std::string& text) {
  crsp::ClassMix mix;
  if (text.empty()) return mix;
  const auto parts = crsp::parse_complex_list(text);
  if (parts.size() != 3) throw crsp::Error(crsp::ErrorCode::ParseError, "--mix takes three weights: real,complex,zeta1");
  for (const auto& p : parts) {
    if (p.imag() != 0.0) throw crsp::Error(crsp::ErrorCode::ParseError, "--mix weights are real numbers");
  }
  mix.real = parts[0].real();
  mix.complex = parts[1].real();
  mix.zeta_one = parts[2].real();
  return mix;
}

int cmd_montecarlo(const Options& opt) {
  crsp::CampaignConfig config;
  config.trials = opt.trials;
  config.seed = opt.seed;
  config.protocol = opt.protocol == "crsp2" ? crsp::ProtocolKind::Crsp2 : crsp::ProtocolKind::Crsp1;
  if (!opt.in.empty()) config.fixed_channel = load_channel(opt);
  config.mix = parse_mix(opt.mix);
  config.tol = opt.tol;
  const crsp::CampaignSummary summary = crsp::run_campaign(config);
  emit(opt, dump(crsp::summary_to_json(summary)));
  return summary.ok() ? kOk : kInvariantFailure;
}

void add_tolerances(CLI::App* cmd, crsp::Tolerances& tol) {
  cmd->add_option("--tolerance-unitarity", tol.unitarity);
  cmd->add_option("--tolerance-norm", tol.norm);
  cmd->add_option("--tolerance-probability-floor", tol.probability_floor);
  cmd->add_option("--tolerance-rank", tol.rank);
  cmd->add_option("--tolerance-real-class", tol.real_class);
  cmd->add_option("--tolerance-zeta-one", tol.zeta_one);
  cmd->add_option("--tolerance-success-fidelity", tol.success_fidelity, "also the decomposition fidelity threshold");
  cmd->add_option("--tolerance-reconciliation", tol.reconciliation);
  cmd->add_option("--tolerance-conservation", tol.conservation);
  cmd->add_option("--tolerance-input-norm", tol.input_norm, "largest |norm^2 - 1| that is renormalized");
}

int exit_code_for(const crsp::Error& e) {
  return e.code() == crsp::ErrorCode::ChannelNotControllable ? kUnusableChannel : kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled remote state preparation over canonical three-qubit channels"};
  app.require_subcommand(1);
  Options opt;

  auto* decompose = app.add_subcommand("decompose", "Canonical form of a three-qubit state file");
  decompose->add_option("--in", opt.in, "state JSON")->required();
  decompose->add_option("--out", opt.out, "canonical JSON (default stdout)");

  auto* run1 = app.add_subcommand("run1", "Single-qubit protocol");
  auto* run2 = app.add_subcommand("run2", "Two-qubit protocol");
  for (auto* cmd : {run1, run2}) {
    cmd->add_option("--in", opt.in, "channel JSON (canonical or state)")->required();
    cmd->add_option("--theta", opt.theta, "Charlie's theta in [0, pi]")->required();
    cmd->add_option("--eta", opt.eta, "Charlie's eta in [0, 2 pi]");
    cmd->add_option("--target", opt.target, "comma-separated re+imi components")->required();
    cmd->add_option("--format", opt.format)->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out);
  }

  auto* sweep = app.add_subcommand("sweep", "Success-probability landscape as CSV");
  sweep->add_option("--in", opt.in)->required();
  sweep->add_option("--grid", opt.grid, "TxE inclusive grid, default 19x37");
  sweep->add_option("--out", opt.out);

  auto* optimize = app.add_subcommand("optimize", "Maximize the success probability over (theta, eta)");
  optimize->add_option("--in", opt.in)->required();
  optimize->add_option("--grid", opt.grid, "coarse TxE grid, default 181x361");
  optimize->add_option("--tolerance-refine", opt.refine, "stop when the pattern step drops below this");
  optimize->add_option("--out", opt.out);

  auto* montecarlo = app.add_subcommand("montecarlo", "Seeded verification campaign");
  montecarlo->add_option("--trials", opt.trials)->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", opt.seed);
  montecarlo->add_option("--protocol", opt.protocol)->check(CLI::IsMember({"crsp1", "crsp2"}));
  montecarlo->add_option("--in", opt.in, "fixed channel (default Haar-random per trial)");
  montecarlo->add_option("--mix", opt.mix, "class weights real,complex,zeta1");
  montecarlo->add_option("--format", opt.format)->check(CLI::IsMember({"json"}));
  montecarlo->add_option("--out", opt.out);

  for (auto* cmd : {decompose, run1, run2, sweep, optimize, montecarlo}) add_tolerances(cmd, opt.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*decompose) return cmd_decompose(opt);
    if (*run1) return cmd_run1(opt);
    if (*run2) return cmd_run2(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*optimize) return cmd_optimize(opt);
    return cmd_montecarlo(opt);
  } catch (const ExitRequest& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const crsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
