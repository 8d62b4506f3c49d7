#include "crsp/serialize.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace crsp {

namespace {

Json complex_to_json(const Amplitude& z) { return Json::array({z.real(), z.imag()}); }

Amplitude complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, "complex numbers are written as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses a real with an optional leading sign, advancing `s`.
bool take_real(std::string_view& s, double& out) {
  bool negative = false;
  std::string_view rest = s;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  if (rest.empty() || rest.front() == '+' || rest.front() == '-') return false;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc{}) return false;
  out = negative ? -v : v;
  s = rest.substr(static_cast<std::size_t>(ptr - rest.data()));
  return true;
}

}  // namespace

// ------------------------------------------------------------ states

Json state_to_json(const PureState& state) {
  Json amps = Json::array();
  for (std::size_t i = 0; i < state.dim(); ++i) amps.push_back(complex_to_json(state.amplitude(i)));
  Json out;
  out["wires"] = state.wires();
  out["amplitudes"] = std::move(amps);
  return out;
}

Loaded<PureState> state_from_json(const Json& j, const Tolerances& tol) {
  const Json& wires_json = require(j, "wires");
  const Json& amps_json = require(j, "amplitudes");
  if (!wires_json.is_array() || !amps_json.is_array()) throw Error(ErrorCode::ParseError, "wires and amplitudes must be arrays");
  std::vector<std::string> wires;
  for (const auto& w : wires_json) {
    if (!w.is_string()) throw Error(ErrorCode::ParseError, "wire labels must be strings");
    wires.push_back(w.get<std::string>());
  }
  std::vector<Amplitude> amps;
  for (const auto& a : amps_json) amps.push_back(complex_from_json(a));
  for (const auto& z : amps) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorCode::NonFinite, "state amplitudes");
  }
  auto fixed = normalize_input(std::move(amps), tol);
  CVector v(static_cast<Eigen::Index>(fixed.value.size()));
  for (std::size_t i = 0; i < fixed.value.size(); ++i) v(static_cast<Eigen::Index>(i)) = fixed.value[i];
  return {PureState(std::move(wires), std::move(v), tol), fixed.renormalized};
}

// ------------------------------------------------------------ canonical form

Json canonical_to_json(const CanonicalThreeQubit& result) {
  Json out;
  out["a"] = result.coeffs.a;
  out["mu"] = result.coeffs.mu;
  Json unitaries;
  unitaries["c"] = matrix_to_json(result.u_c.matrix());
  unitaries["a"] = matrix_to_json(result.u_a.matrix());
  unitaries["b"] = matrix_to_json(result.u_b.matrix());
  out["unitaries"] = std::move(unitaries);
  out["source_fidelity"] = result.source_fidelity;
  return out;
}

Loaded<CanonicalCoefficients> canonical_from_json(const Json& j, const Tolerances& tol) {
  const Json& a = require(j, "a");
  const Json& mu = require(j, "mu");
  if (!a.is_array() || a.size() != 5) throw Error(ErrorCode::ParseError, "\"a\" must hold five numbers");
  if (!mu.is_number()) throw Error(ErrorCode::ParseError, "\"mu\" must be a number");
  Loaded<CanonicalCoefficients> out;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    if (!a[i].is_number()) throw Error(ErrorCode::ParseError, "\"a\" must hold five numbers");
    out.value.a[i] = a[i].get<double>();
    norm2 += out.value.a[i] * out.value.a[i];
  }
  out.value.mu = mu.get<double>();
  out.value.validate(tol.input_norm);
  if (std::abs(norm2 - 1.0) > tol.norm) {
    for (auto& x : out.value.a) x /= std::sqrt(norm2);
    out.renormalized = true;
  }
  return out;
}

// ------------------------------------------------------------ reports

Json report_to_json(const ProtocolReport& report, bool renormalized) {
  Json branches = Json::array();
  for (const auto& b : report.branches) {
    Json row;
    row["charlie"] = b.charlie_outcome;
    row["charlie_prob"] = b.charlie_prob;
    row["alice"] = b.alice_outcome;
    row["alice_prob"] = b.alice_prob;
    row["bob_aux"] = b.bob_aux_outcome ? Json(*b.bob_aux_outcome) : Json(nullptr);
    row["bob_aux_prob"] = b.bob_aux_prob;
    row["joint_prob"] = b.joint_prob;
    row["fidelity"] = optional_number(b.fidelity_to_target);
    row["success"] = b.success;
    row["bob_final"] = b.bob_final ? state_to_json(*b.bob_final) : Json(nullptr);
    branches.push_back(std::move(row));
  }
  Json out;
  out["protocol"] = std::string(to_string(report.protocol));
  out["class"] = std::string(to_string(report.target_class));
  out["p"] = {report.p0, report.p1};
  out["lambda"] = Json::array({Json::array({report.lambda00, report.lambda01}),
                               Json::array({report.lambda10, report.lambda11})});
  out["branches"] = std::move(branches);
  out["enumerated_success"] = report.enumerated_success;
  out["closed_form_success"] = report.closed_form_success;
  out["cbits"] = report.cbits_used;
  if (renormalized) out["renormalized"] = true;
  return out;
}

std::string report_to_csv(const ProtocolReport& report) {
  std::ostringstream os;
  os << "charlie,alice,bob_aux,charlie_prob,alice_prob,bob_aux_prob,joint_prob,fidelity,success\n";
  for (const auto& b : report.branches) {
    os << b.charlie_outcome << ',' << b.alice_outcome << ',';
    if (b.bob_aux_outcome) os << *b.bob_aux_outcome;
    os << ',' << format_sig12(b.charlie_prob) << ',' << format_sig12(b.alice_prob) << ','
       << format_sig12(b.bob_aux_prob) << ',' << format_sig12(b.joint_prob) << ',';
    if (b.fidelity_to_target) os << format_sig12(*b.fidelity_to_target);
    os << ',' << (b.success ? 1 : 0) << '\n';
  }
  return os.str();
}

Json optimum_to_json(const Optimum& optimum) {
  Json out;
  out["theta_star"] = optimum.theta_star;
  out["eta_star"] = optimum.eta_star;
  out["p_real"] = optimum.p_real;
  out["p_complex"] = optimum.p_complex;
  out["iterations"] = optimum.iterations;
  return out;
}

Json summary_to_json(const CampaignSummary& summary) {
  Json failures = Json::array();
  for (const auto& [index, reason] : summary.failures) failures.push_back({{"trial", index}, {"reason", reason}});
  Json out;
  out["trials_run"] = summary.trials_run;
  out["max_abs_closed_form_gap"] = summary.max_abs_closed_form_gap;
  out["conservation_worst"] = summary.conservation_worst;
  out["failures"] = std::move(failures);
  return out;
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string landscape_to_csv(const Landscape& landscape) {
  std::string out(kLandscapeHeader);
  out += '\n';
  for (std::size_t i = 0; i < landscape.theta_grid.size(); ++i) {
    for (std::size_t j = 0; j < landscape.eta_grid.size(); ++j) {
      const SuccessTerms& c = landscape.at(i, j);
      for (double v : {landscape.theta_grid[i], landscape.eta_grid[j], c.p0, c.p1, c.lambda00, c.lambda10,
                       c.p_real}) {
        out += format_sig12(v);
        out += ',';
      }
      out += format_sig12(c.p_complex);
      out += '\n';
    }
  }
  return out;
}

// ------------------------------------------------------------ text syntax

Amplitude parse_complex(std::string_view text) {
  std::string_view s = trim(text);
  const std::string bad = "invalid complex number \"" + std::string(text) + "\" (expected re or re+imi)";
  double re = 0.0;
  if (!take_real(s, re)) throw Error(ErrorCode::ParseError, bad);
  if (s.empty()) return {re, 0.0};
  if (s.front() != '+' && s.front() != '-') throw Error(ErrorCode::ParseError, bad);
  double im = 0.0;
  if (!take_real(s, im) || s != "i") throw Error(ErrorCode::ParseError, bad);
  return {re, im};
}

std::vector<Amplitude> parse_complex_list(std::string_view text) {
  std::vector<Amplitude> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Loaded<std::vector<Amplitude>> normalize_input(std::vector<Amplitude> coefficients, const Tolerances& tol) {
  double norm2 = 0.0;
  for (const auto& z : coefficients) norm2 += std::norm(z);
  if (!std::isfinite(norm2)) throw Error(ErrorCode::NonFinite, "input coefficients");
  const double off = std::abs(norm2 - 1.0);
  if (off > tol.input_norm) {
    throw Error(ErrorCode::NotNormalized, "squared norm " + format_sig12(norm2) + " is off by more than " +
                                              format_sig12(tol.input_norm));
  }
  Loaded<std::vector<Amplitude>> out{std::move(coefficients), false};
  if (off > tol.norm) {
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& z : out.value) z *= scale;
    out.renormalized = true;
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_grid(std::string_view text) {
  const std::string bad = "grid must look like TxE, e.g. 181x361";
  const std::size_t x = text.find('x');
  if (x == std::string_view::npos) throw Error(ErrorCode::ParseError, bad);
  std::size_t t = 0, e = 0;
  const auto lhs = text.substr(0, x);
  const auto rhs = text.substr(x + 1);
  const auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), t);
  const auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), e);
  if (lhs.empty() || rhs.empty() || r1.ec != std::errc{} || r2.ec != std::errc{} ||
      r1.ptr != lhs.data() + lhs.size() || r2.ptr != rhs.data() + rhs.size()) {
    throw Error(ErrorCode::ParseError, bad);
  }
  if (t < 2 || e < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 steps per axis");
  return {t, e};
}

// ------------------------------------------------------------ files

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
}

}  // namespace crsp
