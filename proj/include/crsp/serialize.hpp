#pragma once

// File formats: state and canonical-form JSON, protocol reports (JSON or
// branch CSV), optimizer and campaign JSON, landscape CSV. Also the textual
// syntax for targets ("re+imi" per component, comma separated) and grids
// ("TxE").

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crsp/campaign.hpp"
#include "crsp/canonical.hpp"
#include "crsp/optimizer.hpp"
#include "crsp/protocols.hpp"

namespace crsp {

using Json = nlohmann::ordered_json;

// Values read from user input together with whether they had to be
// renormalized (off by at most tol.input_norm).
template <typename T>
struct Loaded {
  T value;
  bool renormalized = false;
};

Json state_to_json(const PureState& state);
Loaded<PureState> state_from_json(const Json& j, const Tolerances& tol = {});

Json canonical_to_json(const CanonicalThreeQubit& result);
// Coefficients only; the unitaries are informational.
Loaded<CanonicalCoefficients> canonical_from_json(const Json& j, const Tolerances& tol = {});

Json report_to_json(const ProtocolReport& report, bool renormalized = false);
std::string report_to_csv(const ProtocolReport& report);

Json optimum_to_json(const Optimum& optimum);
Json summary_to_json(const CampaignSummary& summary);

inline constexpr std::string_view kLandscapeHeader = "theta,eta,p0,p1,lambda00,lambda10,P_real,P_complex";
std::string landscape_to_csv(const Landscape& landscape);

// "%.12g"
std::string format_sig12(double v);

Amplitude parse_complex(std::string_view text);
std::vector<Amplitude> parse_complex_list(std::string_view text);
// Renormalizes when |norm^2 - 1| <= tol.input_norm, throws NotNormalized beyond.
Loaded<std::vector<Amplitude>> normalize_input(std::vector<Amplitude> coefficients, const Tolerances& tol = {});
std::pair<std::size_t, std::size_t> parse_grid(std::string_view text);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace crsp
