#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rfe/bounds.h"
#include "rfe/estimator.h"
#include "rfe/harness.h"
#include "rfe/noise.h"

// JSON and CSV encodings. CSV is comma-separated, LF-terminated, with a
// header row.

namespace rfe {

using Json = nlohmann::ordered_json;

// {"kind": "ideal"}
// {"kind": "ban", "eta_bar": x, "strategy": "zero" | "constant_plus" |
//   "constant_minus" | "sign_flip" | "custom", "eta1": [...], "eta2": [...]}
// {"kind": "gaussian" | "gaussian_linear", "sigma": x}
// {"kind": "dephasing" | "high_coherence", "t2": x}
Json noise_to_json(const NoiseModel& model);
NoiseModel noise_from_json(const Json& j);
// Parses and validates; throws InvalidInput with a one-line message.
NoiseModel parse_noise(std::string_view text);

Json to_json(const TrialResult& result, bool include_spectrum = true);
Json to_json(const BoundsReport& report);
Json to_json(const SuccessStats& stats);
Json to_json(const LemmaScanReport& report);

// j,re,im,abs
void write_spectrum_csv(std::ostream& os, const Spectrum& coefficients);
// parameter,M_predicted,trials,successes,rate,ci_lo,ci_hi, followed by
// achievable,K,implied_max_eta
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace rfe
