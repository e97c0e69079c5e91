#include "rfe/io.h"

#include <cstdio>
#include <string>

#include "rfe/errors.h"

namespace rfe {
namespace {

double required_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidInput(std::string("noise JSON: \"") + key +
                       "\" must be a number");
  }
  return j.at(key).get<double>();
}

std::vector<double> number_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidInput(std::string("noise JSON: custom strategy needs \"") +
                       key + "\" array");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) {
      throw InvalidInput(std::string("noise JSON: \"") + key +
                         "\" must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

AdversaryStrategy strategy_from_json(const Json& j) {
  const std::string name = j.value("strategy", std::string("sign_flip"));
  if (name == "zero") return adversary::Zero{};
  if (name == "constant_plus") return adversary::ConstantPlus{};
  if (name == "constant_minus") return adversary::ConstantMinus{};
  if (name == "sign_flip") return adversary::SignFlip{};
  if (name == "custom") {
    return adversary::Custom{{number_array(j, "eta1"), number_array(j, "eta2")}};
  }
  throw InvalidInput("noise JSON: unknown strategy \"" + name +
                     "\" (expected zero, constant_plus, constant_minus, "
                     "sign_flip or custom)");
}

// Shortest text that round-trips, for CSV cells.
std::string format_double(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

}  // namespace

Json noise_to_json(const NoiseModel& model) {
  Json j;
  j["kind"] = std::string(kind_name(model));
  if (const auto* m = std::get_if<noise::Ban>(&model)) {
    j["eta_bar"] = m->eta_bar;
    j["strategy"] = std::string(strategy_name(m->strategy));
    if (const auto* c = std::get_if<adversary::Custom>(&m->strategy)) {
      j["eta1"] = c->table.eta1;
      j["eta2"] = c->table.eta2;
    }
  } else if (const auto* m = std::get_if<noise::Gaussian>(&model)) {
    j["sigma"] = m->sigma;
  } else if (const auto* m = std::get_if<noise::GaussianLinear>(&model)) {
    j["sigma"] = m->sigma;
  } else if (const auto* m = std::get_if<noise::Dephasing>(&model)) {
    j["t2"] = m->t2;
  } else if (const auto* m = std::get_if<noise::HighCoherence>(&model)) {
    j["t2"] = m->t2;
  }
  return j;
}

NoiseModel noise_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw InvalidInput("noise JSON must be an object with a string \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  NoiseModel model;
  if (kind == "ideal") {
    model = noise::Ideal{};
  } else if (kind == "ban") {
    model = noise::Ban{required_number(j, "eta_bar"), strategy_from_json(j)};
  } else if (kind == "gaussian") {
    model = noise::Gaussian{required_number(j, "sigma")};
  } else if (kind == "gaussian_linear") {
    model = noise::GaussianLinear{required_number(j, "sigma")};
  } else if (kind == "dephasing") {
    model = noise::Dephasing{required_number(j, "t2")};
  } else if (kind == "high_coherence") {
    model = noise::HighCoherence{required_number(j, "t2")};
  } else {
    throw InvalidInput("noise JSON: unknown kind \"" + kind +
                       "\" (expected ideal, ban, gaussian, gaussian_linear, "
                       "dephasing or high_coherence)");
  }
  validate(model);
  return model;
}

NoiseModel parse_noise(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    throw InvalidInput("malformed noise JSON: " + std::string(text));
  }
  return noise_from_json(j);
}

Json to_json(const TrialResult& result, bool include_spectrum) {
  Json j;
  j["theta_hat"] = result.theta_hat;
  j["winning_index"] = result.winning_index;
  j["grid_size"] = result.spectrum.coefficients.size();
  j["samples_used"] = result.spectrum.samples_used;
  j["total_depth"] = result.spectrum.total_depth;
  j["circuit_count"] = 2 * result.spectrum.samples_used;
  j["clamp_count"] = result.spectrum.clamp_count;
  if (include_spectrum) {
    Json rows = Json::array();
    for (const auto& f : result.spectrum.coefficients) {
      rows.push_back({f.real(), f.imag()});
    }
    j["spectrum"] = std::move(rows);
  }
  return j;
}

Json to_json(const BoundsReport& report) {
  Json j;
  j["trivial"] = report.trivial;
  j["K"] = report.grid_size;
  j["M"] = report.samples;
  j["inflation_factor"] = report.inflation_factor;
  j["expected_total_depth"] = report.expected_total_depth;
  if (report.effective_eta_bar) {
    j["effective_eta_bar"] = *report.effective_eta_bar;
  } else {
    j["effective_eta_bar"] = nullptr;
  }
  Json thresholds = Json::object();
  for (const auto& [name, value] : report.thresholds) thresholds[name] = value;
  j["thresholds"] = std::move(thresholds);
  return j;
}

Json to_json(const SuccessStats& stats) {
  return Json{{"trials", stats.trials},
              {"successes", stats.successes},
              {"rate", stats.rate},
              {"wilson_ci_95", {stats.wilson_ci_95.lo, stats.wilson_ci_95.hi}},
              {"epsilon_used", stats.epsilon_used},
              {"delta_used", stats.delta_used},
              {"samples_per_trial", stats.samples_per_trial},
              {"grid_size", stats.grid_size},
              {"clamp_events", stats.clamp_events},
              {"total_depth", stats.total_depth}};
}

Json to_json(const LemmaScanReport& r) {
  return Json{{"k_min", r.k_min},
              {"k_max", r.k_max},
              {"theta_points", r.theta_points},
              {"close_checked", r.close_checked},
              {"nonadjacent_checked", r.nonadjacent_checked},
              {"violations", r.violations},
              {"min_close_magnitude", r.min_close_magnitude},
              {"min_close_at", {{"K", r.min_close_k}, {"theta", r.min_close_theta}}},
              {"max_nonadjacent_magnitude", r.max_nonadjacent_magnitude},
              {"max_nonadjacent_at",
               {{"K", r.max_nonadjacent_k}, {"theta", r.max_nonadjacent_theta}}},
              {"close_margin", r.close_margin},
              {"nonadjacent_margin", r.nonadjacent_margin}};
}

void write_spectrum_csv(std::ostream& os, const Spectrum& coefficients) {
  os << "j,re,im,abs\n";
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const auto& f = coefficients[j];
    os << j << ',' << format_double(f.real()) << ',' << format_double(f.imag())
       << ',' << format_double(std::abs(f)) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "parameter,M_predicted,trials,successes,rate,ci_lo,ci_hi,"
        "achievable,K,implied_max_eta\n";
  for (const auto& r : rows) {
    os << format_double(r.parameter) << ',' << r.samples_predicted << ','
       << r.stats.trials << ',' << r.stats.successes << ','
       << format_double(r.stats.rate) << ','
       << format_double(r.stats.wilson_ci_95.lo) << ','
       << format_double(r.stats.wilson_ci_95.hi) << ','
       << (r.achievable ? "true" : "false") << ',' << r.grid_size << ','
       << format_double(r.implied_max_eta) << '\n';
  }
}

}  // namespace rfe
