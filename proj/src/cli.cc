#include "rfe/cli.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "rfe/bounds.h"
#include "rfe/checks.h"
#include "rfe/errors.h"
#include "rfe/estimator.h"
#include "rfe/harness.h"

namespace rfe {
namespace {

const char* const kSubcommands[] = {"run", "sweep", "bounds", "spectrum", "verify"};

std::string default_format(const std::string& subcommand) {
  if (subcommand == "spectrum" || subcommand == "sweep") return "csv";
  if (subcommand == "verify") return "text";
  return "json";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw InvalidInput("--grid: \"" + cell + "\" is not a number");
    }
  }
  return out;
}

std::optional<double> parse_theta(const std::string& text) {
  if (text == "random") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInput("--theta must be a number or \"random\", got \"" + text + "\"");
}

SweepFamily parse_family(const std::string& name) {
  if (name == "ideal") return SweepFamily::kIdeal;
  if (name == "ban") return SweepFamily::kBan;
  if (name == "gaussian") return SweepFamily::kGaussian;
  if (name == "gaussian_linear") return SweepFamily::kGaussianLinear;
  if (name == "dephasing") return SweepFamily::kDephasing;
  if (name == "high_coherence") return SweepFamily::kHighCoherence;
  throw InvalidInput("--family must be one of ideal, ban, gaussian, "
                     "gaussian_linear, dephasing, high_coherence");
}

ThetaSampling campaign_theta(const CliConfig& c) {
  if (c.theta) return ThetaSampling::fixed(*c.theta);
  return ThetaSampling::uniform(0.2, kPi - 0.2);
}

double resolve_theta(const CliConfig& c) {
  return trial_theta(campaign_theta(c), c.seed, 0);
}

void emit(const CliConfig& c, const std::string& body, std::ostream& out) {
  if (c.output.empty()) {
    out << body;
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw InvalidInput("cannot open --output path " + c.output);
  file << body;
}

std::string run_command(const CliConfig& c) {
  const double theta = resolve_theta(c);
  TrialResult result;
  if (c.samples > 0) {
    result = run_rfe({c.samples, grid_size(c.epsilon), theta, c.noise, c.seed});
  } else {
    result = estimate_phase(c.epsilon, c.delta, c.noise, theta, c.seed);
  }
  std::ostringstream os;
  if (c.format == "csv") {
    write_spectrum_csv(os, result.spectrum.coefficients);
  } else {
    Json j;
    j["config"] = config_to_json(c);
    j["theta"] = theta;
    j["error"] = phase_error(result.theta_hat, theta, DistanceMode::kLine);
    j["result"] = to_json(result);
    os << j.dump(2) << '\n';
  }
  return os.str();
}

std::string spectrum_command(const CliConfig& c) {
  const double theta = resolve_theta(c);
  const std::int64_t samples =
      c.samples > 0 ? c.samples : plan_resources({c.epsilon, c.delta, c.noise}).samples;
  const TrialResult result =
      run_rfe({samples, grid_size(c.epsilon), theta, c.noise, c.seed});
  std::ostringstream os;
  if (c.format == "csv") {
    write_spectrum_csv(os, result.spectrum.coefficients);
  } else {
    Json j;
    j["config"] = config_to_json(c);
    j["theta"] = theta;
    j["result"] = to_json(result);
    os << j.dump(2) << '\n';
  }
  return os.str();
}

std::string bounds_command(const CliConfig& c) {
  const BoundsReport report = plan_resources({c.epsilon, c.delta, c.noise});
  Json j = to_json(report);
  j["config"] = config_to_json(c);
  return j.dump(2) + "\n";
}

std::string sweep_command(const CliConfig& c) {
  SweepOptions s;
  s.family = parse_family(c.family);
  s.grid = c.grid;
  s.epsilon = c.epsilon;
  s.delta = c.delta;
  if (const auto* ban = std::get_if<noise::Ban>(&c.noise)) s.strategy = ban->strategy;
  s.campaign.trials = c.trials;
  s.campaign.theta = campaign_theta(c);
  s.campaign.master_seed = c.seed;
  s.campaign.workers = c.workers;
  s.campaign.distance =
      c.distance == "circular" ? DistanceMode::kCircular : DistanceMode::kLine;
  const std::vector<SweepRow> rows = noise_sweep(s);
  std::ostringstream os;
  if (c.format == "csv") {
    write_sweep_csv(os, rows);
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"parameter", r.parameter},
                     {"achievable", r.achievable},
                     {"M_predicted", r.samples_predicted},
                     {"K", r.grid_size},
                     {"implied_max_eta", r.implied_max_eta},
                     {"stats", to_json(r.stats)}});
    }
    Json j;
    j["config"] = config_to_json(c);
    j["rows"] = std::move(arr);
    os << j.dump(2) << '\n';
  }
  return os.str();
}

int verify_command(const CliConfig& c, std::ostream& out) {
  CheckOptions options;
  options.workers = c.workers;
  options.master_seed = c.seed;
  const std::vector<CriterionResult> results = run_suite(c.suite, options);
  std::ostringstream os;
  if (c.format == "json") {
    Json arr = Json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id},
                     {"title", r.title},
                     {"passed", r.passed},
                     {"report_only", r.report_only},
                     {"detail", r.detail}});
    }
    Json j;
    j["config"] = config_to_json(c);
    j["results"] = std::move(arr);
    j["all_passed"] = all_passed(results);
    os << j.dump(2) << '\n';
  } else {
    for (const auto& r : results) os << format_line(r) << '\n';
  }
  emit(c, os.str(), out);
  return all_passed(results) ? kExitOk : kExitCheckFailed;
}

}  // namespace

Json config_to_json(const CliConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["epsilon"] = c.epsilon;
  j["delta"] = c.delta;
  if (c.theta) {
    j["theta"] = *c.theta;
  } else {
    j["theta"] = "random";
  }
  j["noise"] = noise_to_json(c.noise);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["output"] = c.output;
  j["format"] = c.format;
  j["samples"] = c.samples;
  j["suite"] = c.suite;
  j["family"] = c.family;
  j["grid"] = c.grid;
  j["distance"] = c.distance;
  return j;
}

CliConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("config JSON must be an object");
  CliConfig c;
  try {
    c.subcommand = j.value("subcommand", c.subcommand);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.delta = j.value("delta", c.delta);
    if (j.contains("theta")) {
      const auto& t = j.at("theta");
      if (t.is_string()) {
        c.theta = parse_theta(t.get<std::string>());
      } else {
        c.theta = t.get<double>();
      }
    }
    if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.output = j.value("output", c.output);
    c.format = j.value("format", c.format);
    c.samples = j.value("samples", c.samples);
    c.suite = j.value("suite", c.suite);
    c.family = j.value("family", c.family);
    if (j.contains("grid")) c.grid = j.at("grid").get<std::vector<double>>();
    c.distance = j.value("distance", c.distance);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("config JSON: ") + e.what());
  }
  return c;
}

void validate_config(const CliConfig& c) {
  bool known = false;
  for (const char* s : kSubcommands) known = known || c.subcommand == s;
  if (!known) throw InvalidInput("unknown subcommand \"" + c.subcommand + "\"");
  if (!std::isfinite(c.epsilon) || c.epsilon <= 0.0) {
    throw InvalidInput("--epsilon must be > 0");
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw InvalidInput("--delta must lie in (0, 1)");
  if (c.theta && !std::isfinite(*c.theta)) throw InvalidInput("--theta must be finite");
  if (c.trials < 1) throw InvalidInput("--trials must be >= 1");
  if (c.workers < 0) throw InvalidInput("--workers must be >= 0");
  if (c.samples < 0) throw InvalidInput("--samples must be >= 0");
  if (c.format != "json" && c.format != "csv" && c.format != "text") {
    throw InvalidInput("--format must be json or csv");
  }
  if (c.format == "text" && c.subcommand != "verify") {
    throw InvalidInput("--format text is only available for verify");
  }
  if (c.format == "csv" && (c.subcommand == "bounds" || c.subcommand == "verify")) {
    throw InvalidInput("--format csv is not available for " + c.subcommand);
  }
  if (c.distance != "line" && c.distance != "circular") {
    throw InvalidInput("--distance must be line or circular");
  }
  validate(c.noise);
  if (c.subcommand == "spectrum" && c.epsilon >= kPi / 2.0 && c.samples == 0) {
    throw InvalidInput("spectrum with epsilon >= pi/2 needs --samples");
  }
  if (c.subcommand == "sweep") {
    parse_family(c.family);
    if (c.grid.empty()) throw InvalidInput("sweep needs --grid a,b,c");
  }
  if (c.subcommand == "verify") {
    bool found = false;
    for (const auto& s : suite_names()) found = found || s == c.suite;
    if (!found) throw InvalidInput("unknown --suite \"" + c.suite + "\"");
  }
}

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Randomized Fourier phase estimation: simulator, bounds and checks",
               "rfe"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  double epsilon = 0.1;
  double delta = 0.1;
  std::string theta;
  std::string noise_text;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string output;
  std::string format;
  std::int64_t samples = 0;
  std::string suite;
  std::string family;
  std::string grid;
  std::string distance;
  std::string config_path;

  auto* o_eps = app.add_option("--epsilon", epsilon, "target accuracy (radians)");
  auto* o_delta = app.add_option("--delta", delta, "failure probability");
  auto* o_theta = app.add_option("--theta", theta, "true phase, or \"random\"");
  auto* o_noise = app.add_option("--noise", noise_text, "noise model JSON object");
  auto* o_trials = app.add_option("--trials", trials, "Monte Carlo trials");
  auto* o_seed = app.add_option("--seed", seed, "master seed (RFE_SEED overrides)");
  auto* o_workers = app.add_option("--workers", workers, "worker threads, 0 = all cores");
  auto* o_output = app.add_option("--output", output, "output path (default stdout)");
  auto* o_format = app.add_option("--format", format, "json | csv");
  auto* o_samples = app.add_option("--samples", samples, "sample count M override");
  auto* o_suite = app.add_option("--suite", suite, "verify suite name");
  auto* o_family = app.add_option("--family", family, "sweep noise family");
  auto* o_grid = app.add_option("--grid", grid, "sweep parameter values a,b,c");
  auto* o_distance = app.add_option("--distance", distance, "line | circular");
  app.add_option("--config", config_path, "replay a JSON config emitted earlier");

  for (const char* name : kSubcommands) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "rfe: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    CliConfig c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InvalidInput("cannot read --config " + config_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error&) {
        throw InvalidInput("malformed JSON in --config " + config_path);
      }
      if (j.contains("config")) j = j.at("config");
      c = config_from_json(j);
    }
    c.subcommand = app.get_subcommands().front()->get_name();
    if (o_eps->count()) c.epsilon = epsilon;
    if (o_delta->count()) c.delta = delta;
    if (o_theta->count()) c.theta = parse_theta(theta);
    if (o_noise->count()) c.noise = parse_noise(noise_text);
    if (o_trials->count()) c.trials = trials;
    if (o_seed->count()) c.seed = seed;
    if (o_workers->count()) c.workers = workers;
    if (o_output->count()) c.output = output;
    if (o_format->count()) c.format = format;
    if (o_samples->count()) c.samples = samples;
    if (o_suite->count()) c.suite = suite;
    if (o_family->count()) c.family = family;
    if (o_grid->count()) c.grid = parse_grid(grid);
    if (o_distance->count()) c.distance = distance;
    if (const char* env = std::getenv("RFE_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        c.seed = std::stoull(env, &used);
        if (env[used] != '\0') throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw InvalidInput(std::string("RFE_SEED must be an unsigned integer, got \"") +
                           env + "\"");
      }
    }
    if (c.format.empty()) c.format = default_format(c.subcommand);
    validate_config(c);

    if (c.subcommand == "verify") return verify_command(c, out);
    std::string body;
    if (c.subcommand == "run") body = run_command(c);
    if (c.subcommand == "spectrum") body = spectrum_command(c);
    if (c.subcommand == "bounds") body = bounds_command(c);
    if (c.subcommand == "sweep") body = sweep_command(c);
    emit(c, body, out);
    return kExitOk;
  } catch (const InvalidInput& e) {
    err << "rfe: invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const BoundsUnachievable& e) {
    err << "rfe: unachievable: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace rfe
