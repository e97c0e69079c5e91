#include "rfe/noise.h"

#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "rfe/errors.h"
#include "rfe/spectrum.h"

namespace rfe {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double sign(double v) { return (v > 0.0) - (v < 0.0); }

void require_finite_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidInput(std::string(what) + " must be finite and >= 0");
  }
}

void require_positive(double v, const char* what) {
  // +inf is allowed for T2: it is the noiseless limit.
  if (std::isnan(v) || v <= 0.0) {
    throw InvalidInput(std::string(what) + " must be > 0");
  }
}

const DeviationTable& require_table(const DeviationTable* table,
                                    std::int64_t k, const char* model) {
  if (table == nullptr) {
    throw InvalidInput(std::string(model) +
                       " noise needs a per-run deviation table");
  }
  if (k < 0 || static_cast<std::size_t>(k) >= table->size() ||
      table->eta2.size() != table->eta1.size()) {
    throw InvalidInput(std::string(model) +
                       " deviation table does not cover time index " +
                       std::to_string(k));
  }
  return *table;
}

}  // namespace

std::string_view kind_name(const NoiseModel& model) {
  return std::visit(
      Overloaded{
          [](const noise::Ideal&) { return std::string_view("ideal"); },
          [](const noise::Ban&) { return std::string_view("ban"); },
          [](const noise::Gaussian&) { return std::string_view("gaussian"); },
          [](const noise::GaussianLinear&) {
            return std::string_view("gaussian_linear");
          },
          [](const noise::Dephasing&) { return std::string_view("dephasing"); },
          [](const noise::HighCoherence&) {
            return std::string_view("high_coherence");
          },
      },
      model);
}

std::string_view strategy_name(const AdversaryStrategy& strategy) {
  return std::visit(
      Overloaded{
          [](const adversary::Zero&) { return std::string_view("zero"); },
          [](const adversary::ConstantPlus&) {
            return std::string_view("constant_plus");
          },
          [](const adversary::ConstantMinus&) {
            return std::string_view("constant_minus");
          },
          [](const adversary::SignFlip&) {
            return std::string_view("sign_flip");
          },
          [](const adversary::Custom&) { return std::string_view("custom"); },
      },
      strategy);
}

void validate(const NoiseModel& model) {
  std::visit(
      Overloaded{
          [](const noise::Ideal&) {},
          [](const noise::Ban& m) {
            require_finite_nonnegative(m.eta_bar, "eta_bar");
            if (const auto* custom = std::get_if<adversary::Custom>(&m.strategy)) {
              const auto& t = custom->table;
              if (t.eta1.size() != t.eta2.size()) {
                throw InvalidInput("custom deviation table: eta1 and eta2 differ in length");
              }
              for (std::size_t k = 0; k < t.size(); ++k) {
                if (!(std::fabs(t.eta1[k]) <= m.eta_bar) ||
                    !(std::fabs(t.eta2[k]) <= m.eta_bar)) {
                  throw InvalidInput("custom deviation table leaves [-eta_bar, eta_bar] at k = " +
                                     std::to_string(k));
                }
              }
            }
          },
          [](const noise::Gaussian& m) { require_finite_nonnegative(m.sigma, "sigma"); },
          [](const noise::GaussianLinear& m) {
            require_finite_nonnegative(m.sigma, "sigma");
          },
          [](const noise::Dephasing& m) { require_positive(m.t2, "t2"); },
          [](const noise::HighCoherence& m) { require_positive(m.t2, "t2"); },
      },
      model);
}

bool needs_run_noise(const NoiseModel& model) {
  return std::holds_alternative<noise::Gaussian>(model) ||
         std::holds_alternative<noise::GaussianLinear>(model);
}

Bias bias(const NoiseModel& model, double theta, std::int64_t k,
          const DeviationTable* run_noise) {
  if (k < 0) throw InvalidInput("time index k must be >= 0");
  const double phase = static_cast<double>(k) * theta;
  const double cx = std::cos(phase);
  const double sy = std::sin(phase);
  return std::visit(
      Overloaded{
          [&](const noise::Ideal&) { return Bias{cx, sy}; },
          [&](const noise::Ban& m) {
            return std::visit(
                Overloaded{
                    [&](const adversary::Zero&) { return Bias{cx, sy}; },
                    [&](const adversary::ConstantPlus&) {
                      return Bias{cx + m.eta_bar, sy + m.eta_bar};
                    },
                    [&](const adversary::ConstantMinus&) {
                      return Bias{cx - m.eta_bar, sy - m.eta_bar};
                    },
                    [&](const adversary::SignFlip&) {
                      return Bias{cx - m.eta_bar * sign(cx),
                                  sy - m.eta_bar * sign(sy)};
                    },
                    [&](const adversary::Custom& c) {
                      const auto& t = require_table(&c.table, k, "custom BAN");
                      const auto i = static_cast<std::size_t>(k);
                      return Bias{cx + t.eta1[i], sy + t.eta2[i]};
                    },
                },
                m.strategy);
          },
          [&](const noise::Gaussian&) {
            const auto& t = require_table(run_noise, k, "gaussian");
            const auto i = static_cast<std::size_t>(k);
            return Bias{cx + t.eta1[i], sy + t.eta2[i]};
          },
          [&](const noise::GaussianLinear&) {
            const auto& t = require_table(run_noise, k, "gaussian_linear");
            const auto i = static_cast<std::size_t>(k);
            return Bias{cx + t.eta1[i], sy + t.eta2[i]};
          },
          [&](const noise::Dephasing& m) {
            const double decay = std::exp(-static_cast<double>(k) / m.t2);
            return Bias{decay * cx, decay * sy};
          },
          [&](const noise::HighCoherence& m) {
            const double drift = static_cast<double>(k) / m.t2;
            return Bias{cx + drift, sy + drift};
          },
      },
      model);
}

DeviationTable draw_gaussian_run_noise(double sigma, int grid_size, Rng& rng,
                                       bool linear) {
  require_finite_nonnegative(sigma, "sigma");
  if (grid_size < 1) throw InvalidInput("grid size K must be >= 1");
  const auto n = static_cast<std::size_t>(grid_size);
  DeviationTable table{std::vector<double>(n), std::vector<double>(n)};
  std::normal_distribution<double> normal(0.0, 1.0);
  auto scale = [&](std::size_t k) {
    return linear ? static_cast<double>(k) * sigma : sigma;
  };
  for (std::size_t k = 0; k < n; ++k) table.eta1[k] = scale(k) * normal(rng);
  for (std::size_t k = 0; k < n; ++k) table.eta2[k] = scale(k) * normal(rng);
  return table;
}

std::optional<DeviationTable> draw_run_noise(const NoiseModel& model,
                                             int grid_size, Rng& rng) {
  if (const auto* g = std::get_if<noise::Gaussian>(&model)) {
    return draw_gaussian_run_noise(g->sigma, grid_size, rng, false);
  }
  if (const auto* g = std::get_if<noise::GaussianLinear>(&model)) {
    return draw_gaussian_run_noise(g->sigma, grid_size, rng, true);
  }
  return std::nullopt;
}

DeviationTable implied_deviations(const NoiseModel& model, double theta,
                                  int grid_size,
                                  const DeviationTable* run_noise) {
  const auto n = static_cast<std::size_t>(grid_size);
  DeviationTable out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const Bias b = bias(model, theta, static_cast<std::int64_t>(k), run_noise);
    const double phase = static_cast<double>(k) * theta;
    out.eta1[k] = b.x - std::cos(phase);
    out.eta2[k] = b.y - std::sin(phase);
  }
  return out;
}

double ban_threshold() { return 2.0 * std::sqrt(2.0) / (9.0 * kPi); }

double dephasing_ratio_threshold_paper() {
  return -std::log(0.5 - ban_threshold());
}

double dephasing_ratio_threshold_derived() {
  // Worst case |cos k theta| = 1 in |(e^{-x} - 1) cos(k theta) / 2|.
  const double target = ban_threshold();
  auto f = [target](double x) { return 0.5 * (1.0 - std::exp(-x)) - target; };
  const auto [lo, hi] = boost::math::tools::bisect(
      f, 0.0, 10.0, boost::math::tools::eps_tolerance<double>(50));
  return 0.5 * (lo + hi);
}

}  // namespace rfe
