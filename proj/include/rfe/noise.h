#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "rfe/random.h"

namespace rfe {

// Per-time deviations of the Hadamard-test biases, indexed by k.
struct DeviationTable {
  std::vector<double> eta1;
  std::vector<double> eta2;

  std::size_t size() const { return eta1.size(); }
  bool operator==(const DeviationTable&) const = default;
};

namespace adversary {

struct Zero {
  bool operator==(const Zero&) const = default;
};
struct ConstantPlus {
  bool operator==(const ConstantPlus&) const = default;
};
struct ConstantMinus {
  bool operator==(const ConstantMinus&) const = default;
};
// eta1_k = -eta_bar sign(cos k theta), eta2_k = -eta_bar sign(sin k theta):
// pulls every bias toward zero, shrinking the signal.
struct SignFlip {
  bool operator==(const SignFlip&) const = default;
};
// A caller-supplied table; every entry must lie in [-eta_bar, eta_bar].
struct Custom {
  DeviationTable table;
  bool operator==(const Custom&) const = default;
};

}  // namespace adversary

using AdversaryStrategy =
    std::variant<adversary::Zero, adversary::ConstantPlus,
                 adversary::ConstantMinus, adversary::SignFlip,
                 adversary::Custom>;

namespace noise {

struct Ideal {
  bool operator==(const Ideal&) const = default;
};
// Bounded adversarial noise.
struct Ban {
  double eta_bar = 0.0;
  AdversaryStrategy strategy = adversary::SignFlip{};
  bool operator==(const Ban&) const = default;
};
// eta ~ N(0, sigma^2), drawn once per run.
struct Gaussian {
  double sigma = 0.0;
  bool operator==(const Gaussian&) const = default;
};
// eta_k ~ N(0, (k sigma)^2), drawn once per run.
struct GaussianLinear {
  double sigma = 0.0;
  bool operator==(const GaussianLinear&) const = default;
};
// Bias decays as e^{-k/T2}. T2 is measured in c-U applications.
struct Dephasing {
  double t2 = 1.0;
  bool operator==(const Dephasing&) const = default;
};
// Linearised dephasing for K << T2: eta1_k = eta2_k = k / T2.
struct HighCoherence {
  double t2 = 1.0;
  bool operator==(const HighCoherence&) const = default;
};

}  // namespace noise

using NoiseModel =
    std::variant<noise::Ideal, noise::Ban, noise::Gaussian,
                 noise::GaussianLinear, noise::Dephasing, noise::HighCoherence>;

struct Bias {
  double x;  // E[c]
  double y;  // E[s]
};

std::string_view kind_name(const NoiseModel& model);
std::string_view strategy_name(const AdversaryStrategy& strategy);

// Throws InvalidInput for negative/non-finite parameters or a Custom table
// that leaves [-eta_bar, eta_bar].
void validate(const NoiseModel& model);

// True for models whose deviations are drawn once at the start of each run.
bool needs_run_noise(const NoiseModel& model);

// (cos k theta + eta1_k, sin k theta + eta2_k) for the model. Not clamped.
// Gaussian models read their deviations from run_noise, which must cover k.
Bias bias(const NoiseModel& model, double theta, std::int64_t k,
          const DeviationTable* run_noise = nullptr);

// 2K independent normal draws (eta1 first, then eta2). With linear set,
// the standard deviation at time k is k sigma.
DeviationTable draw_gaussian_run_noise(double sigma, int grid_size, Rng& rng,
                                       bool linear = false);

// Draws the per-run table for stochastic models; nullopt otherwise.
std::optional<DeviationTable> draw_run_noise(const NoiseModel& model,
                                             int grid_size, Rng& rng);

// eta_k = bias - ideal bias, for k = 0..K-1.
DeviationTable implied_deviations(const NoiseModel& model, double theta,
                                  int grid_size,
                                  const DeviationTable* run_noise = nullptr);

// Largest |eta| the BAN analysis tolerates: 2 sqrt(2) / (9 pi).
double ban_threshold();

// Depth-to-T2 ratio bound in its stated form: -ln(1/2 - 2 sqrt(2)/(9 pi)) ~ 0.916.
double dephasing_ratio_threshold_paper();

// Root of (1 - e^{-x}) / 2 = ban_threshold(), found numerically.
// Analytically -ln(1 - 4 sqrt(2)/(9 pi)) ~ 0.2232; disagrees with the
// stated constant above and is reported alongside it.
double dephasing_ratio_threshold_derived();

}  // namespace rfe
