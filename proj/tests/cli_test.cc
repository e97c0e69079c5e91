#include "rfe/cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "rfe/errors.h"

namespace rfe {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rfe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rfe_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, BoundsExample) {
  const Invocation r = invoke({"bounds", "--epsilon", "0.1", "--delta", "0.1", "--noise",
                               R"({"kind":"ban","eta_bar":0.05})"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("M"), 12510);
  EXPECT_EQ(j.at("K"), 63);
}

TEST(Cli, SpectrumExample) {
  const Invocation r = invoke({"spectrum", "--epsilon", "0.08", "--samples", "80",
                               "--theta", "2.25", "--seed", "7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "j,re,im,abs");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 79);
}

TEST(Cli, RunReportsResult) {
  const Invocation r = invoke({"run", "--epsilon", "0.1", "--theta", "1.0", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("result").at("samples_used"), 3130);
  EXPECT_EQ(j.at("result").at("circuit_count"), 6260);
  EXPECT_LE(j.at("error").get<double>(), 0.1);
}

TEST(Cli, VerifyLemmasPasses) {
  const Invocation r = invoke({"verify", "--suite", "lemmas"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("[PASS]"), std::string::npos);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(invoke({"bounds", "--noise", R"({"kind":"ban","eta_bar":0.15})"}).code,
            kExitInvalidInput);
  EXPECT_EQ(invoke({"bounds", "--noise", "{not json"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"bounds", "--delta", "1.5"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"bounds", "--bogus", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"run", "--theta", "abc"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"sweep", "--family", "ban"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"bounds", "--format", "csv"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({}).code, kExitInvalidInput);
  const Invocation r = invoke({"bounds", "--noise", R"({"kind":"ban","eta_bar":0.15})"});
  EXPECT_NE(r.err.find("threshold"), std::string::npos);
}

TEST(Cli, SameSeedSameBytes) {
  const std::vector<std::string> args{"run", "--epsilon", "0.2", "--noise",
                                      R"({"kind":"gaussian","sigma":0.3})", "--seed", "11"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);

  const auto a = temp_path("sweep_a.csv");
  const auto b = temp_path("sweep_b.csv");
  std::vector<std::string> sweep{"sweep", "--family", "ban", "--grid", "0,0.03,0.06",
                                 "--epsilon", "0.3", "--trials", "12", "--seed", "4"};
  auto with = [&](const std::filesystem::path& p, const char* workers) {
    auto v = sweep;
    v.insert(v.end(), {"--workers", workers, "--output", p.string()});
    return v;
  };
  ASSERT_EQ(invoke(with(a, "1")).code, kExitOk);
  ASSERT_EQ(invoke(with(b, "3")).code, kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a).rfind("parameter,M_predicted,trials,successes,rate,ci_lo,ci_hi", 0), 0u);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, EnvironmentSeedOverridesFlag) {
  const std::string plain = invoke({"run", "--epsilon", "0.3", "--seed", "3"}).out;
  ScopedEnv env("RFE_SEED", "3");
  const std::string from_five = invoke({"run", "--epsilon", "0.3", "--seed", "5"}).out;
  const std::string from_nine = invoke({"run", "--epsilon", "0.3", "--seed", "9"}).out;
  EXPECT_EQ(from_five, from_nine);
  EXPECT_EQ(from_five, plain);
}

TEST(Cli, BadEnvironmentSeed) {
  ScopedEnv env("RFE_SEED", "12x");
  EXPECT_EQ(invoke({"bounds"}).code, kExitInvalidInput);
}

TEST(Cli, ConfigReplayReproducesOutput) {
  const Invocation first =
      invoke({"run", "--epsilon", "0.25", "--noise", R"({"kind":"dephasing","t2":900})",
              "--seed", "21"});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const auto path = temp_path("replay.json");
  {
    std::ofstream f(path, std::ios::binary);
    f << first.out;
  }
  const Invocation again = invoke({"run", "--config", path.string()});
  EXPECT_EQ(again.code, kExitOk) << again.err;
  EXPECT_EQ(again.out, first.out);
  std::filesystem::remove(path);
}

TEST(CliConfig, JsonRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* subs[] = {"run", "sweep", "bounds", "spectrum", "verify"};
  for (int i = 0; i < 200; ++i) {
    CliConfig c;
    c.subcommand = subs[rng() % 5];
    c.epsilon = 0.01 + u(rng);
    c.delta = 0.01 + 0.9 * u(rng);
    if (rng() & 1) c.theta = 3.0 * u(rng);
    c.noise = (rng() & 1) ? NoiseModel{noise::Ban{0.09 * u(rng), adversary::ConstantMinus{}}}
                          : NoiseModel{noise::Gaussian{u(rng)}};
    c.trials = 1 + static_cast<std::int64_t>(rng() % 1000);
    c.seed = rng();
    c.workers = static_cast<int>(rng() % 8);
    c.output = (rng() & 1) ? "" : "out.json";
    c.format = (rng() & 1) ? "json" : "csv";
    c.samples = static_cast<std::int64_t>(rng() % 5000);
    c.suite = "lemmas";
    c.family = "dephasing";
    for (int g = 0; g < static_cast<int>(rng() % 4); ++g) c.grid.push_back(u(rng));
    c.distance = (rng() & 1) ? "line" : "circular";
    EXPECT_EQ(config_from_json(config_to_json(c)), c);
    EXPECT_EQ(config_from_json(Json::parse(config_to_json(c).dump())), c);
  }
}

TEST(CliConfig, Validation) {
  CliConfig c;
  c.subcommand = "bounds";
  c.format = "json";
  EXPECT_NO_THROW(validate_config(c));
  c.distance = "manhattan";
  EXPECT_THROW(validate_config(c), InvalidInput);
  c.distance = "line";
  c.subcommand = "fly";
  EXPECT_THROW(validate_config(c), InvalidInput);
  EXPECT_THROW(config_from_json(Json::array()), InvalidInput);
  EXPECT_THROW(config_from_json(Json{{"trials", "many"}}), InvalidInput);
}

TEST(CliBinary, ExitCodes) {
  const std::string bin = RFE_CLI_PATH;
  const std::string quiet = " >/dev/null 2>&1";
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + quiet).c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("--help"), 0);
  EXPECT_EQ(status("bounds --epsilon 0.1"), 0);
  EXPECT_EQ(status("bounds --epsilon -1"), 2);
  EXPECT_EQ(status("frobnicate"), 2);
}

}  // namespace
}  // namespace rfe
