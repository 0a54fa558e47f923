// advlin: closed-form and Monte Carlo attack-rate experiments for linear
// classifiers on balanced Gaussian mixtures.
//
// Exit codes: 0 success, 2 invalid configuration or arguments, 3 solver
// failure, 1 anything else.

#include "advlin/experiments.hpp"
#include "advlin/geometry.hpp"

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
};

struct RatesArgs {
  double mu = 4.0;
  Eigen::Index d = 361;
  double sigma = 1.0;
  std::string layout = "axis";
  std::optional<double> eta;
  double eta_a = 0.3;
  double eta_s = 0.3;
  std::string p = "2";
  Eigen::Index samples = 0;
  std::uint64_t seed = 12345;
};

advlin::NormOrder parse_p(const std::string& text) {
  if (text == "inf") return advlin::NormOrder::inf();
  return advlin::NormOrder(std::stod(text));
}

advlin::MeanLayout parse_layout(const std::string& text) {
  if (text == "axis") return advlin::MeanLayout::axis;
  if (text == "uniform") return advlin::MeanLayout::uniform;
  throw std::invalid_argument("layout must be \"axis\" or \"uniform\"");
}

int run_scenario(advlin::Scenario scenario, const CommonArgs& args) {
  advlin::ExperimentConfig config = advlin::load_config(args.config_path);
  config.scenario = scenario;  // the subcommand is authoritative
  if (args.out) config.out = *args.out;
  if (args.seed) config.seed = *args.seed;
  if (args.replicates) config.replicates = *args.replicates;
  advlin::run(config);
  return 0;
}

int run_one_shot(const RatesArgs& args) {
  const double eta_a = args.eta ? *args.eta : args.eta_a;
  const double eta_s = args.eta ? *args.eta : args.eta_s;
  const advlin::RateReport report =
      advlin::one_shot_rates(args.mu, args.d, args.sigma, parse_layout(args.layout), eta_a,
                             eta_s, parse_p(args.p), args.samples, args.seed);
  nlohmann::json j = report;
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial and strong-adversarial rates for linear classifiers on "
               "balanced Gaussian mixtures"};
  app.require_subcommand(1);

  CommonArgs common;
  RatesArgs rates_args;

  const auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", common.config_path, "JSON experiment config");
    if (config_required) opt->required();
    cmd->add_option("--out", [&](const CLI::results_t& r) { common.out = r[0]; return true; },
                    "output directory (overrides config)");
    cmd->add_option("--seed",
                    [&](const CLI::results_t& r) { common.seed = std::stoull(r[0]); return true; },
                    "root seed (overrides config)");
    cmd->add_option("--replicates",
                    [&](const CLI::results_t& r) { common.replicates = std::stoi(r[0]); return true; },
                    "replicate count (overrides config)");
  };

  CLI::App* rates = app.add_subcommand("rates", "one-shot rate query (JSON to stdout), or a "
                                                "replicated Monte Carlo table with --config");
  add_common(rates, false);
  rates->add_option("--mu", rates_args.mu, "signal strength ||mu||");
  rates->add_option("--d", rates_args.d, "dimension");
  rates->add_option("--sigma", rates_args.sigma, "noise scale");
  rates->add_option("--layout", rates_args.layout, "mean layout: axis|uniform");
  rates->add_option("--eta", [&](const CLI::results_t& r) {
    rates_args.eta = std::stod(r[0]);
    return true;
  }, "sets both eta_a and eta_s");
  rates->add_option("--eta-a", rates_args.eta_a, "overall budget scale: epsilon = eta_a sqrt(d) sigma");
  rates->add_option("--eta-s", rates_args.eta_s, "signal cap scale: delta = eta_s ||mu||");
  rates->add_option("--p", rates_args.p, "norm order (number or \"inf\")");
  rates->add_option("--samples", rates_args.samples,
                    "Monte Carlo sample count; 0 means closed form");
  rates->add_option("--query-seed", rates_args.seed, "seed for --samples draws");

  for (const char* name : {"sweep", "figure2", "figure3", "figure4", "lp_noise", "image"}) {
    add_common(app.add_subcommand(name, std::string(name) + " scenario"), true);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub->get_name() == "rates" && common.config_path.empty()) {
      return run_one_shot(rates_args);
    }
    return run_scenario(advlin::scenario_from_name(sub->get_name()), common);
  } catch (const advlin::SolverError& e) {
    std::cerr << "advlin: solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "advlin: invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "advlin: invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "advlin: error: " << e.what() << "\n";
    return 1;
  }
}
