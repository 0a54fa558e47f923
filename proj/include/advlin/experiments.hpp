// Config-driven experiment scenarios: trained-SVM rate sweeps, closed-form
// comparison curves, the sparse-SVM defense, lp noise calibration, and the
// perturbed-image quartet. Every scenario writes seeded, byte-reproducible
// CSV (plus PGM files for `image`).
#pragma once

#include "advlin/learn.hpp"
#include "advlin/rates.hpp"
#include "advlin/simulate.hpp"
#include "advlin/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace advlin {

enum class Scenario { rates, sweep, figure2, figure3, figure4, lp_noise, image };

enum class MeanLayout { axis, uniform };

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);

struct ExperimentConfig {
  Scenario scenario = Scenario::rates;

  // mixture
  double mu = 4.0;
  Eigen::Index d = 361;
  double sigma = 1.0;
  MeanLayout mean_layout = MeanLayout::axis;

  // budget: epsilon = eta_a sqrt(d) sigma, delta = eta_s ||mu||; figure
  // scenarios equate both etas to eta_a.
  double eta_a = 0.3;
  double eta_s = 0.3;
  NormOrder p = NormOrder(2.0);

  // simulation
  Eigen::Index n_train = 4000;
  Eigen::Index n_test = 1000;
  int replicates = 50;
  std::uint64_t seed = 12345;
  std::string out = ".";

  // scenario extras
  std::vector<double> mu_values;   // grid for sweep/figure scenarios; defaults to 0.5..5
  std::vector<double> eta_values;  // grid for sweep; defaults to {eta_a}
  Eigen::Index k = 10;             // retained weights in figure4
  Eigen::Index n_noise = 100000;   // draws per lp_noise row
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// mu_plus = -mu_minus with ||mu|| = mu: concentrated on the first coordinate
// (axis) or spread uniformly (uniform).
GaussianMixtureSpec make_mixture(double mu, Eigen::Index d, double sigma, MeanLayout layout);

// epsilon = eta_a sqrt(d) sigma, delta = eta_s ||mu||.
PerturbationBudget make_budget(const GaussianMixtureSpec& mix, double eta_a, double eta_s,
                               const NormOrder& p);

// One (eta, mu) cell of the trained-SVM sweep: replicate-averaged closed-form
// and Monte Carlo rates with standard errors of the empirical means.
struct SweepCell {
  double eta = 0.0;
  double mu = 0.0;
  int replicates = 0;
  double p_m_formula = 0.0, p_m_empirical = 0.0, p_m_se = 0.0;
  double p_err_formula = 0.0, p_err_empirical = 0.0, p_err_se = 0.0;
  double p_s_err_formula = 0.0, p_s_err_empirical = 0.0, p_s_err_se = 0.0;
};

// For each mu: trains `replicates` SVMs on fresh train/test splits and scores
// every eta against the same trained classifiers (the budget does not enter
// training). Rows are ordered eta-major, mu-minor. Replicates run in
// parallel on streams keyed by (seed, cell, replicate).
std::vector<SweepCell> svm_rate_sweep(const std::vector<double>& etas,
                                      const std::vector<double>& mus, Eigen::Index d,
                                      double sigma, MeanLayout layout, Eigen::Index n_train,
                                      Eigen::Index n_test, int replicates, std::uint64_t seed);

// Single-query closed-form (or Monte Carlo, when mc_samples > 0) report for
// the Bayes classifier of the configured mixture.
RateReport one_shot_rates(double mu, Eigen::Index d, double sigma, MeanLayout layout,
                          double eta_a, double eta_s, const NormOrder& p,
                          Eigen::Index mc_samples, std::uint64_t seed);

// Runs the scenario and writes "<out>/<scenario>.csv" (plus PGMs for image).
// Throws std::invalid_argument for bad configs and SolverError when an
// optimizer fails to converge.
void run(const ExperimentConfig& config);

}  // namespace advlin
