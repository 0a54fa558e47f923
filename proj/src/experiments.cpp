#include "advlin/experiments.hpp"

#include "advlin/csv.hpp"
#include "advlin/numerics.hpp"
#include "advlin/parallel.hpp"
#include "advlin/pgm.hpp"
#include "advlin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace advlin {

namespace {

namespace fs = std::filesystem;

std::vector<double> default_mu_grid() {
  std::vector<double> mus;
  for (int i = 1; i <= 10; ++i) mus.push_back(0.5 * i);
  return mus;
}

std::ofstream open_output(const ExperimentConfig& config, const std::string& filename) {
  fs::create_directories(config.out);
  const fs::path path = fs::path(config.out) / filename;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  return out;
}

LabeledDataset slice(const LabeledDataset& data, Eigen::Index start, Eigen::Index count) {
  LabeledDataset part;
  part.points = data.points.middleRows(start, count);
  part.labels.assign(data.labels.begin() + start, data.labels.begin() + start + count);
  part.seed = data.seed;
  return part;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double mean_of(const std::vector<double>& xs) { return mean_se(xs).mean; }

}  // namespace

Scenario scenario_from_name(const std::string& name) {
  if (name == "rates") return Scenario::rates;
  if (name == "sweep") return Scenario::sweep;
  if (name == "figure2") return Scenario::figure2;
  if (name == "figure3") return Scenario::figure3;
  if (name == "figure4") return Scenario::figure4;
  if (name == "lp_noise") return Scenario::lp_noise;
  if (name == "image") return Scenario::image;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::rates: return "rates";
    case Scenario::sweep: return "sweep";
    case Scenario::figure2: return "figure2";
    case Scenario::figure3: return "figure3";
    case Scenario::figure4: return "figure4";
    case Scenario::lp_noise: return "lp_noise";
    case Scenario::image: return "image";
  }
  return "rates";
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("scenario")) c.scenario = scenario_from_name(j.at("scenario").get<std::string>());
    if (j.contains("mu")) c.mu = j.at("mu").get<double>();
    if (j.contains("d")) c.d = j.at("d").get<Eigen::Index>();
    if (j.contains("sigma")) c.sigma = j.at("sigma").get<double>();
    if (j.contains("mean_layout")) {
      const std::string layout = j.at("mean_layout").get<std::string>();
      if (layout == "axis") {
        c.mean_layout = MeanLayout::axis;
      } else if (layout == "uniform") {
        c.mean_layout = MeanLayout::uniform;
      } else {
        throw std::invalid_argument("mean_layout must be \"axis\" or \"uniform\"");
      }
    }
    if (j.contains("eta_a")) c.eta_a = j.at("eta_a").get<double>();
    if (j.contains("eta_s")) c.eta_s = j.at("eta_s").get<double>();
    if (j.contains("eta")) c.eta_a = c.eta_s = j.at("eta").get<double>();
    if (j.contains("p")) c.p = norm_order_from_json(j.at("p"));
    if (j.contains("n_train")) c.n_train = j.at("n_train").get<Eigen::Index>();
    if (j.contains("n_test")) c.n_test = j.at("n_test").get<Eigen::Index>();
    if (j.contains("replicates")) c.replicates = j.at("replicates").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("mu_values")) c.mu_values = j.at("mu_values").get<std::vector<double>>();
    if (j.contains("eta_values")) c.eta_values = j.at("eta_values").get<std::vector<double>>();
    if (j.contains("k")) c.k = j.at("k").get<Eigen::Index>();
    if (j.contains("n_noise")) c.n_noise = j.at("n_noise").get<Eigen::Index>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  if (!(c.mu > 0.0)) throw std::invalid_argument("config: mu must be positive");
  if (c.d < 1) throw std::invalid_argument("config: d must be >= 1");
  if (!(c.sigma > 0.0)) throw std::invalid_argument("config: sigma must be positive");
  if (c.eta_a < 0.0 || c.eta_s < 0.0) throw std::invalid_argument("config: eta values must be >= 0");
  if (c.n_train < 1 || c.n_test < 1) throw std::invalid_argument("config: sample sizes must be >= 1");
  if (c.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
  if (c.k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (c.n_noise < 1) throw std::invalid_argument("config: n_noise must be >= 1");
  for (double m : c.mu_values) {
    if (!(m > 0.0)) throw std::invalid_argument("config: mu_values must be positive");
  }
  for (double e : c.eta_values) {
    if (e < 0.0) throw std::invalid_argument("config: eta_values must be >= 0");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

GaussianMixtureSpec make_mixture(double mu, Eigen::Index d, double sigma, MeanLayout layout) {
  Vector mu_plus = Vector::Zero(d);
  if (layout == MeanLayout::axis) {
    mu_plus[0] = mu;
  } else {
    mu_plus.setConstant(mu / std::sqrt(static_cast<double>(d)));
  }
  return GaussianMixtureSpec(mu_plus, -mu_plus, sigma);
}

PerturbationBudget make_budget(const GaussianMixtureSpec& mix, double eta_a, double eta_s,
                               const NormOrder& p) {
  const double eps = eta_a * std::sqrt(static_cast<double>(mix.d())) * mix.sigma();
  const double delta = eta_s * mix.mu_norm();
  return PerturbationBudget(p, eps, delta);
}

std::vector<SweepCell> svm_rate_sweep(const std::vector<double>& etas,
                                      const std::vector<double>& mus, Eigen::Index d,
                                      double sigma, MeanLayout layout, Eigen::Index n_train,
                                      Eigen::Index n_test, int replicates, std::uint64_t seed) {
  const std::size_t n_mu = mus.size();
  const std::size_t n_eta = etas.size();
  const std::size_t jobs = n_mu * static_cast<std::size_t>(replicates);

  struct JobResult {
    std::vector<double> pm_f, perr_f, pserr_f;  // one entry per eta
    std::vector<double> pm_e, perr_e, pserr_e;
  };
  std::vector<JobResult> results(jobs);

  parallel_for(static_cast<std::int64_t>(jobs), [&](std::int64_t job) {
    const std::size_t mi = static_cast<std::size_t>(job) / replicates;
    const std::size_t rep = static_cast<std::size_t>(job) % replicates;
    const GaussianMixtureSpec mix = make_mixture(mus[mi], d, sigma, layout);
    const std::uint64_t data_seed = derive_stream(derive_stream(seed, mi), rep);

    const LabeledDataset full = sample(mix, n_train + n_test, data_seed);
    const LabeledDataset train = slice(full, 0, n_train);
    const LabeledDataset test = slice(full, n_train, n_test);

    SvmConfig cfg;
    cfg.seed = derive_stream(data_seed, 1);
    const LinearClassifier clf = train_svm(train, cfg).classifier;

    JobResult& out = results[job];
    out.pm_f.resize(n_eta);
    out.perr_f.resize(n_eta);
    out.pserr_f.resize(n_eta);
    out.pm_e.resize(n_eta);
    out.perr_e.resize(n_eta);
    out.pserr_e.resize(n_eta);
    for (std::size_t ei = 0; ei < n_eta; ++ei) {
      const PerturbationBudget budget = make_budget(mix, etas[ei], etas[ei], NormOrder(2.0));
      out.pm_f[ei] = misclassification_rate(clf, mix).value();
      out.perr_f[ei] = adversarial_error_rate(clf, mix, budget.epsilon()).value();
      out.pserr_f[ei] = strong_error_rate(clf, mix, budget.epsilon(), *budget.delta()).value();
      const RateReport emp = empirical_rates(clf, mix, budget, test);
      out.pm_e[ei] = emp.p_m.value();
      out.perr_e[ei] = emp.p_err.value();
      out.pserr_e[ei] = emp.p_s_err->value();
    }
  });

  std::vector<SweepCell> cells;
  cells.reserve(n_eta * n_mu);
  for (std::size_t ei = 0; ei < n_eta; ++ei) {
    for (std::size_t mi = 0; mi < n_mu; ++mi) {
      std::vector<double> pm_f, perr_f, pserr_f, pm_e, perr_e, pserr_e;
      for (int rep = 0; rep < replicates; ++rep) {
        const JobResult& jr = results[mi * replicates + rep];
        pm_f.push_back(jr.pm_f[ei]);
        perr_f.push_back(jr.perr_f[ei]);
        pserr_f.push_back(jr.pserr_f[ei]);
        pm_e.push_back(jr.pm_e[ei]);
        perr_e.push_back(jr.perr_e[ei]);
        pserr_e.push_back(jr.pserr_e[ei]);
      }
      SweepCell cell;
      cell.eta = etas[ei];
      cell.mu = mus[mi];
      cell.replicates = replicates;
      cell.p_m_formula = mean_of(pm_f);
      cell.p_err_formula = mean_of(perr_f);
      cell.p_s_err_formula = mean_of(pserr_f);
      const MeanSe pm = mean_se(pm_e), perr = mean_se(perr_e), pserr = mean_se(pserr_e);
      cell.p_m_empirical = pm.mean;
      cell.p_m_se = pm.se;
      cell.p_err_empirical = perr.mean;
      cell.p_err_se = perr.se;
      cell.p_s_err_empirical = pserr.mean;
      cell.p_s_err_se = pserr.se;
      cells.push_back(cell);
    }
  }
  return cells;
}

RateReport one_shot_rates(double mu, Eigen::Index d, double sigma, MeanLayout layout,
                          double eta_a, double eta_s, const NormOrder& p,
                          Eigen::Index mc_samples, std::uint64_t seed) {
  const GaussianMixtureSpec mix = make_mixture(mu, d, sigma, layout);
  const PerturbationBudget budget = make_budget(mix, eta_a, eta_s, p);
  const LinearClassifier bayes = bayes_classifier(mix);
  if (mc_samples > 0) return empirical_rates(bayes, mix, budget, mc_samples, seed);
  return closed_form_report(bayes, mix, budget);
}

namespace {

void run_rates(const ExperimentConfig& config) {
  const GaussianMixtureSpec mix = make_mixture(config.mu, config.d, config.sigma,
                                               config.mean_layout);
  const PerturbationBudget budget = make_budget(mix, config.eta_a, config.eta_s, config.p);
  const LinearClassifier bayes = bayes_classifier(mix);
  const RateReport formula = closed_form_report(bayes, mix, budget);

  std::vector<RateReport> mc(config.replicates,
                             RateReport{});
  parallel_for(config.replicates, [&](std::int64_t rep) {
    mc[rep] = empirical_rates(bayes, mix, budget, config.n_test, derive_stream(config.seed, rep));
  });

  std::ofstream out = open_output(config, "rates.csv");
  write_csv_row(out, {"replicate", "p_m_formula", "p_adv_formula", "p_err_formula",
                      "p_s_adv_formula", "p_s_err_formula", "p_m_mc", "p_adv_mc", "p_err_mc",
                      "p_s_adv_mc", "p_s_err_mc", "n_samples"});
  for (int rep = 0; rep < config.replicates; ++rep) {
    const RateReport& r = mc[rep];
    write_csv_row(out, {std::to_string(rep), fmt17(formula.p_m), fmt17(formula.p_adv),
                        fmt17(formula.p_err), fmt17(*formula.p_s_adv), fmt17(*formula.p_s_err),
                        fmt17(r.p_m), fmt17(r.p_adv), fmt17(r.p_err), fmt17(*r.p_s_adv),
                        fmt17(*r.p_s_err), std::to_string(*r.n_samples)});
  }
}

void run_sweep(const ExperimentConfig& config) {
  const std::vector<double> mus = config.mu_values.empty() ? default_mu_grid() : config.mu_values;
  const std::vector<double> etas =
      config.eta_values.empty() ? std::vector<double>{config.eta_a} : config.eta_values;

  struct Cell {
    RateReport formula;
    double pm = 0.0, perr = 0.0, pserr = 0.0;
  };
  std::vector<Cell> cells(mus.size() * etas.size());
  parallel_for(static_cast<std::int64_t>(cells.size()), [&](std::int64_t idx) {
    const std::size_t ei = static_cast<std::size_t>(idx) / mus.size();
    const std::size_t mi = static_cast<std::size_t>(idx) % mus.size();
    const GaussianMixtureSpec mix = make_mixture(mus[mi], config.d, config.sigma,
                                                 config.mean_layout);
    const PerturbationBudget budget = make_budget(mix, etas[ei], etas[ei], config.p);
    const LinearClassifier bayes = bayes_classifier(mix);
    Cell& cell = cells[idx];
    cell.formula = closed_form_report(bayes, mix, budget);
    std::vector<double> pm, perr, pserr;
    for (int rep = 0; rep < config.replicates; ++rep) {
      const RateReport r = empirical_rates(bayes, mix, budget, config.n_test,
                                           derive_stream(derive_stream(config.seed, idx), rep));
      pm.push_back(r.p_m);
      perr.push_back(r.p_err);
      pserr.push_back(*r.p_s_err);
    }
    cell.pm = mean_of(pm);
    cell.perr = mean_of(perr);
    cell.pserr = mean_of(pserr);
  });

  std::ofstream out = open_output(config, "sweep.csv");
  write_csv_row(out, {"eta", "mu", "p_m_formula", "p_err_formula", "p_s_err_formula",
                      "p_m_empirical", "p_err_empirical", "p_s_err_empirical"});
  for (std::size_t ei = 0; ei < etas.size(); ++ei) {
    for (std::size_t mi = 0; mi < mus.size(); ++mi) {
      const Cell& cell = cells[ei * mus.size() + mi];
      write_csv_row(out, {fmt17(etas[ei]), fmt17(mus[mi]), fmt17(cell.formula.p_m),
                          fmt17(cell.formula.p_err), fmt17(*cell.formula.p_s_err),
                          fmt17(cell.pm), fmt17(cell.perr), fmt17(cell.pserr)});
    }
  }
}

void run_figure2(const ExperimentConfig& config) {
  const std::vector<double> mus = config.mu_values.empty() ? default_mu_grid() : config.mu_values;
  const std::vector<SweepCell> cells =
      svm_rate_sweep({config.eta_a}, mus, config.d, config.sigma, config.mean_layout,
                     config.n_train, config.n_test, config.replicates, config.seed);

  std::ofstream out = open_output(config, "figure2.csv");
  write_csv_row(out, {"eta", "mu", "replicates", "p_m_formula", "p_m_empirical", "p_m_se",
                      "p_err_formula", "p_err_empirical", "p_err_se", "p_s_err_formula",
                      "p_s_err_empirical", "p_s_err_se"});
  for (const SweepCell& c : cells) {
    write_csv_row(out, {fmt17(c.eta), fmt17(c.mu), std::to_string(c.replicates),
                        fmt17(c.p_m_formula), fmt17(c.p_m_empirical), fmt17(c.p_m_se),
                        fmt17(c.p_err_formula), fmt17(c.p_err_empirical), fmt17(c.p_err_se),
                        fmt17(c.p_s_err_formula), fmt17(c.p_s_err_empirical),
                        fmt17(c.p_s_err_se)});
  }
}

void run_figure3(const ExperimentConfig& config) {
  const std::vector<double> mus = config.mu_values.empty() ? default_mu_grid() : config.mu_values;
  const double eta = config.eta_a;

  std::ofstream out = open_output(config, "figure3.csv");
  write_csv_row(out, {"panel", "mu", "cos_theta", "theta", "p_m_formula", "p_err_formula",
                      "p_s_err_formula", "p_m_empirical", "p_err_empirical",
                      "p_s_err_empirical"});

  // trained SVM versus its large-sample angle approximation
  const std::vector<SweepCell> svm_cells =
      svm_rate_sweep({eta}, mus, config.d, config.sigma, config.mean_layout, config.n_train,
                     config.n_test, config.replicates, config.seed);
  for (std::size_t mi = 0; mi < mus.size(); ++mi) {
    const GaussianMixtureSpec mix = make_mixture(mus[mi], config.d, config.sigma,
                                                 config.mean_layout);
    const PerturbationBudget budget = make_budget(mix, eta, eta, NormOrder(2.0));
    const AsymptoticAngle angle =
        asymptotic_svm_angle({config.n_train, config.d, mus[mi], config.sigma});
    const RateReport approx = small_bias_rates(mix, angle.theta, budget.epsilon(),
                                               *budget.delta());
    const SweepCell& cell = svm_cells[mi];
    write_csv_row(out, {"svm_asymptotic", fmt17(mus[mi]), fmt17(std::cos(angle.theta)),
                        fmt17(angle.theta), fmt17(approx.p_m), fmt17(approx.p_err),
                        fmt17(*approx.p_s_err), fmt17(cell.p_m_empirical),
                        fmt17(cell.p_err_empirical), fmt17(cell.p_s_err_empirical)});
  }

  // ideal Bayes curve
  for (std::size_t mi = 0; mi < mus.size(); ++mi) {
    const GaussianMixtureSpec mix = make_mixture(mus[mi], config.d, config.sigma,
                                                 config.mean_layout);
    const PerturbationBudget budget = make_budget(mix, eta, eta, NormOrder(2.0));
    const RateReport formula = bayes_rates(mix, budget.epsilon(), *budget.delta());
    const RateReport emp =
        empirical_rates(bayes_classifier(mix), mix, budget,
                        config.n_test * static_cast<Eigen::Index>(config.replicates),
                        derive_stream(config.seed, 1000 + mi));
    write_csv_row(out, {"bayes", fmt17(mus[mi]), fmt17(1.0), fmt17(0.0), fmt17(formula.p_m),
                        fmt17(formula.p_err), fmt17(*formula.p_s_err), fmt17(emp.p_m),
                        fmt17(emp.p_err), fmt17(*emp.p_s_err)});
  }

  // unbiased classifier as a function of the deflection angle, at fixed mu
  const GaussianMixtureSpec mix = make_mixture(config.mu, config.d, config.sigma,
                                               config.mean_layout);
  const PerturbationBudget budget = make_budget(mix, eta, eta, NormOrder(2.0));
  for (int i = 0; i <= 50; ++i) {
    const double c = static_cast<double>(i) / 50.0;
    const double theta = std::acos(std::min(c, 1.0));
    const RateReport formula = small_bias_rates(mix, theta, budget.epsilon(), *budget.delta());
    write_csv_row(out, {"cos_theta", fmt17(config.mu), fmt17(c), fmt17(theta),
                        fmt17(formula.p_m), fmt17(formula.p_err), fmt17(*formula.p_s_err), "",
                        "", ""});
  }
}

void run_figure4(const ExperimentConfig& config) {
  const std::vector<double> mus = config.mu_values.empty() ? default_mu_grid() : config.mu_values;
  const double eta = config.eta_a;
  if (config.k > config.d) throw std::invalid_argument("config: k must not exceed d");

  struct Rep {
    double svm_f = 0.0, svm_e = 0.0;
    double sp_f = 0.0, sp_e = 0.0;
    double id_f = 0.0, id_e = 0.0;
  };
  const std::size_t jobs = mus.size() * static_cast<std::size_t>(config.replicates);
  std::vector<Rep> reps(jobs);
  parallel_for(static_cast<std::int64_t>(jobs), [&](std::int64_t job) {
    const std::size_t mi = static_cast<std::size_t>(job) / config.replicates;
    const std::size_t rep = static_cast<std::size_t>(job) % config.replicates;
    const GaussianMixtureSpec mix = make_mixture(mus[mi], config.d, config.sigma,
                                                 config.mean_layout);
    const PerturbationBudget budget = make_budget(mix, eta, eta, NormOrder(2.0));
    const std::uint64_t data_seed = derive_stream(derive_stream(config.seed, mi), rep);
    const LabeledDataset full = sample(mix, config.n_train + config.n_test, data_seed);
    const LabeledDataset train = slice(full, 0, config.n_train);
    const LabeledDataset test = slice(full, config.n_train, config.n_test);

    SvmConfig cfg;
    cfg.seed = derive_stream(data_seed, 1);
    const LinearClassifier svm = train_svm(train, cfg).classifier;
    const LinearClassifier sparse = sparsify(svm, config.k);
    const LinearClassifier bayes = bayes_classifier(mix);

    Rep& r = reps[job];
    const double eps = budget.epsilon(), delta = *budget.delta();
    r.svm_f = strong_error_rate(svm, mix, eps, delta);
    r.sp_f = strong_error_rate(sparse, mix, eps, delta);
    r.id_f = strong_error_rate(bayes, mix, eps, delta);
    r.svm_e = *empirical_rates(svm, mix, budget, test).p_s_err;
    r.sp_e = *empirical_rates(sparse, mix, budget, test).p_s_err;
    r.id_e = *empirical_rates(bayes, mix, budget, test).p_s_err;
  });

  std::ofstream out = open_output(config, "figure4.csv");
  write_csv_row(out, {"mean_layout", "k", "eta", "mu", "replicates", "p_s_err_svm_formula",
                      "p_s_err_svm_empirical", "p_s_err_sparse_formula",
                      "p_s_err_sparse_empirical", "p_s_err_bayes_formula",
                      "p_s_err_bayes_empirical"});
  const std::string layout = config.mean_layout == MeanLayout::axis ? "axis" : "uniform";
  for (std::size_t mi = 0; mi < mus.size(); ++mi) {
    std::vector<double> svm_f, svm_e, sp_f, sp_e, id_f, id_e;
    for (int rep = 0; rep < config.replicates; ++rep) {
      const Rep& r = reps[mi * config.replicates + rep];
      svm_f.push_back(r.svm_f);
      svm_e.push_back(r.svm_e);
      sp_f.push_back(r.sp_f);
      sp_e.push_back(r.sp_e);
      id_f.push_back(r.id_f);
      id_e.push_back(r.id_e);
    }
    write_csv_row(out, {layout, std::to_string(config.k), fmt17(eta), fmt17(mus[mi]),
                        std::to_string(config.replicates), fmt17(mean_of(svm_f)),
                        fmt17(mean_of(svm_e)), fmt17(mean_of(sp_f)), fmt17(mean_of(sp_e)),
                        fmt17(mean_of(id_f)), fmt17(mean_of(id_e))});
  }
}

void run_lp_noise(const ExperimentConfig& config) {
  std::ofstream out = open_output(config, "lp_noise.csv");
  write_csv_row(out, {"p", "d", "sigma", "n", "empirical", "expected", "ratio"});
  int row = 0;
  for (double p : {1.0, 2.0, 3.0}) {
    const double emp = empirical_lp_noise(p, config.d, config.sigma, config.n_noise,
                                          derive_stream(config.seed, row));
    const double expected = abs_moment(p) * static_cast<double>(config.d) *
                            std::pow(config.sigma, p);
    write_csv_row(out, {fmt17(p), std::to_string(config.d), fmt17(config.sigma),
                        std::to_string(config.n_noise), fmt17(emp), fmt17(expected),
                        fmt17(emp / expected)});
    ++row;
  }
  // the sup norm grows like sigma sqrt(log d); only the order is pinned down,
  // so report the ratio against that scale
  const Eigen::Index n_inf = std::min<Eigen::Index>(config.n_noise, 5000);
  for (Eigen::Index d : {Eigen::Index{100}, Eigen::Index{1000}, Eigen::Index{10000}}) {
    const double emp = empirical_linf_noise(d, config.sigma, n_inf,
                                            derive_stream(config.seed, row));
    const double expected = config.sigma * std::sqrt(std::log(static_cast<double>(d)));
    write_csv_row(out, {"inf", std::to_string(d), fmt17(config.sigma), std::to_string(n_inf),
                        fmt17(emp), fmt17(expected), fmt17(emp / expected)});
    ++row;
  }
}

void run_image(const ExperimentConfig& config) {
  if (config.d != 361) {
    throw std::invalid_argument("config: the image scenario requires d = 361 (19x19)");
  }
  const GaussianMixtureSpec mix = make_mixture(config.mu, config.d, config.sigma,
                                               config.mean_layout);
  const PerturbationBudget budget = make_budget(mix, config.eta_a, config.eta_s, NormOrder(2.0));
  const std::uint64_t data_seed = derive_stream(config.seed, 0);
  const LabeledDataset full = sample(mix, config.n_train + config.n_test, data_seed);
  const LabeledDataset train = slice(full, 0, config.n_train);
  const LabeledDataset test = slice(full, config.n_train, config.n_test);

  SvmConfig cfg;
  cfg.seed = derive_stream(data_seed, 1);
  const LinearClassifier clf = train_svm(train, cfg).classifier;

  // first '+' test point that admits a signal-capped attack; fall back to the
  // first correctly classified '+', then the first '+'
  Eigen::Index pick = -1, first_plus = -1, first_correct = -1;
  for (Eigen::Index i = 0; i < test.n(); ++i) {
    if (test.labels[i] != Label::plus) continue;
    if (first_plus < 0) first_plus = i;
    const PointStatus status = point_status(test.points.row(i), Label::plus, clf, mix, budget);
    if (first_correct < 0 && status != PointStatus::misclassified) first_correct = i;
    if (status == PointStatus::strong_adversarial) {
      pick = i;
      break;
    }
  }
  if (pick < 0) pick = first_correct >= 0 ? first_correct : first_plus;
  if (pick < 0) throw std::runtime_error("image: no '+' point in the test split");
  const Vector x = test.points.row(pick);

  const double flip = clf.decide(x) == Label::plus ? -1.0 : 1.0;
  const double eps = budget.epsilon();

  CounterRng rng = CounterRng::stream(config.seed, 99);
  Vector noise(x.size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = rng.next_normal();
  noise *= eps / noise.norm();

  const Vector v_adv = flip * eps * normal_direction(clf);
  const Vector v_strong = flip * strong_perturbation_l2(clf, mix, budget).direction;

  fs::create_directories(config.out);
  const Vector mu0 = mix.mu0();
  struct Entry {
    std::string kind;
    std::string file;
    Vector v;
  };
  const std::vector<Entry> entries = {{"clean", "clean.pgm", Vector::Zero(x.size())},
                                      {"random", "random.pgm", noise},
                                      {"adversarial", "adversarial.pgm", v_adv},
                                      {"strong_adversarial", "strong_adversarial.pgm", v_strong}};
  std::ofstream manifest = open_output(config, "image_manifest.csv");
  write_csv_row(manifest, {"kind", "file", "perturbation_l2", "signal_component", "flips"});
  for (const Entry& e : entries) {
    const Vector img = x + e.v;
    render_image(img, (fs::path(config.out) / e.file).string());
    const bool flips = clf.decide(img) != clf.decide(x);
    write_csv_row(manifest, {e.kind, e.file, fmt17(e.v.norm()), fmt17(e.v.dot(mu0)),
                             flips ? "1" : "0"});
  }
}

}  // namespace

void run(const ExperimentConfig& config) {
  switch (config.scenario) {
    case Scenario::rates: run_rates(config); break;
    case Scenario::sweep: run_sweep(config); break;
    case Scenario::figure2: run_figure2(config); break;
    case Scenario::figure3: run_figure3(config); break;
    case Scenario::figure4: run_figure4(config); break;
    case Scenario::lp_noise: run_lp_noise(config); break;
    case Scenario::image: run_image(config); break;
  }
}

}  // namespace advlin
