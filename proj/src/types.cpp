#include "advlin/types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace advlin {

namespace {

constexpr double kRoundOffSlack = 1e-12;

Vector vector_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(field) + ": expected a JSON array");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& e : j) v[i++] = e.get<double>();
  return v;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

Probability::Probability(double value) {
  if (std::isnan(value)) throw std::domain_error("Probability: NaN");
  if (value < 0.0) {
    if (value < -kRoundOffSlack) {
      throw std::domain_error("Probability: " + std::to_string(value) +
                              " below 0 beyond round-off");
    }
    value = 0.0;
  } else if (value > 1.0) {
    if (value > 1.0 + kRoundOffSlack) {
      throw std::domain_error("Probability: " + std::to_string(value) +
                              " above 1 beyond round-off");
    }
    value = 1.0;
  }
  value_ = value;
}

NormOrder::NormOrder(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::domain_error("NormOrder: p must lie in [1, inf], got " + std::to_string(p));
  }
}

NormOrder NormOrder::inf() { return NormOrder(std::numeric_limits<double>::infinity()); }

bool NormOrder::is_inf() const { return std::isinf(p_); }

double NormOrder::q() const {
  if (is_inf()) return 1.0;
  if (p_ == 1.0) return std::numeric_limits<double>::infinity();
  return p_ / (p_ - 1.0);
}

double lp_norm(const Eigen::Ref<const Vector>& v, const NormOrder& p) {
  if (v.size() == 0) return 0.0;
  if (p.is_inf()) return v.cwiseAbs().maxCoeff();
  if (p.p() == 1.0) return v.cwiseAbs().sum();
  if (p.p() == 2.0) return v.norm();
  // scale by the largest magnitude so |v_i|^p cannot overflow
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  return m * std::pow((v.cwiseAbs() / m).array().pow(p.p()).sum(), 1.0 / p.p());
}

GaussianMixtureSpec::GaussianMixtureSpec(Vector mu_plus, Vector mu_minus, double sigma)
    : mu_plus_(std::move(mu_plus)), mu_minus_(std::move(mu_minus)), sigma_(sigma) {
  if (mu_plus_.size() == 0 || mu_plus_.size() != mu_minus_.size()) {
    throw std::invalid_argument("GaussianMixtureSpec: class means must share a positive dimension");
  }
  if (!mu_plus_.allFinite() || !mu_minus_.allFinite() || !std::isfinite(sigma_)) {
    throw std::domain_error("GaussianMixtureSpec: non-finite parameter");
  }
  if (sigma_ <= 0.0) {
    throw std::domain_error("GaussianMixtureSpec: sigma must be positive");
  }
  if ((mu_plus_ - mu_minus_).norm() == 0.0) {
    throw std::domain_error("GaussianMixtureSpec: degenerate signal, mu_plus == mu_minus");
  }
}

Vector GaussianMixtureSpec::mu0() const {
  Vector m = mu();
  return m / m.norm();
}

LinearClassifier::LinearClassifier(Vector w, double b) : w_(std::move(w)), b_(b) {
  if (w_.size() == 0 || !w_.allFinite() || !std::isfinite(b_)) {
    throw std::domain_error("LinearClassifier: non-finite parameter");
  }
  if (w_.norm() == 0.0) {
    throw std::domain_error("LinearClassifier: zero weight vector");
  }
}

double centered_bias(const LinearClassifier& clf, const GaussianMixtureSpec& mix) {
  if (clf.d() != mix.d()) {
    throw std::invalid_argument("centered_bias: classifier/mixture dimension mismatch");
  }
  return clf.w().dot(mix.mu_bar()) + clf.b();
}

double snr(const GaussianMixtureSpec& mix) { return mix.mu_norm() / mix.sigma(); }

PerturbationBudget::PerturbationBudget(NormOrder p, double epsilon, std::optional<double> delta)
    : p_(p), epsilon_(epsilon), delta_(delta) {
  if (!std::isfinite(epsilon_) || epsilon_ < 0.0) {
    throw std::domain_error("PerturbationBudget: epsilon must be finite and >= 0");
  }
  if (delta_ && (!std::isfinite(*delta_) || *delta_ < 0.0)) {
    throw std::domain_error("PerturbationBudget: delta must be finite and >= 0");
  }
}

void to_json(nlohmann::json& j, const GaussianMixtureSpec& mix) {
  j = nlohmann::json{{"mu_plus", vector_to_json(mix.mu_plus())},
                     {"mu_minus", vector_to_json(mix.mu_minus())},
                     {"sigma", mix.sigma()},
                     {"d", mix.d()}};
}

GaussianMixtureSpec mixture_from_json(const nlohmann::json& j) {
  GaussianMixtureSpec mix(vector_from_json(j.at("mu_plus"), "mu_plus"),
                          vector_from_json(j.at("mu_minus"), "mu_minus"),
                          j.at("sigma").get<double>());
  if (j.contains("d") && j.at("d").get<Eigen::Index>() != mix.d()) {
    throw std::invalid_argument("GaussianMixtureSpec: field d disagrees with vector length");
  }
  return mix;
}

void to_json(nlohmann::json& j, const LinearClassifier& clf) {
  j = nlohmann::json{{"w", vector_to_json(clf.w())}, {"b", clf.b()}};
}

LinearClassifier classifier_from_json(const nlohmann::json& j) {
  return LinearClassifier(vector_from_json(j.at("w"), "w"), j.at("b").get<double>());
}

void to_json(nlohmann::json& j, const PerturbationBudget& budget) {
  j = nlohmann::json::object();
  if (budget.p().is_inf()) {
    j["p"] = "inf";
  } else {
    j["p"] = budget.p().p();
  }
  j["epsilon"] = budget.epsilon();
  if (budget.delta()) j["delta"] = *budget.delta();
}

NormOrder norm_order_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return NormOrder::inf();
    throw std::invalid_argument("NormOrder: expected a number or \"inf\"");
  }
  return NormOrder(j.get<double>());
}

PerturbationBudget budget_from_json(const nlohmann::json& j) {
  std::optional<double> delta;
  if (j.contains("delta") && !j.at("delta").is_null()) delta = j.at("delta").get<double>();
  return PerturbationBudget(norm_order_from_json(j.at("p")), j.at("epsilon").get<double>(), delta);
}

void to_json(nlohmann::json& j, const RateReport& report) {
  j = nlohmann::json{{"p_m", report.p_m.value()},
                     {"p_adv", report.p_adv.value()},
                     {"p_err", report.p_err.value()},
                     {"provenance", report.provenance == Provenance::closed_form
                                        ? "closed_form"
                                        : "monte_carlo"}};
  if (report.p_s_adv) j["p_s_adv"] = report.p_s_adv->value();
  if (report.p_s_err) j["p_s_err"] = report.p_s_err->value();
  if (report.n_samples) j["n_samples"] = *report.n_samples;
  if (report.std_err) j["std_err"] = *report.std_err;
}

RateReport rate_report_from_json(const nlohmann::json& j) {
  RateReport r;
  r.p_m = Probability(j.at("p_m").get<double>());
  r.p_adv = Probability(j.at("p_adv").get<double>());
  r.p_err = Probability(j.at("p_err").get<double>());
  if (j.contains("p_s_adv")) r.p_s_adv = Probability(j.at("p_s_adv").get<double>());
  if (j.contains("p_s_err")) r.p_s_err = Probability(j.at("p_s_err").get<double>());
  const std::string prov = j.at("provenance").get<std::string>();
  if (prov == "closed_form") {
    r.provenance = Provenance::closed_form;
  } else if (prov == "monte_carlo") {
    r.provenance = Provenance::monte_carlo;
  } else {
    throw std::invalid_argument("RateReport: unknown provenance " + prov);
  }
  if (j.contains("n_samples")) r.n_samples = j.at("n_samples").get<std::int64_t>();
  if (j.contains("std_err")) r.std_err = j.at("std_err").get<double>();
  return r;
}

void to_json(nlohmann::json& j, const Perturbation& pert) {
  j = nlohmann::json{{"direction", vector_to_json(pert.direction)},
                     {"achieved_norm", pert.achieved_norm},
                     {"signal_component", pert.signal_component}};
}

}  // namespace advlin
