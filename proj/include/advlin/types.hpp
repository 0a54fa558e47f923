// Domain value types shared by every module: the balanced two-class Gaussian
// mixture, linear classifiers, perturbation budgets, and rate reports.
// All types are immutable after construction and safe to share across threads.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace advlin {

using Vector = Eigen::VectorXd;
// Datasets are row-major so each sample is a contiguous row.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Label : std::int8_t { minus = -1, plus = +1 };

inline double sign_of(Label y) { return y == Label::plus ? 1.0 : -1.0; }

// A value constrained to [0, 1]. Construction clamps round-off up to 1e-12
// past either endpoint and rejects anything worse as a numerical error.
class Probability {
 public:
  Probability() = default;
  explicit Probability(double value);
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_ = 0.0;
};

// Norm order p in [1, inf], with the dual exponent q (1/p + 1/q = 1,
// using the 1/inf = 0 convention). Infinity is represented exactly so the
// q = 1 sign-vector geometry stays exact.
class NormOrder {
 public:
  explicit NormOrder(double p);
  static NormOrder inf();
  double p() const { return p_; }
  double q() const;
  bool is_inf() const;
  bool operator==(const NormOrder& other) const { return p_ == other.p_; }

 private:
  double p_ = 2.0;
};

// lp norm of a vector for p in [1, inf].
double lp_norm(const Eigen::Ref<const Vector>& v, const NormOrder& p);

// Balanced two-class isotropic Gaussian mixture:
// x ~ 0.5 N(mu_plus, sigma^2 I) + 0.5 N(mu_minus, sigma^2 I).
// Class weights are fixed at one half and both classes share sigma; inputs
// outside that regime are rejected at construction.
class GaussianMixtureSpec {
 public:
  GaussianMixtureSpec(Vector mu_plus, Vector mu_minus, double sigma);

  const Vector& mu_plus() const { return mu_plus_; }
  const Vector& mu_minus() const { return mu_minus_; }
  double sigma() const { return sigma_; }
  Eigen::Index d() const { return mu_plus_.size(); }

  // Half-difference and half-sum of the class means.
  Vector mu() const { return 0.5 * (mu_plus_ - mu_minus_); }
  Vector mu_bar() const { return 0.5 * (mu_plus_ + mu_minus_); }
  // Unit signal direction mu / ||mu||.
  Vector mu0() const;
  double mu_norm() const { return mu().norm(); }

 private:
  Vector mu_plus_;
  Vector mu_minus_;
  double sigma_;
};

// Linear decision rule: label '+' iff w.x + b > 0.
class LinearClassifier {
 public:
  LinearClassifier(Vector w, double b);

  const Vector& w() const { return w_; }
  double b() const { return b_; }
  Eigen::Index d() const { return w_.size(); }

  double score(const Eigen::Ref<const Vector>& x) const { return w_.dot(x) + b_; }
  Label decide(const Eigen::Ref<const Vector>& x) const {
    return score(x) > 0.0 ? Label::plus : Label::minus;
  }

 private:
  Vector w_;
  double b_;
};

// Centered bias b' = w.mu_bar + b; the rate formulas are evaluated in this
// parameterization so large common means cannot cancel catastrophically.
double centered_bias(const LinearClassifier& clf, const GaussianMixtureSpec& mix);

// Signal-to-noise ratio ||mu|| / sigma.
double snr(const GaussianMixtureSpec& mix);

// Attack budget: overall lp budget epsilon, and an optional cap delta on the
// perturbation component along the signal direction. An absent delta means
// the classical adversarial definition.
class PerturbationBudget {
 public:
  PerturbationBudget(NormOrder p, double epsilon, std::optional<double> delta = std::nullopt);

  const NormOrder& p() const { return p_; }
  double epsilon() const { return epsilon_; }
  const std::optional<double>& delta() const { return delta_; }

 private:
  NormOrder p_;
  double epsilon_;
  std::optional<double> delta_;
};

// A concrete attack vector together with its achieved lp norm and its
// component along the signal direction.
struct Perturbation {
  Vector direction;
  double achieved_norm = 0.0;
  double signal_component = 0.0;
};

enum class Provenance { closed_form, monte_carlo };

// The rate triple (plus raw adversarial/strong rates) from either the closed
// forms or a Monte Carlo run. p_err = p_m + p_adv by construction; the strong
// entries are present only when the budget carried a delta.
struct RateReport {
  Probability p_m;
  Probability p_adv;
  Probability p_err;
  std::optional<Probability> p_s_adv;
  std::optional<Probability> p_s_err;
  Provenance provenance = Provenance::closed_form;
  std::optional<std::int64_t> n_samples;
  std::optional<double> std_err;
};

// JSON wire format. Field names match the member names; vectors are JSON
// arrays; p = infinity is encoded as the string "inf"; optional fields are
// omitted when absent. The *_from_json parsers validate like the constructors.
void to_json(nlohmann::json& j, const GaussianMixtureSpec& mix);
void to_json(nlohmann::json& j, const LinearClassifier& clf);
void to_json(nlohmann::json& j, const PerturbationBudget& budget);
void to_json(nlohmann::json& j, const RateReport& report);
void to_json(nlohmann::json& j, const Perturbation& pert);
GaussianMixtureSpec mixture_from_json(const nlohmann::json& j);
LinearClassifier classifier_from_json(const nlohmann::json& j);
PerturbationBudget budget_from_json(const nlohmann::json& j);
RateReport rate_report_from_json(const nlohmann::json& j);
NormOrder norm_order_from_json(const nlohmann::json& j);

}  // namespace advlin
