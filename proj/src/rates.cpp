#include "advlin/rates.hpp"

#include "advlin/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace advlin {

namespace {

// Score margins (w.mu +/- b') / (||w|| sigma); every rate formula is a
// difference of Phi values at these two points shifted by a reach.
struct Margins {
  double t_plus;
  double t_minus;
};

Margins margins(const LinearClassifier& clf, const GaussianMixtureSpec& mix) {
  const double wm = clf.w().dot(mix.mu());
  const double bc = centered_bias(clf, mix);
  const double scale = clf.w().norm() * mix.sigma();
  return {(wm + bc) / scale, (wm - bc) / scale};
}

double phi_pair(const Margins& m, double reach_over_sigma) {
  return 0.5 * (std_normal_cdf(m.t_plus - reach_over_sigma).value() +
                std_normal_cdf(m.t_minus - reach_over_sigma).value());
}

Probability error_rate_at_reach(const Margins& m, double reach_over_sigma) {
  return Probability(1.0 - phi_pair(m, reach_over_sigma));
}

Probability adv_rate_at_reach(const Margins& m, double reach_over_sigma) {
  return Probability(phi_pair(m, 0.0) - phi_pair(m, reach_over_sigma));
}

double require_nonneg(double x, const char* who) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": expected a finite nonnegative value");
  }
  return x;
}

// delta beyond eps adds nothing (the ball's signal extent is already eps);
// sweeps cross this line routinely, so clamp instead of rejecting.
double clamp_delta(double epsilon, double delta) {
  if (delta > epsilon) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
      std::cerr << "advlin: delta > epsilon, clamping the signal cap to epsilon\n";
    }
    return epsilon;
  }
  return delta;
}

RateReport report_from_reaches(const Margins& m, double adv_reach_over_sigma,
                               std::optional<double> strong_reach_over_sigma) {
  RateReport r;
  r.p_m = error_rate_at_reach(m, 0.0);
  r.p_adv = adv_rate_at_reach(m, adv_reach_over_sigma);
  r.p_err = error_rate_at_reach(m, adv_reach_over_sigma);
  if (strong_reach_over_sigma) {
    r.p_s_adv = adv_rate_at_reach(m, *strong_reach_over_sigma);
    r.p_s_err = error_rate_at_reach(m, *strong_reach_over_sigma);
  }
  r.provenance = Provenance::closed_form;
  return r;
}

}  // namespace

Probability misclassification_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix) {
  return error_rate_at_reach(margins(clf, mix), 0.0);
}

Probability adversarial_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                             double epsilon) {
  require_nonneg(epsilon, "adversarial_rate");
  return adv_rate_at_reach(margins(clf, mix), epsilon / mix.sigma());
}

Probability adversarial_error_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                   double epsilon) {
  require_nonneg(epsilon, "adversarial_error_rate");
  return error_rate_at_reach(margins(clf, mix), epsilon / mix.sigma());
}

Probability adv_error_lower_bound(const GaussianMixtureSpec& mix, double epsilon) {
  require_nonneg(epsilon, "adv_error_lower_bound");
  return Probability(1.0 - std_normal_cdf(snr(mix) - epsilon / mix.sigma()).value());
}

double g_effective(double epsilon, double delta, double theta) {
  require_nonneg(epsilon, "g_effective");
  require_nonneg(delta, "g_effective");
  if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi)) {
    throw std::domain_error("g_effective: theta must lie in [0, pi/2]");
  }
  const double beta = std::min(epsilon * std::cos(theta), delta);
  return beta * std::cos(theta) +
         std::sqrt(std::max(epsilon * epsilon - beta * beta, 0.0)) * std::sin(theta);
}

Probability strong_adversarial_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                    double epsilon, double delta) {
  require_nonneg(epsilon, "strong_adversarial_rate");
  require_nonneg(delta, "strong_adversarial_rate");
  const double g = g_effective(epsilon, clamp_delta(epsilon, delta), decompose(clf, mix).theta);
  return adv_rate_at_reach(margins(clf, mix), g / mix.sigma());
}

Probability strong_error_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                              double epsilon, double delta) {
  require_nonneg(epsilon, "strong_error_rate");
  require_nonneg(delta, "strong_error_rate");
  const double g = g_effective(epsilon, clamp_delta(epsilon, delta), decompose(clf, mix).theta);
  return error_rate_at_reach(margins(clf, mix), g / mix.sigma());
}

Probability lp_adversarial_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                double epsilon, const NormOrder& p) {
  require_nonneg(epsilon, "lp_adversarial_rate");
  PerturbationBudget budget(p, epsilon);
  const double reach = attack_thresholds(clf, mix, budget).adv_reach / clf.w().norm();
  return adv_rate_at_reach(margins(clf, mix), reach / mix.sigma());
}

Probability lp_strong_adversarial_rate(const LinearClassifier& clf,
                                       const GaussianMixtureSpec& mix, double epsilon,
                                       double delta, const NormOrder& p) {
  require_nonneg(epsilon, "lp_strong_adversarial_rate");
  require_nonneg(delta, "lp_strong_adversarial_rate");
  PerturbationBudget budget(p, epsilon, clamp_delta(epsilon, delta));
  const auto th = attack_thresholds(clf, mix, budget);
  return adv_rate_at_reach(margins(clf, mix), *th.strong_reach / clf.w().norm() / mix.sigma());
}

RateReport small_bias_rates(const GaussianMixtureSpec& mix, double theta, double epsilon,
                            double delta) {
  require_nonneg(epsilon, "small_bias_rates");
  require_nonneg(delta, "small_bias_rates");
  if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi)) {
    throw std::domain_error("small_bias_rates: theta must lie in [0, pi/2]");
  }
  const double s = snr(mix);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double es = epsilon / mix.sigma();
  const double ds = delta / mix.sigma();

  RateReport r;
  r.p_m = Probability(1.0 - std_normal_cdf(s * c).value());
  r.p_err = Probability(1.0 - std_normal_cdf((s - es) * c).value());
  r.p_adv = Probability(r.p_err.value() - r.p_m.value());
  r.p_s_err = Probability(1.0 - std_normal_cdf((s - ds) * c - es * sn).value());
  r.p_s_adv = Probability(r.p_s_err->value() - r.p_m.value());
  r.provenance = Provenance::closed_form;
  return r;
}

RateReport bayes_rates(const GaussianMixtureSpec& mix, double epsilon, double delta) {
  return small_bias_rates(mix, 0.0, epsilon, delta);
}

RateReport closed_form_report(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                              const PerturbationBudget& budget) {
  const Margins m = margins(clf, mix);
  const double adv_reach =
      attack_thresholds(clf, mix, PerturbationBudget(budget.p(), budget.epsilon())).adv_reach /
      clf.w().norm() / mix.sigma();
  std::optional<double> strong_reach;
  if (budget.delta()) {
    PerturbationBudget capped(budget.p(), budget.epsilon(),
                              clamp_delta(budget.epsilon(), *budget.delta()));
    strong_reach =
        *attack_thresholds(clf, mix, capped).strong_reach / clf.w().norm() / mix.sigma();
  }
  return report_from_reaches(m, adv_reach, strong_reach);
}

AsymptoticAngle asymptotic_svm_angle(const AsymptoticAngleParams& params) {
  if (params.n_train <= 0 || params.d <= 0 || !(params.mu > 0.0) || !(params.sigma > 0.0)) {
    throw std::domain_error("asymptotic_svm_angle: all parameters must be positive");
  }
  const double a = static_cast<double>(params.n_train) / static_cast<double>(params.d);
  const double b = a * params.mu / params.sigma;

  // Eliminating theta via sin^2 + cos^2 = 1 leaves a single strictly
  // increasing function of t, so the bracket cannot stagnate.
  const auto one_d = [&](double t) {
    const double t1 = trunc_moment1(t);
    return a * trunc_moment2(t) + b * t1 * b * t1 - 1.0;
  };
  double lo = -10.0, hi = 10.0;
  if (one_d(lo) >= 0.0 || one_d(hi) <= 0.0) {
    std::ostringstream msg;
    msg << "asymptotic_svm_angle: no root in t-box (-10, 10); F(-10) = " << one_d(lo)
        << ", F(10) = " << one_d(hi);
    throw SolverError(msg.str());
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (one_d(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  double theta = std::atan2(std::sqrt(std::max(a * trunc_moment2(t), 0.0)),
                            b * trunc_moment1(t));

  // A few damped Newton steps on the full system (numeric Jacobian) polish
  // the pair to round-off.
  const auto residuals = [&](double th, double tt, double& r1, double& r2) {
    r1 = std::sin(th) * std::sin(th) - a * trunc_moment2(tt);
    r2 = std::cos(th) - b * trunc_moment1(tt);
  };
  for (int it = 0; it < 8; ++it) {
    double r1, r2;
    residuals(theta, t, r1, r2);
    if (std::max(std::abs(r1), std::abs(r2)) < 1e-13) break;
    const double h = 1e-7;
    double r1t, r2t, r1u, r2u;
    residuals(theta + h, t, r1t, r2t);
    residuals(theta, t + h, r1u, r2u);
    const double j11 = (r1t - r1) / h, j12 = (r1u - r1) / h;
    const double j21 = (r2t - r2) / h, j22 = (r2u - r2) / h;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0) break;
    theta -= (r1 * j22 - r2 * j12) / det;
    t -= (r2 * j11 - r1 * j21) / det;
    theta = std::clamp(theta, 1e-6, 0.5 * std::numbers::pi - 1e-6);
    t = std::clamp(t, -10.0, 10.0);
  }

  double r1, r2;
  residuals(theta, t, r1, r2);
  if (std::max(std::abs(r1), std::abs(r2)) > 1e-8) {
    std::ostringstream msg;
    msg << "asymptotic_svm_angle: residuals " << r1 << ", " << r2 << " exceed 1e-8";
    throw SolverError(msg.str());
  }
  return {theta, t};
}

double required_snr_order(const NormOrder& p, std::int64_t d) {
  if (d < 1) throw std::domain_error("required_snr_order: d must be >= 1");
  const double dd = static_cast<double>(d);
  if (p.is_inf()) return std::sqrt(std::log(dd));
  return std::pow(dd, std::min(1.0 / p.p(), 0.5));
}

}  // namespace advlin
