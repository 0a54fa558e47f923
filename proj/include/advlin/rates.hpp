// Closed-form misclassification, adversarial, and strong-adversarial rates
// for linear classifiers on the balanced Gaussian mixture, with lp variants,
// bounds, small-bias approximations, and the asymptotic SVM angle.
#pragma once

#include "advlin/geometry.hpp"
#include "advlin/types.hpp"

namespace advlin {

// 1 - 0.5 [Phi((w.mu + b')/(||w|| sigma)) + Phi((w.mu - b')/(||w|| sigma))].
Probability misclassification_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix);

// Probability that a correctly classified point flips inside the eps l2 ball.
// Zero at eps = 0; approaches 1 - p_m as eps grows.
Probability adversarial_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                             double epsilon);

// p_err = p_m + p_adv.
Probability adversarial_error_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                   double epsilon);

// Classifier-free lower bound 1 - Phi(||mu||/sigma - eps/sigma); valid for any
// classifier in the w.mu > eps ||w|| regime.
Probability adv_error_lower_bound(const GaussianMixtureSpec& mix, double epsilon);

// Effective reach of the signal-capped budget along the boundary normal:
// beta cos(theta) + sqrt(eps^2 - beta^2) sin(theta), beta = min(eps cos theta, delta).
// Never exceeds eps.
double g_effective(double epsilon, double delta, double theta);

// Strong variants: the reach eps is replaced by g(eps, delta, theta) with
// theta the folded angle of the classifier. delta > eps is clamped to eps
// (with a one-time warning); the cap is vacuous past that point.
Probability strong_adversarial_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                    double epsilon, double delta);
Probability strong_error_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                              double epsilon, double delta);

// lp variants: the reach becomes eps ||w||_q / ||w||_2, and for the
// signal-capped case w.u_p / ||w||_2 with u_p the capped lp maximizer.
Probability lp_adversarial_rate(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                double epsilon, const NormOrder& p);
Probability lp_strong_adversarial_rate(const LinearClassifier& clf,
                                       const GaussianMixtureSpec& mix, double epsilon,
                                       double delta, const NormOrder& p);

// Small-bias (b' ~ 0) approximations at a given angle:
//   p_m     ~ 1 - Phi(snr cos theta)
//   p_err   ~ 1 - Phi((snr - eps/sigma) cos theta)
//   p_s_err ~ 1 - Phi((snr - delta/sigma) cos theta - (eps/sigma) sin theta)
// bayes_rates is the theta = 0 specialization, which is exact for the Bayes
// classifier.
RateReport small_bias_rates(const GaussianMixtureSpec& mix, double theta, double epsilon,
                            double delta);
RateReport bayes_rates(const GaussianMixtureSpec& mix, double epsilon, double delta);

// Full closed-form report for one classifier and budget (lp-aware, strong
// entries present iff the budget carries a delta).
RateReport closed_form_report(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                              const PerturbationBudget& budget);

// Inputs for the large-sample SVM angle: training-set size, dimension, and
// the mixture's ||mu|| and sigma.
struct AsymptoticAngleParams {
  std::int64_t n_train;
  std::int64_t d;
  double mu;
  double sigma;
};

struct AsymptoticAngle {
  double theta;
  double t;
};

// Solves the coupled system
//   sin^2 theta = (N/d) trunc_moment2(t)
//   cos theta   = (N/d) (mu/sigma) trunc_moment1(t)
// to residuals <= 1e-8 on both equations, theta in (0, pi/2), t in (-10, 10).
// Throws SolverError with the final residuals if no root lies in the box.
AsymptoticAngle asymptotic_svm_angle(const AsymptoticAngleParams& params);

// SNR scale (constant 1) required for lp-adversarial robustness:
// d^min(1/p, 1/2) for finite p, sqrt(log d) for p = inf.
double required_snr_order(const NormOrder& p, std::int64_t d);

}  // namespace advlin
