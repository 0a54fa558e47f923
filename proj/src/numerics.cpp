#include "advlin/numerics.hpp"

#include "advlin/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace advlin {

namespace {

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": non-finite input " + std::to_string(x));
  }
}

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

}  // namespace

Probability std_normal_cdf(double x) {
  require_finite(x, "std_normal_cdf");
  // erfc-based form keeps full relative accuracy in the lower tail and is a
  // high-accuracy rational/continued-fraction approximation under the hood.
  return Probability(0.5 * std::erfc(-x * kInvSqrt2));
}

double std_normal_pdf(double x) {
  require_finite(x, "std_normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double abs_moment(double p) {
  require_finite(p, "abs_moment");
  if (p < 1.0) {
    throw std::domain_error("abs_moment: order must be >= 1, got " + std::to_string(p));
  }
  return std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) /
         std::sqrt(std::numbers::pi);
}

double trunc_moment1(double t) {
  require_finite(t, "trunc_moment1");
  const double v = t * std_normal_cdf(t).value() + std_normal_pdf(t);
  return v < 0.0 ? 0.0 : v;  // exact value is positive; guard tail round-off
}

double trunc_moment2(double t) {
  require_finite(t, "trunc_moment2");
  const double v = (1.0 + t * t) * std_normal_cdf(t).value() + t * std_normal_pdf(t);
  return v < 0.0 ? 0.0 : v;
}

}  // namespace advlin
