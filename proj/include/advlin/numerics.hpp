// Scalar special functions and Gaussian moment identities.
//
// Everything here is pure and total on finite inputs; non-finite inputs are
// rejected with std::domain_error instead of being propagated.
#pragma once

namespace advlin {

class Probability;

// Standard normal CDF, Phi(x) = P(Z <= x). Absolute error below 1e-12,
// monotone nondecreasing in x.
Probability std_normal_cdf(double x);

// Standard normal density, (1/sqrt(2*pi)) * exp(-x^2/2). Underflows to 0 in
// the far tails without raising.
double std_normal_pdf(double x);

// p-th absolute moment of a standard normal, E|Z|^p = 2^(p/2) Gamma((p+1)/2) / sqrt(pi).
// Requires p >= 1.
double abs_moment(double p);

// Lower truncated moments of the standard normal:
//   trunc_moment1(t) = int_{-inf}^t (t - z)   phi(z) dz = t Phi(t) + phi(t)
//   trunc_moment2(t) = int_{-inf}^t (t - z)^2 phi(z) dz = (1 + t^2) Phi(t) + t phi(t)
// Both are nonnegative and strictly increasing in t.
double trunc_moment1(double t);
double trunc_moment2(double t);

}  // namespace advlin
