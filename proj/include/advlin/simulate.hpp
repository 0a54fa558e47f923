// Seeded Gaussian-mixture sampling and Monte Carlo rate estimation.
#pragma once

#include "advlin/geometry.hpp"
#include "advlin/rng.hpp"
#include "advlin/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace advlin {

// A labeled sample from the mixture. Regenerating with the same
// (mix, n, seed) is bit-identical.
struct LabeledDataset {
  RowMatrix points;           // n x d, one sample per row
  std::vector<Label> labels;  // length n
  std::uint64_t seed = 0;

  Eigen::Index n() const { return points.rows(); }
  Eigen::Index d() const { return points.cols(); }
};

// Streaming generator behind sample(): label bit first, then d normal
// deviates per point, all from one counter-based stream.
class MixtureSampler {
 public:
  MixtureSampler(const GaussianMixtureSpec& mix, std::uint64_t seed)
      : mix_(mix), rng_(CounterRng::stream(seed, 0)) {}

  // Fills x (resized to d) and returns its label.
  Label next(Vector& x);

 private:
  const GaussianMixtureSpec& mix_;
  CounterRng rng_;
};

LabeledDataset sample(const GaussianMixtureSpec& mix, Eigen::Index n, std::uint64_t seed);

// Per-status counts over a dataset; the four buckets partition the sample.
struct StatusCounts {
  std::int64_t misclassified = 0;
  std::int64_t strong_adversarial = 0;
  std::int64_t adversarial_only = 0;
  std::int64_t robust = 0;

  std::int64_t total() const {
    return misclassified + strong_adversarial + adversarial_only + robust;
  }
};

StatusCounts count_statuses(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                            const PerturbationBudget& budget, const LabeledDataset& data);

// Monte Carlo rate estimates. p_m = #misclassified / n, p_adv counts every
// point with an in-budget flip, p_s_adv the signal-capped subset; p_err and
// p_s_err are the sums. std_err is the binomial standard error of p_err.
RateReport empirical_rates(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                           const PerturbationBudget& budget, const LabeledDataset& data);

// Same, over a fresh sample(mix, n, seed); the sample is streamed, not stored.
RateReport empirical_rates(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                           const PerturbationBudget& budget, Eigen::Index n, std::uint64_t seed);

// Mean of ||x||_p^p over n draws from N(0, sigma^2 I_d); finite p only.
double empirical_lp_noise(double p, Eigen::Index d, double sigma, Eigen::Index n,
                          std::uint64_t seed);

// Companion order check for p = inf: mean of ||x||_inf.
double empirical_linf_noise(Eigen::Index d, double sigma, Eigen::Index n, std::uint64_t seed);

// CSV export with header "label,x0,...,x{d-1}"; labels are '+' / '-'.
void write_csv(const LabeledDataset& data, std::ostream& out);

}  // namespace advlin
