// Linear classifier training: soft-margin SVM by dual coordinate descent,
// the Bayes rule for a known mixture, and top-k weight sparsification.
#pragma once

#include "advlin/simulate.hpp"
#include "advlin/types.hpp"

#include <cstdint>
#include <vector>

namespace advlin {

struct SvmConfig {
  double c = 1.0;           // soft-margin penalty
  double tol = 1e-4;        // dual optimality tolerance (projected-gradient spread)
  int max_epochs = 1000;
  std::uint64_t seed = 0;   // coordinate shuffling
  bool track_objective = false;  // record the primal objective once per epoch
};

struct SvmTrainResult {
  LinearClassifier classifier;
  bool converged = false;
  int epochs = 0;
  Vector alpha;                          // final dual variables, in [0, c]
  std::vector<double> primal_objective;  // per epoch, when tracking is on
};

// Minimizes 0.5 ||w~||^2 + C sum_i hinge(y_i w~.x~_i) over the bias-augmented
// weights w~ = (w, b), x~ = (x, 1), via dual coordinate descent with
// shrinking. Deterministic in (data, cfg). Throws on single-class data; a
// run that hits max_epochs comes back with converged = false.
SvmTrainResult train_svm(const LabeledDataset& data, const SvmConfig& cfg);

// w = mu, b = -mu.mu_bar: the decision mu.(x - mu_bar) > 0. Centered bias and
// deflection angle are both zero.
LinearClassifier bayes_classifier(const GaussianMixtureSpec& mix);

// Keeps the k weights of largest magnitude (ties by lowest index) bit-exactly
// and zeroes the rest; the bias is untouched.
LinearClassifier sparsify(const LinearClassifier& clf, Eigen::Index k);

}  // namespace advlin
