// Optimal perturbation construction and per-point attack status.
//
// For a linear classifier the worst-case perturbation inside a budget region
// maximizes w.v over that region, so membership checks reduce to comparing
// the decision score against a single reach threshold. The constructors here
// produce those maximizers: the boundary-normal attack for a plain lp ball,
// and its signal-capped variant when the budget also bounds |v.mu0|.
#pragma once

#include "advlin/types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace advlin {

// Raised when the signal-capped lp maximizer fails to converge; the message
// carries the final feasibility residuals.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Angle between the classifier's boundary normal v0 = w/||w|| and the signal
// direction, folded into [0, pi/2]. n0 is the unit component of v0 orthogonal
// to mu0 inside span{mu0, w}; it is absent when the two are parallel.
struct AngleDecomposition {
  double theta = 0.0;
  std::optional<Vector> n0;
};

enum class PointStatus : std::int8_t {
  misclassified,
  strong_adversarial,
  adversarial_only,
  robust,
};

// w / ||w||_2. The weight vector is nonzero by type invariant.
Vector normal_direction(const LinearClassifier& clf);

// Splits v0 into cos(theta) mu0 + sin(theta) n0, orienting mu0 so that
// w.mu0 >= 0 and hence theta lies in [0, pi/2].
AngleDecomposition decompose(const LinearClassifier& clf, const GaussianMixtureSpec& mix);

// Signal-capped l2 attack: beta mu0 + sqrt(eps^2 - beta^2) n0 with
// beta = min(eps cos theta, delta), oriented to increase w.x. Requires
// budget.p == 2 and a present delta. In dimension one with delta < eps the
// orthogonal leg does not exist and the result is delta mu0 (norm delta).
Perturbation strong_perturbation_l2(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                    const PerturbationBudget& budget);

// Unconstrained lp attack eps * v0|p, where (v0|p)_i = sgn(w_i) (|w_i| / ||w||_q)^(q-1).
// Achieves w.v = eps ||w||_q, the maximum of w.v over the eps lp-ball.
// Limits: p = 1 concentrates all mass on an argmax-|w_i| coordinate (lowest
// index on ties); p = inf is the pure sign vector.
Perturbation lp_perturbation(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                             const PerturbationBudget& budget);

// Signal-capped lp attack: maximizes w.v over {||v||_p <= eps, |v.mu0| <= delta}
// to 1e-8 relative objective accuracy. Contract covers p in (1, inf]; p = 1 is
// served best-effort by the same dual with argmax ties broken by lowest index.
Perturbation lp_strong_perturbation(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                    const PerturbationBudget& budget);

// Score thresholds that decide attack status for any point from its decision
// score alone. adv_reach = w.(eps v0|p); strong_reach = w.u for the
// signal-capped attack u (present iff the budget has a delta).
struct AttackThresholds {
  double adv_reach = 0.0;
  std::optional<double> strong_reach;
};

AttackThresholds attack_thresholds(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                   const PerturbationBudget& budget);

// Status of a scored point with a known true label, given precomputed
// thresholds. Partition: misclassified / strong_adversarial /
// adversarial_only / robust.
PointStatus status_from_score(double score, Label label, const AttackThresholds& thresholds);

// Same classification for a concrete point; builds the thresholds internally.
// Membership is decided by the defining-set perturbations only.
PointStatus point_status(const Eigen::Ref<const Vector>& x, Label label,
                         const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                         const PerturbationBudget& budget);

// Randomized feasibility search used as an independent check on the
// constructive attacks: tries the constructive candidates first, then
// `trials` random budget-boundary directions (clamped into the signal slab
// when delta is present), and returns the first feasible perturbation that
// flips the classification of x, if any. Deterministic for a fixed seed.
std::optional<Perturbation> brute_force_adversarial_search(
    const Eigen::Ref<const Vector>& x, const LinearClassifier& clf,
    const GaussianMixtureSpec& mix, const PerturbationBudget& budget, std::int64_t trials,
    std::uint64_t seed);

}  // namespace advlin
