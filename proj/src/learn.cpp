#include "advlin/learn.hpp"

#include "advlin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace advlin {

namespace {

double primal_objective(const LabeledDataset& data, const Vector& w, double b, double c) {
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double margin = sign_of(data.labels[i]) * (data.points.row(i).dot(w) + b);
    hinge += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * (w.squaredNorm() + b * b) + c * hinge;
}

}  // namespace

SvmTrainResult train_svm(const LabeledDataset& data, const SvmConfig& cfg) {
  const Eigen::Index n = data.n();
  const Eigen::Index d = data.d();
  if (n <= 0) throw std::domain_error("train_svm: empty dataset");
  if (!(cfg.c > 0.0) || !(cfg.tol > 0.0) || cfg.max_epochs <= 0) {
    throw std::domain_error("train_svm: config values must be positive");
  }
  bool has_plus = false, has_minus = false;
  for (Label y : data.labels) (y == Label::plus ? has_plus : has_minus) = true;
  if (!has_plus || !has_minus) {
    throw std::domain_error("train_svm: both classes must be present");
  }

  // Dual of the L1-hinge problem over bias-augmented features:
  //   min_a 0.5 a^T Q a - e^T a,  0 <= a_i <= C,  Q_ij = y_i y_j (x_i.x_j + 1).
  // One coordinate pass updates each a_i by a clipped Newton step; w and b are
  // kept in sync incrementally. Shrinking freezes coordinates whose projected
  // gradient pins them at a bound.
  const double inf = std::numeric_limits<double>::infinity();
  Vector w = Vector::Zero(d);
  double b = 0.0;
  Vector alpha = Vector::Zero(n);
  std::vector<double> qdiag(n);
  for (Eigen::Index i = 0; i < n; ++i) qdiag[i] = data.points.row(i).squaredNorm() + 1.0;

  std::vector<Eigen::Index> index(n);
  std::iota(index.begin(), index.end(), Eigen::Index{0});
  Eigen::Index active = n;

  CounterRng rng = CounterRng::stream(cfg.seed, 0);
  double pg_max_old = inf, pg_min_old = -inf;

  std::vector<double> objective_trace;
  bool converged = false;
  int epoch = 0;
  for (; epoch < cfg.max_epochs; ++epoch) {
    double pg_max = -inf, pg_min = inf;

    for (Eigen::Index s = 0; s < active; ++s) {
      const Eigen::Index swap_at = s + static_cast<Eigen::Index>(
          rng.next_u64() % static_cast<std::uint64_t>(active - s));
      std::swap(index[s], index[swap_at]);
      const Eigen::Index i = index[s];
      const double y = sign_of(data.labels[i]);
      const double g = y * (data.points.row(i).dot(w) + b) - 1.0;

      double pg = g;
      if (alpha[i] == 0.0) {
        if (g > pg_max_old) {  // pinned at the lower bound; shrink
          std::swap(index[s], index[--active]);
          --s;
          continue;
        }
        if (g >= 0.0) pg = 0.0;
      } else if (alpha[i] == cfg.c) {
        if (g < pg_min_old) {
          std::swap(index[s], index[--active]);
          --s;
          continue;
        }
        if (g <= 0.0) pg = 0.0;
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);

      if (std::abs(pg) > 1e-12) {
        const double old = alpha[i];
        alpha[i] = std::min(std::max(old - g / qdiag[i], 0.0), cfg.c);
        const double step = (alpha[i] - old) * y;
        w += step * data.points.row(i).transpose();
        b += step;
      }
    }

    if (cfg.track_objective) objective_trace.push_back(primal_objective(data, w, b, cfg.c));

    if (pg_max - pg_min <= cfg.tol) {
      if (active == n) {
        ++epoch;
        converged = true;
        break;
      }
      // optimal on the shrunk set only: reactivate everything and confirm
      active = n;
      pg_max_old = inf;
      pg_min_old = -inf;
      continue;
    }
    pg_max_old = pg_max <= 0.0 ? inf : pg_max;
    pg_min_old = pg_min >= 0.0 ? -inf : pg_min;
  }

  return SvmTrainResult{LinearClassifier(std::move(w), b), converged, epoch, std::move(alpha),
                        std::move(objective_trace)};
}

LinearClassifier bayes_classifier(const GaussianMixtureSpec& mix) {
  Vector w = mix.mu();
  const double b = -w.dot(mix.mu_bar());
  return LinearClassifier(std::move(w), b);
}

LinearClassifier sparsify(const LinearClassifier& clf, Eigen::Index k) {
  const Eigen::Index d = clf.d();
  if (k < 1 || k > d) throw std::domain_error("sparsify: k must lie in [1, d]");
  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b2) {
    return std::abs(clf.w()[a]) > std::abs(clf.w()[b2]);
  });
  Vector w = Vector::Zero(d);
  for (Eigen::Index r = 0; r < k; ++r) w[order[r]] = clf.w()[order[r]];
  if (w.norm() == 0.0) throw std::domain_error("sparsify: all retained weights are zero");
  return LinearClassifier(std::move(w), clf.b());
}

}  // namespace advlin
