#include "advlin/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace advlin {

Label MixtureSampler::next(Vector& x) {
  const Label y = rng_.next_bool() ? Label::plus : Label::minus;
  const Vector& mean = y == Label::plus ? mix_.mu_plus() : mix_.mu_minus();
  x.resize(mix_.d());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = mean[i] + mix_.sigma() * rng_.next_normal();
  }
  return y;
}

LabeledDataset sample(const GaussianMixtureSpec& mix, Eigen::Index n, std::uint64_t seed) {
  if (n <= 0) throw std::domain_error("sample: n must be positive");
  LabeledDataset data;
  data.seed = seed;
  data.points.resize(n, mix.d());
  data.labels.resize(n);
  MixtureSampler gen(mix, seed);
  Vector x;
  for (Eigen::Index i = 0; i < n; ++i) {
    data.labels[i] = gen.next(x);
    data.points.row(i) = x;
  }
  return data;
}

namespace {

void tally(StatusCounts& counts, PointStatus s) {
  switch (s) {
    case PointStatus::misclassified: ++counts.misclassified; break;
    case PointStatus::strong_adversarial: ++counts.strong_adversarial; break;
    case PointStatus::adversarial_only: ++counts.adversarial_only; break;
    case PointStatus::robust: ++counts.robust; break;
  }
}

RateReport report_from_counts(const StatusCounts& c, bool has_delta) {
  const double n = static_cast<double>(c.total());
  RateReport r;
  r.p_m = Probability(static_cast<double>(c.misclassified) / n);
  r.p_adv =
      Probability(static_cast<double>(c.strong_adversarial + c.adversarial_only) / n);
  r.p_err = Probability(r.p_m.value() + r.p_adv.value());
  if (has_delta) {
    r.p_s_adv = Probability(static_cast<double>(c.strong_adversarial) / n);
    r.p_s_err = Probability(r.p_m.value() + r.p_s_adv->value());
  }
  r.provenance = Provenance::monte_carlo;
  r.n_samples = c.total();
  const double pe = r.p_err.value();
  r.std_err = std::sqrt(pe * (1.0 - pe) / n);
  return r;
}

}  // namespace

StatusCounts count_statuses(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                            const PerturbationBudget& budget, const LabeledDataset& data) {
  if (data.d() != clf.d() || clf.d() != mix.d()) {
    throw std::invalid_argument("count_statuses: dimension mismatch");
  }
  if (data.n() == 0) throw std::domain_error("count_statuses: empty dataset");
  const AttackThresholds th = attack_thresholds(clf, mix, budget);
  StatusCounts counts;
  Vector x(data.d());
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    x = data.points.row(i);
    tally(counts, status_from_score(clf.score(x), data.labels[i], th));
  }
  return counts;
}

RateReport empirical_rates(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                           const PerturbationBudget& budget, const LabeledDataset& data) {
  return report_from_counts(count_statuses(clf, mix, budget, data),
                            budget.delta().has_value());
}

RateReport empirical_rates(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                           const PerturbationBudget& budget, Eigen::Index n, std::uint64_t seed) {
  if (n <= 0) throw std::domain_error("empirical_rates: n must be positive");
  if (clf.d() != mix.d()) throw std::invalid_argument("empirical_rates: dimension mismatch");
  const AttackThresholds th = attack_thresholds(clf, mix, budget);
  StatusCounts counts;
  MixtureSampler gen(mix, seed);
  Vector x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Label y = gen.next(x);
    tally(counts, status_from_score(clf.score(x), y, th));
  }
  return report_from_counts(counts, budget.delta().has_value());
}

double empirical_lp_noise(double p, Eigen::Index d, double sigma, Eigen::Index n,
                          std::uint64_t seed) {
  if (!(p >= 1.0) || std::isinf(p)) {
    throw std::domain_error("empirical_lp_noise: p must be finite and >= 1; "
                            "use empirical_linf_noise for p = inf");
  }
  if (d <= 0 || n <= 0) throw std::domain_error("empirical_lp_noise: d and n must be positive");
  if (!(sigma > 0.0)) throw std::domain_error("empirical_lp_noise: sigma must be positive");
  CounterRng rng = CounterRng::stream(seed, 0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      s += std::pow(std::abs(sigma * rng.next_normal()), p);
    }
    sum += s;
  }
  return sum / static_cast<double>(n);
}

double empirical_linf_noise(Eigen::Index d, double sigma, Eigen::Index n, std::uint64_t seed) {
  if (d <= 0 || n <= 0) throw std::domain_error("empirical_linf_noise: d and n must be positive");
  if (!(sigma > 0.0)) throw std::domain_error("empirical_linf_noise: sigma must be positive");
  CounterRng rng = CounterRng::stream(seed, 0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      m = std::max(m, std::abs(sigma * rng.next_normal()));
    }
    sum += m;
  }
  return sum / static_cast<double>(n);
}

void write_csv(const LabeledDataset& data, std::ostream& out) {
  out << "label";
  for (Eigen::Index j = 0; j < data.d(); ++j) out << ",x" << j;
  out << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out << (data.labels[i] == Label::plus ? '+' : '-');
    for (Eigen::Index j = 0; j < data.d(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.points(i, j));
      out << ',' << buf;
    }
    out << "\n";
  }
}

}  // namespace advlin
