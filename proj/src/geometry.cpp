#include "advlin/geometry.hpp"

#include "advlin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace advlin {

namespace {

constexpr double kFeasibilitySlack = 1e-9;
constexpr int kBisectionCap = 200;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Unit vector orthogonal to the unit vector m, chosen deterministically:
// Gram-Schmidt against the basis vector with the smallest |m_j| (lowest index
// on ties). Only meaningful for d >= 2.
Vector orthogonal_to(const Vector& m) {
  Eigen::Index j = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (std::abs(m[i]) < best) {
      best = std::abs(m[i]);
      j = i;
    }
  }
  Vector o = -m[j] * m;
  o[j] += 1.0;
  o /= o.norm();
  o -= (o.dot(m)) * m;  // second pass keeps the dot at round-off level
  return o / o.norm();
}

// Maximizer of u.v over the unit lp ball: ||dir||_p = 1 and u.dir = ||u||_q.
// p = 1 concentrates on an argmax-|u_i| coordinate (lowest index on ties);
// p = inf is the sign vector.
Vector unit_ball_maximizer(const Vector& u, const NormOrder& p) {
  const Eigen::Index d = u.size();
  Vector v = Vector::Zero(d);
  if (p.p() == 1.0) {
    Eigen::Index j = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(u[i]) > best) {
        best = std::abs(u[i]);
        j = i;
      }
    }
    v[j] = sgn(u[j]);
    if (v[j] == 0.0) v[j] = 1.0;  // u == 0: any vertex attains the zero objective
    return v;
  }
  if (p.is_inf()) {
    for (Eigen::Index i = 0; i < d; ++i) v[i] = sgn(u[i]);
    return v;
  }
  if (p.p() == 2.0) {
    const double n = u.norm();
    return n == 0.0 ? v : Vector(u / n);
  }
  const double q = p.q();
  // Scale by the largest magnitude first so |u_i|^q cannot overflow.
  const double umax = u.cwiseAbs().maxCoeff();
  if (umax == 0.0) return v;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) sum += std::pow(std::abs(u[i]) / umax, q);
  const double unorm_q = umax * std::pow(sum, 1.0 / q);
  for (Eigen::Index i = 0; i < d; ++i) {
    v[i] = sgn(u[i]) * std::pow(std::abs(u[i]) / unorm_q, q - 1.0);
  }
  return v;
}

double dual_norm(const Vector& w, const NormOrder& p) {
  if (p.is_inf()) return w.cwiseAbs().sum();        // q = 1
  if (p.p() == 1.0) return w.cwiseAbs().maxCoeff();  // q = inf
  return lp_norm(w, NormOrder(p.q()));
}

Perturbation make_perturbation(Vector v, const NormOrder& p, const Vector& mu0) {
  Perturbation out;
  out.achieved_norm = lp_norm(v, p);
  out.signal_component = v.dot(mu0);
  out.direction = std::move(v);
  return out;
}

// Exact maximizer of w.v over the box [-eps, eps]^d intersected with
// {v.m <= delta}, assuming w.m >= 0 and the plain sign vector violates the
// cap. Greedy exchange: retreat coordinates in increasing order of objective
// cost per unit of v.m reduction until the cap is met.
Vector linf_capped_maximizer(const Vector& w, const Vector& m, double eps, double delta) {
  const Eigen::Index d = w.size();
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = eps * sgn(w[i]);
  double excess = v.dot(m) - delta;

  struct Move {
    Eigen::Index idx;
    double rate;      // objective lost per unit of v.m reduction
    double capacity;  // total v.m reduction available on this coordinate
  };
  std::vector<Move> moves;
  moves.reserve(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (m[i] == 0.0) continue;
    const double capacity = v[i] * m[i] + eps * std::abs(m[i]);
    if (capacity <= 0.0) continue;  // already at the retreat endpoint
    moves.push_back({i, w[i] / m[i], capacity});
  }
  std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
    return a.rate == b.rate ? a.idx < b.idx : a.rate < b.rate;
  });

  for (const Move& mv : moves) {
    if (excess <= 0.0) break;
    const double take = std::min(excess, mv.capacity);
    v[mv.idx] -= take / m[mv.idx];
    excess -= take;
  }
  return v;
}

}  // namespace

Vector normal_direction(const LinearClassifier& clf) { return clf.w() / clf.w().norm(); }

AngleDecomposition decompose(const LinearClassifier& clf, const GaussianMixtureSpec& mix) {
  if (clf.d() != mix.d()) {
    throw std::invalid_argument("decompose: classifier/mixture dimension mismatch");
  }
  const Vector v0 = normal_direction(clf);
  Vector m = mix.mu0();
  if (clf.w().dot(m) < 0.0) m = -m;  // fold the angle into [0, pi/2]

  const double c = std::clamp(v0.dot(m), 0.0, 1.0);
  Vector n = v0 - c * m;
  const double nn = n.norm();

  AngleDecomposition dec;
  if (nn <= 1e-14) {
    dec.theta = 0.0;  // parallel up to round-off
    return dec;
  }
  dec.theta = std::atan2(nn, c);
  n /= nn;
  n -= n.dot(m) * m;  // re-orthogonalize; near-parallel inputs need the second pass
  dec.n0 = n / n.norm();
  return dec;
}

Perturbation strong_perturbation_l2(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                    const PerturbationBudget& budget) {
  if (budget.p().p() != 2.0) {
    throw std::invalid_argument("strong_perturbation_l2: budget must be an l2 ball");
  }
  if (!budget.delta()) {
    throw std::invalid_argument("strong_perturbation_l2: budget carries no signal cap");
  }
  const double eps = budget.epsilon();
  const double delta = *budget.delta();
  if (eps <= 0.0) throw std::domain_error("strong_perturbation_l2: epsilon must be positive");

  const Vector mu0 = mix.mu0();
  const AngleDecomposition dec = decompose(clf, mix);
  Vector m = mu0;
  if (clf.w().dot(mu0) < 0.0) m = -m;

  const double beta = std::min(eps * std::cos(dec.theta), delta);
  if (clf.d() == 1) {
    // no orthogonal leg exists; the cap alone limits the attack
    return make_perturbation(beta * m, budget.p(), mu0);
  }
  const Vector n0 = dec.n0 ? *dec.n0 : orthogonal_to(m);
  const double orth = std::sqrt(std::max(eps * eps - beta * beta, 0.0));
  return make_perturbation(beta * m + orth * n0, budget.p(), mu0);
}

Perturbation lp_perturbation(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                             const PerturbationBudget& budget) {
  if (clf.d() != mix.d()) {
    throw std::invalid_argument("lp_perturbation: classifier/mixture dimension mismatch");
  }
  const double eps = budget.epsilon();
  if (eps <= 0.0) throw std::domain_error("lp_perturbation: epsilon must be positive");
  Vector v = eps * unit_ball_maximizer(clf.w(), budget.p());
  return make_perturbation(std::move(v), budget.p(), mix.mu0());
}

Perturbation lp_strong_perturbation(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                    const PerturbationBudget& budget) {
  if (clf.d() != mix.d()) {
    throw std::invalid_argument("lp_strong_perturbation: classifier/mixture dimension mismatch");
  }
  if (!budget.delta()) {
    throw std::invalid_argument("lp_strong_perturbation: budget carries no signal cap");
  }
  const double eps = budget.epsilon();
  const double delta = *budget.delta();
  if (eps <= 0.0) throw std::domain_error("lp_strong_perturbation: epsilon must be positive");
  const NormOrder& p = budget.p();

  const Vector mu0 = mix.mu0();
  const Vector& w = clf.w();

  // Unconstrained lp maximizer; done if it already respects the cap.
  Vector v_unc = eps * unit_ball_maximizer(w, p);
  const double unc_signal = v_unc.dot(mu0);
  if (std::abs(unc_signal) <= delta + kFeasibilitySlack) {
    return make_perturbation(std::move(v_unc), p, mu0);
  }

  // The cap binds on the side the unconstrained attack overshoots. Orient m so
  // the active facet is v.m = delta; by weak duality the one-sided solve below
  // is then globally optimal.
  const Vector m = unc_signal >= 0.0 ? mu0 : Vector(-mu0);

  Vector w_perp = w - w.dot(m) * m;
  if (w_perp.norm() <= 1e-12 * w.norm()) {
    // w parallel to the signal: every feasible v with v.m = delta is optimal.
    if (delta * lp_norm(m, p) <= eps * (1.0 + 1e-12)) {
      return make_perturbation(delta * m, p, mu0);
    }
    Vector v = (delta / (eps * dual_norm(m, p))) * eps * unit_ball_maximizer(m, p);
    return make_perturbation(std::move(v), p, mu0);
  }

  if (p.is_inf()) {
    Vector v = linf_capped_maximizer(w, m, eps, delta);
    return make_perturbation(std::move(v), p, mu0);
  }

  // Dual bisection on the cap multiplier: for lambda >= 0 the ball maximizer
  // of (w - lambda m).v is closed-form, and its signal component crosses
  // delta as lambda grows.
  auto signal_at = [&](double lambda, Vector* out) {
    Vector v = eps * unit_ball_maximizer(w - lambda * m, p);
    const double s = v.dot(m);
    if (out) *out = std::move(v);
    return s;
  };

  double lo = 0.0;
  double lo_sig = unc_signal >= 0.0 ? unc_signal : -unc_signal;  // = |v_unc.mu0| > delta
  double hi = w.norm();
  double hi_sig = signal_at(hi, nullptr);
  int doublings = 0;
  while (hi_sig > delta && doublings++ < kBisectionCap) {
    lo = hi;
    lo_sig = hi_sig;
    hi *= 2.0;
    hi_sig = signal_at(hi, nullptr);
  }
  if (hi_sig > delta) {
    std::ostringstream msg;
    msg << "lp_strong_perturbation: no bracketing multiplier after " << doublings
        << " doublings; residual v.m - delta = " << (hi_sig - delta);
    throw SolverError(msg.str());
  }

  for (int it = 0; it < kBisectionCap && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s = signal_at(mid, nullptr);
    if (s > delta) {
      lo = mid;
      lo_sig = s;
    } else {
      hi = mid;
      hi_sig = s;
    }
  }

  Vector v;
  const double mid_sig = signal_at(0.5 * (lo + hi), &v);
  if (mid_sig > delta + kFeasibilitySlack) {
    // converged onto a jump (p near 1): fall back to the feasible endpoint
    signal_at(hi, &v);
  }
  (void)lo_sig;
  return make_perturbation(std::move(v), p, mu0);
}

AttackThresholds attack_thresholds(const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                                   const PerturbationBudget& budget) {
  AttackThresholds th;
  th.adv_reach = budget.epsilon() * dual_norm(clf.w(), budget.p());
  if (budget.delta()) {
    if (budget.epsilon() == 0.0) {
      th.strong_reach = 0.0;
    } else if (budget.p().p() == 2.0) {
      th.strong_reach = clf.w().dot(strong_perturbation_l2(clf, mix, budget).direction);
    } else {
      th.strong_reach = clf.w().dot(lp_strong_perturbation(clf, mix, budget).direction);
    }
  }
  return th;
}

PointStatus status_from_score(double score, Label label, const AttackThresholds& th) {
  const Label predicted = score > 0.0 ? Label::plus : Label::minus;
  if (predicted != label) return PointStatus::misclassified;
  const auto flips = [&](double reach) {
    return predicted == Label::plus ? score - reach <= 0.0 : score + reach > 0.0;
  };
  if (th.strong_reach && flips(*th.strong_reach)) return PointStatus::strong_adversarial;
  if (flips(th.adv_reach)) return PointStatus::adversarial_only;
  return PointStatus::robust;
}

PointStatus point_status(const Eigen::Ref<const Vector>& x, Label label,
                         const LinearClassifier& clf, const GaussianMixtureSpec& mix,
                         const PerturbationBudget& budget) {
  if (x.size() != clf.d() || clf.d() != mix.d()) {
    throw std::invalid_argument("point_status: dimension mismatch");
  }
  return status_from_score(clf.score(x), label, attack_thresholds(clf, mix, budget));
}

std::optional<Perturbation> brute_force_adversarial_search(
    const Eigen::Ref<const Vector>& x, const LinearClassifier& clf,
    const GaussianMixtureSpec& mix, const PerturbationBudget& budget, std::int64_t trials,
    std::uint64_t seed) {
  if (trials <= 0) throw std::domain_error("brute_force_adversarial_search: trials must be > 0");
  const double eps = budget.epsilon();
  if (eps <= 0.0) return std::nullopt;  // the budget region is a single point

  const Vector mu0 = mix.mu0();
  const NormOrder& p = budget.p();
  const Label base = clf.decide(x);

  const auto feasible = [&](const Vector& v) {
    if (lp_norm(v, p) > eps + kFeasibilitySlack) return false;
    if (budget.delta() && std::abs(v.dot(mu0)) > *budget.delta() + kFeasibilitySlack) return false;
    return true;
  };
  const auto flips = [&](const Vector& v) { return clf.decide(x + v) != base; };
  const auto accept = [&](const Vector& v) -> std::optional<Perturbation> {
    if (feasible(v) && flips(v)) return make_perturbation(v, p, mu0);
    Vector neg = -v;
    if (feasible(neg) && flips(neg)) return make_perturbation(std::move(neg), p, mu0);
    return std::nullopt;
  };

  // Constructive candidates first.
  const Vector candidate = budget.delta()
                               ? (p.p() == 2.0 ? strong_perturbation_l2(clf, mix, budget)
                                               : lp_strong_perturbation(clf, mix, budget))
                                     .direction
                               : lp_perturbation(clf, mix, budget).direction;
  if (auto hit = accept(candidate)) return hit;

  CounterRng rng = CounterRng::stream(seed, 0);
  Vector v(x.size());
  for (std::int64_t t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.next_normal();
    const double n = lp_norm(v, p);
    if (n == 0.0) continue;
    v *= eps / n;
    if (budget.delta()) {
      const double sc = v.dot(mu0);
      if (std::abs(sc) > *budget.delta()) {
        v -= (sc - sgn(sc) * *budget.delta()) * mu0;
        const double n2 = lp_norm(v, p);
        if (n2 > eps) v *= eps / n2;  // rescaling shrinks the signal part too
      }
    }
    if (auto hit = accept(v)) return hit;
  }
  return std::nullopt;
}

}  // namespace advlin
