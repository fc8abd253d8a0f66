#include "opdyn/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace opdyn {

namespace {

bool is_truth(const BWRSystem& system, AgentId i) {
  return std::binary_search(system.truth_set.begin(), system.truth_set.end(), i);
}

}  // namespace

BWRSystem make_bwr_star(const std::vector<double>& learner_means, double truth_value,
                        double signal_tau, double tau0) {
  BWRSystem system;
  system.signal_tau = signal_tau;
  system.truth_set = {0};
  system.beliefs.reserve(learner_means.size() + 1);
  GaussianBelief truth;
  truth.mu = Eigen::VectorXd::Constant(1, truth_value);
  truth.tau = std::numeric_limits<double>::infinity();
  system.beliefs.push_back(std::move(truth));
  for (double m : learner_means) {
    GaussianBelief b;
    b.mu = Eigen::VectorXd::Constant(1, m);
    b.tau = tau0;
    system.beliefs.push_back(std::move(b));
  }
  validate(system);
  return system;
}

void validate(const BWRSystem& system) {
  if (system.beliefs.empty()) throw InvalidParameterError("BWR system has no agents");
  if (!(system.signal_tau >= 0.0))
    throw InvalidParameterError("signal precision must be nonnegative");
  const auto k = system.beliefs.front().mu.size();
  for (const auto& b : system.beliefs) {
    if (b.mu.size() != k) throw ShapeError("belief dimensions differ across agents");
    if (!(b.tau >= 0.0)) throw InvalidParameterError("belief precision must be nonnegative");
  }
  for (AgentId t : system.truth_set)
    if (t >= system.n()) throw InvalidParameterError("truth index out of range");
}

BWRSystem bwr_step(const BWRSystem& system, const GraphSnapshot& g,
                   rng::SplitMix64& gen) {
  validate(system);
  if (g.n != system.n())
    throw ShapeError("snapshot agent count does not match BWR system");
  if (system.signal_tau == 0.0) return system;  // infinitely noisy channel

  const double channel_var =
      std::isinf(system.signal_tau) ? 0.0 : 1.0 / system.signal_tau;
  const Eigen::Index k = system.beliefs.front().mu.size();

  BWRSystem next = system;
  for (std::uint32_t i = 0; i < g.n; ++i) {
    const auto& nb = g.out_neighbors[i];
    if (nb.empty() || is_truth(system, i)) continue;

    const double tau_i = system.beliefs[i].tau;
    const double gained = system.signal_tau * static_cast<double>(nb.size());
    Eigen::VectorXd signal_sum = Eigen::VectorXd::Zero(k);
    for (AgentId j : nb) {
      const double tau_j = system.beliefs[j].tau;
      const double belief_var = tau_j > 0.0 ? 1.0 / tau_j : 0.0;  // 0 for truths
      const double sd = std::sqrt(belief_var + channel_var);
      for (Eigen::Index c = 0; c < k; ++c)
        signal_sum[c] += system.beliefs[j].mu[c] + sd * rng::standard_normal(gen);
    }
    if (std::isinf(gained)) {
      // Noiseless channel: the posterior collapses onto the sample mean.
      next.beliefs[i].mu = signal_sum / static_cast<double>(nb.size());
      next.beliefs[i].tau = std::numeric_limits<double>::infinity();
    } else {
      next.beliefs[i].mu = (tau_i * system.beliefs[i].mu +
                            system.signal_tau * signal_sum) /
                           (tau_i + gained);
      next.beliefs[i].tau = tau_i + gained;
    }
  }
  return next;
}

SystemState bwr_expected_system(const BWRSystem& system) {
  validate(system);
  if (!(system.signal_tau > 0.0) || std::isinf(system.signal_tau))
    throw InvalidParameterError(
        "expectation mapping needs a finite positive signal precision");
  const std::uint32_t n = system.n();
  SystemState state;
  state.t = 0;
  state.x.resize(n, system.beliefs.front().mu.size());
  state.w.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    state.x.row(i) = system.beliefs[i].mu.transpose();
    state.w[i] = is_truth(system, i) ? 0.0 : system.beliefs[i].tau / system.signal_tau;
  }
  validate(state);
  return state;
}

GaussianBelief bayes_update(const GaussianBelief& estimator,
                            const Eigen::VectorXd& datum, double signal_tau) {
  if (!(signal_tau > 0.0) || std::isinf(signal_tau))
    throw InvalidParameterError("signal precision must be positive and finite");
  if (!(estimator.tau >= 0.0) || std::isinf(estimator.tau))
    throw InvalidParameterError("estimator precision must be finite and nonnegative");
  if (datum.size() != estimator.mu.size())
    throw ShapeError("datum dimension does not match estimator");
  GaussianBelief out;
  out.tau = estimator.tau + signal_tau;
  out.mu = (estimator.tau * estimator.mu + signal_tau * datum) / out.tau;
  return out;
}

BanditTrace bandit_run(BanditInstance instance, std::int64_t horizon,
                       std::uint64_t seed) {
  const int arms = instance.arms();
  if (arms < 1) throw InvalidParameterError("bandit needs at least one arm");
  if (!(instance.noise_sigma >= 0.0))
    throw InvalidParameterError("noise sigma must be nonnegative");
  if (horizon < arms)
    throw InvalidParameterError("horizon must cover at least one pull per arm");

  if (instance.estimators.empty()) {
    GaussianBelief fresh;
    fresh.mu = Eigen::VectorXd::Zero(1);
    fresh.tau = 0.0;
    instance.estimators.assign(arms, fresh);
  }
  if (static_cast<int>(instance.estimators.size()) != arms)
    throw ShapeError("estimator count does not match arm count");

  // Any positive precision recovers theta exactly when the noise vanishes.
  const double signal_tau = instance.noise_sigma > 0.0
                                ? 1.0 / (instance.noise_sigma * instance.noise_sigma)
                                : 1.0;

  BanditTrace trace;
  trace.t.reserve(horizon);
  trace.arm.reserve(horizon);
  trace.abs_error.reserve(horizon);
  trace.estimate.reserve(horizon);
  trace.precision.reserve(horizon);

  for (std::int64_t t = 0; t < horizon; ++t) {
    const int a = static_cast<int>(t % arms);
    rng::SplitMix64 gen(rng::derive(seed, rng::stream::bandit, static_cast<std::uint64_t>(t)));
    const double noise = instance.noise_sigma > 0.0
                             ? instance.noise_sigma * rng::standard_normal(gen)
                             : 0.0;
    Eigen::VectorXd datum = Eigen::VectorXd::Constant(1, instance.theta[a] + noise);
    instance.estimators[a] = bayes_update(instance.estimators[a], datum, signal_tau);

    trace.t.push_back(t);
    trace.arm.push_back(a);
    trace.abs_error.push_back(std::abs(instance.estimators[a].mu[0] - instance.theta[a]));
    trace.estimate.push_back(instance.estimators[a].mu[0]);
    trace.precision.push_back(instance.estimators[a].tau);
  }
  return trace;
}

}  // namespace opdyn
