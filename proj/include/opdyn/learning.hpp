#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "opdyn/dynamics.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/rng.hpp"

namespace opdyn {

/// Gaussian belief N(mu, 1/tau). tau = 0 is an uninformative prior; truth
/// agents carry tau = +infinity (a point mass that never moves).
struct GaussianBelief {
  Eigen::VectorXd mu;
  double tau = 0.0;
};

/// Bayesian-without-recall population: every agent holds a Gaussian belief,
/// signals travel over a noisy channel with precision signal_tau, and
/// precisions grow by signal_tau per received signal.
struct BWRSystem {
  std::vector<GaussianBelief> beliefs;
  double signal_tau = 1.0;
  std::vector<AgentId> truth_set;  // sorted

  std::uint32_t n() const { return static_cast<std::uint32_t>(beliefs.size()); }
  std::uint32_t k() const {
    return beliefs.empty() ? 0 : static_cast<std::uint32_t>(beliefs.front().mu.size());
  }
};

/// Star-shaped system: scalar beliefs, truth at index 0 pinned to
/// truth_value, learners with the given prior means and precision tau0.
BWRSystem make_bwr_star(const std::vector<double>& learner_means, double truth_value,
                        double signal_tau, double tau0 = 0.0);

void validate(const BWRSystem& system);

/// One synchronous BWR round. Each learner i draws one signal per neighbor j,
///   d_j ~ N(mu_j, sigma_j^2 + sigma^2),
/// where sigma_j^2 is the sender's belief variance (0 for truths and, by
/// convention, for tau = 0 priors) and sigma^2 = 1/signal_tau is the channel
/// noise, then posterior-updates:
///   mu_i  <- (tau_i mu_i + signal_tau * sum_j d_j) / (tau_i + signal_tau |N_i|)
///   tau_i <- tau_i + signal_tau |N_i|.
/// Signals are drawn from the pre-update beliefs (synchronous step).
/// Deterministic given the generator state; draws consume agents in index
/// order and neighbors in sorted order.
BWRSystem bwr_step(const BWRSystem& system, const GraphSnapshot& g,
                   rng::SplitMix64& gen);

/// Expectation mapping onto the self-confidence engine: x_i = mu_i,
/// w_i = tau_i / signal_tau (truths map to w = 0; their weight never enters).
/// Stepping the mapped state reproduces the mean of bwr_step.
SystemState bwr_expected_system(const BWRSystem& system);

/// Conjugate Gaussian mean update for one observation with known precision:
///   mu <- (tau mu + signal_tau d) / (tau + signal_tau),  tau <- tau + signal_tau.
GaussianBelief bayes_update(const GaussianBelief& estimator,
                            const Eigen::VectorXd& datum, double signal_tau);

/// K arms with unknown values theta_k observed through N(0, noise_sigma^2)
/// noise; one sequential Gaussian estimator per arm. Each (arm, estimator)
/// pair is a 2-agent truth/learner system in expectation.
struct BanditInstance {
  Eigen::VectorXd theta;
  double noise_sigma = 1.0;
  std::vector<GaussianBelief> estimators;  // sized on first use if empty

  int arms() const { return static_cast<int>(theta.size()); }
};

struct BanditTrace {
  std::vector<std::int64_t> t;  // pull index
  std::vector<int> arm;
  std::vector<double> abs_error;  // |mu_arm - theta_arm| after the pull
  std::vector<double> estimate;
  std::vector<double> precision;
};

/// Round-robin pulls for `horizon` steps (arm = t mod K), Bayes-updating the
/// pulled arm's estimator with theta_k + noise. Deterministic given seed.
/// noise_sigma = 0 uses unit signal precision; the estimate is exact after
/// the first pull either way.
BanditTrace bandit_run(BanditInstance instance, std::int64_t horizon,
                       std::uint64_t seed);

}  // namespace opdyn
