#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "opdyn/dynamics.hpp"
#include "opdyn/graph.hpp"

namespace opdyn {

/// Learner block P of the full update matrix (W+D)^{-1}(W+A): the truth row
/// and column are removed, leaving an (n-1)x(n-1) sub-stochastic matrix.
/// Learner indices follow agent order with the truth skipped.
Eigen::MatrixXd learner_block(const GraphSnapshot& g, const Eigen::VectorXd& w,
                              AgentId truth);

/// Ordered learner-block product P(t:s) = P(t-1) P(t-2) ... P(s), with
/// P(s:s) = I. Each factor is built from the confidences evolved from
/// `init_w` (at time 0) through the sequence.
Eigen::MatrixXd window_block(const GraphSequence& seq, Eigen::VectorXd init_w,
                             std::int64_t s, std::int64_t t, AgentId truth);

/// Single-step influence indicator alpha(s) = 1 - P(s) 1: per learner, the
/// share of this step's update mass received straight from the truth.
Eigen::VectorXd influence_step(const GraphSnapshot& g, const Eigen::VectorXd& w,
                               AgentId truth);

/// Windowed influence indicator alpha(t:s) = 1 - P(t:s) 1.
Eigen::VectorXd influence_window(const GraphSequence& seq, Eigen::VectorXd init_w,
                                 std::int64_t s, std::int64_t t, AgentId truth);

/// Elementwise lower bound on alpha(t:s):
///   W^{-1}(t) W(s) * sum_{k=s}^{t-1} alpha(k),
/// read as 0 wherever w_i(t) = 0.
Eigen::VectorXd lemma1_bound(const GraphSequence& seq, Eigen::VectorXd init_w,
                             std::int64_t s, std::int64_t t, AgentId truth);

struct SpectralReport {
  /// Moduli of all learner-block eigenvalues of D^{-1}A, largest first.
  std::vector<double> eigen_moduli;
  double max_modulus = 0.0;
  /// Spectral gap nu = 1 - max_modulus; drives the t^{-nu} convergence rate.
  double nu = 0.0;
  /// True iff every learner has a directed path to the truth.
  bool reachable = false;
};

/// Eigenvalues of the learner block of D^{-1}A (a pure graph quantity;
/// confidences do not enter). Every learner needs outdegree >= 1.
SpectralReport spectral_gap(const GraphSnapshot& g, AgentId truth);

/// Closed-form learner-block spectrum of the circulant construction:
///   lambda_j = (1 + w_j + ... + w_j^{d-2}) / d,  w_j = exp(2 pi i j / L).
/// For d = 1 all eigenvalues are zero. Serves as the oracle for the numeric
/// solver.
std::vector<std::complex<double>> circulant_eigenvalues(std::uint32_t learners,
                                                        std::uint32_t degree);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  int points = 0;
};

/// Ordinary least squares of log(sup_norm) against log(t) over recorded times
/// in [window_lo, window_hi]. Samples with t < 1 or sup_norm <= 0 are
/// skipped; fewer than two usable samples is an error.
RateFit fit_polynomial_rate(const Trajectory& traj, double window_lo,
                            double window_hi);

/// Default fit window: the trailing `decades` decades of recorded time with
/// positive sup-norm, [t_hi / 10^decades, t_hi].
std::pair<double, double> tail_window(const Trajectory& traj, double decades = 2.0);

}  // namespace opdyn
