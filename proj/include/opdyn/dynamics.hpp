#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "opdyn/graph.hpp"

namespace opdyn {

/// Opinions and self-confidences of all n agents at step t. Opinions live in
/// a k-dimensional opinion space (row per agent, k = 1 by default); the
/// update acts coordinatewise. Self-confidences are nonnegative and only ever
/// grow: each step adds the agent's current outdegree.
struct SystemState {
  std::int64_t t = 0;
  Eigen::MatrixXd x;  // n x k opinions
  Eigen::VectorXd w;  // n self-confidences

  std::uint32_t n() const { return static_cast<std::uint32_t>(x.rows()); }
  std::uint32_t k() const { return static_cast<std::uint32_t>(x.cols()); }
};

/// State with scalar opinions, zero clock, and the given self-confidences
/// (zero by default).
SystemState make_state(const Eigen::VectorXd& opinions);
SystemState make_state(const Eigen::VectorXd& opinions, const Eigen::VectorXd& w0);

void validate(const SystemState& state);

/// One synchronous step of the agent-wise update: every interacting agent
/// moves to the convex combination of its own opinion (weight w_i) and its
/// neighbors' opinions (weight 1 each), then adds |N_i| to w_i. Agents with
/// no neighbors keep opinion and weight.
SystemState step_agentwise(const SystemState& state, const GraphSnapshot& g);

/// The row-stochastic update matrix M = (W+D)^{-1}(W+A), with row i replaced
/// by the identity row whenever w_i + |N_i| = 0. Row sums and the diagonal
/// lower bound w_i/(w_i+|N_i|) are asserted on construction.
Eigen::MatrixXd update_matrix(const GraphSnapshot& g, const Eigen::VectorXd& w);

/// Matrix form of the same step: x' = M x. Weight and clock bookkeeping are
/// identical to step_agentwise; the two are an exactness oracle for each
/// other.
SystemState step_matrix(const SystemState& state, const GraphSnapshot& g);

/// Max over non-truth agents of the infinity-norm distance to the truth's
/// opinion row.
double sup_norm_to_truth(const SystemState& state, AgentId truth);

/// Record times 0 < t_0 < t_1 < ... <= horizon with t_{j+1} ~ ratio * t_j
/// (always advancing by at least 1), plus t = 0 and t = horizon.
std::vector<std::int64_t> geometric_schedule(std::int64_t horizon, double ratio);

struct RunOptions {
  double record_ratio = 1.25;
  /// Explicit record times override the geometric schedule when nonempty.
  std::vector<std::int64_t> record_times;
  AgentId truth = 0;
  /// When > 0, keep a full state copy every `state_stride` steps.
  std::int64_t state_stride = 0;
};

struct Trajectory {
  std::vector<std::int64_t> times;
  std::vector<double> sup_norm;
  /// Largest single-step increase of the sup-norm seen while running
  /// (should never exceed roundoff when a single static truth exists).
  double max_sup_increase = 0.0;
  std::vector<std::pair<std::int64_t, Eigen::MatrixXd>> states;
};

/// Drives step_agentwise with snapshot_at(t) for t = 0 .. horizon-1 and
/// records the sup-norm distance to the truth on the record schedule.
Trajectory run(const GraphSequence& seq, SystemState state, std::int64_t horizon,
               const RunOptions& opts = {});

/// Closed-form opinions at time t >= 1 for a fixed graph with a single truth
/// at index 0 and zero initial confidence:
///   x(t) = (D^{-1}A / t) * prod_{s=1}^{t-1} (I + D^{-1}A / s) * x(0),
/// evaluated through the partial-sum recursion S(s+1) = (I + D^{-1}A/(s+1)) S(s)
/// so the unbounded product never materializes. Every learner needs positive
/// outdegree.
Eigen::MatrixXd fixed_closed_form(const GraphSnapshot& g, const Eigen::MatrixXd& x0,
                                  std::int64_t t);

}  // namespace opdyn
