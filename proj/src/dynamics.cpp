#include "opdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opdyn {

SystemState make_state(const Eigen::VectorXd& opinions) {
  return make_state(opinions, Eigen::VectorXd::Zero(opinions.size()));
}

SystemState make_state(const Eigen::VectorXd& opinions, const Eigen::VectorXd& w0) {
  SystemState st;
  st.t = 0;
  st.x = opinions;
  st.w = w0;
  validate(st);
  return st;
}

void validate(const SystemState& state) {
  if (state.w.size() != state.x.rows())
    throw ShapeError("confidence vector length does not match agent count");
  for (Eigen::Index i = 0; i < state.w.size(); ++i)
    if (!(state.w[i] >= 0.0))
      throw InvalidStateError("self-confidence of agent " + std::to_string(i) +
                              " is negative or NaN");
}

namespace {

void check_step_inputs(const SystemState& state, const GraphSnapshot& g) {
  if (g.n != state.n())
    throw ShapeError("snapshot agent count does not match state");
  validate(state);
}

// x(t+1) into `next`; w and t updated in place. `next` must be n x k.
void step_agentwise_into(SystemState& state, const GraphSnapshot& g,
                         Eigen::MatrixXd& next) {
  const Eigen::Index k = state.x.cols();
  const std::uint32_t n = state.n();
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& nb = g.out_neighbors[i];
    if (nb.empty()) {
      next.row(i) = state.x.row(i);
      continue;
    }
    const double wi = state.w[i];
    const double denom = wi + static_cast<double>(nb.size());
    for (Eigen::Index c = 0; c < k; ++c) {
      double acc = wi * state.x(i, c);
      for (AgentId j : nb) acc += state.x(j, c);
      next(i, c) = acc / denom;
    }
    state.w[i] = denom;
  }
  ++state.t;
}

}  // namespace

SystemState step_agentwise(const SystemState& state, const GraphSnapshot& g) {
  check_step_inputs(state, g);
  SystemState out = state;
  Eigen::MatrixXd next(state.x.rows(), state.x.cols());
  step_agentwise_into(out, g, next);
  out.x.swap(next);
  return out;
}

Eigen::MatrixXd update_matrix(const GraphSnapshot& g, const Eigen::VectorXd& w) {
  if (w.size() != static_cast<Eigen::Index>(g.n))
    throw ShapeError("confidence vector length does not match snapshot");
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (!(w[i] >= 0.0)) throw InvalidStateError("negative self-confidence");

  const std::uint32_t n = g.n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& nb = g.out_neighbors[i];
    const double denom = w[i] + static_cast<double>(nb.size());
    if (denom == 0.0) {
      m(i, i) = 1.0;  // agent never interacts: identity row
      continue;
    }
    m(i, i) = w[i] / denom;
    for (AgentId j : nb) m(i, j) += 1.0 / denom;
  }

  // Row-stochasticity and the diagonal bound are structural; a violation
  // means the construction above is broken, so fail loudly.
  for (std::uint32_t i = 0; i < n; ++i) {
    const double row_sum = m.row(i).sum();
    if (std::abs(row_sum - 1.0) > 1e-12)
      throw Error("update matrix row " + std::to_string(i) + " sums to " +
                  std::to_string(row_sum));
    const double d = static_cast<double>(g.out_neighbors[i].size());
    if (w[i] + d > 0.0 && m(i, i) < w[i] / (w[i] + d) - 1e-15)
      throw Error("update matrix diagonal bound violated in row " + std::to_string(i));
  }
  return m;
}

SystemState step_matrix(const SystemState& state, const GraphSnapshot& g) {
  check_step_inputs(state, g);
  SystemState out = state;
  const Eigen::MatrixXd m = update_matrix(g, state.w);
  out.x = m * state.x;
  for (std::uint32_t i = 0; i < g.n; ++i)
    out.w[i] += static_cast<double>(g.out_neighbors[i].size());
  ++out.t;
  return out;
}

double sup_norm_to_truth(const SystemState& state, AgentId truth) {
  if (truth >= state.n()) throw InvalidParameterError("truth index out of range");
  double sup = 0.0;
  for (std::uint32_t i = 0; i < state.n(); ++i) {
    if (i == truth) continue;
    const double dist =
        (state.x.row(i) - state.x.row(truth)).cwiseAbs().maxCoeff();
    sup = std::max(sup, dist);
  }
  return sup;
}

std::vector<std::int64_t> geometric_schedule(std::int64_t horizon, double ratio) {
  if (horizon < 0) throw InvalidParameterError("horizon must be nonnegative");
  if (!(ratio > 1.0)) throw InvalidParameterError("record ratio must exceed 1");
  std::vector<std::int64_t> times{0};
  for (std::int64_t t = 1; t < horizon;) {
    times.push_back(t);
    t = std::max(t + 1, std::llround(static_cast<double>(t) * ratio));
  }
  if (horizon > 0) times.push_back(horizon);
  return times;
}

Trajectory run(const GraphSequence& seq, SystemState state, std::int64_t horizon,
               const RunOptions& opts) {
  if (horizon < 0) throw InvalidParameterError("horizon must be nonnegative");
  if (seq.agent_count() != state.n())
    throw ShapeError("sequence agent count does not match state");
  validate(state);
  if (opts.truth >= state.n())
    throw InvalidParameterError("truth index out of range");

  const std::vector<std::int64_t> schedule =
      opts.record_times.empty() ? geometric_schedule(horizon, opts.record_ratio)
                                : opts.record_times;

  Trajectory traj;
  traj.times.reserve(schedule.size());
  traj.sup_norm.reserve(schedule.size());

  GraphSequence::Cursor cursor;
  Eigen::MatrixXd next(state.x.rows(), state.x.cols());
  double sup = sup_norm_to_truth(state, opts.truth);
  std::size_t si = 0;

  const auto record = [&](std::int64_t t) {
    traj.times.push_back(t);
    traj.sup_norm.push_back(sup);
    if (opts.state_stride > 0 && t % opts.state_stride == 0)
      traj.states.emplace_back(t, state.x);
  };

  for (std::int64_t t = 0; t < horizon; ++t) {
    while (si < schedule.size() && schedule[si] == t) {
      record(t);
      ++si;
    }
    const GraphSnapshot& g = seq.at(t, cursor);
    if (g.n != state.n())
      throw ShapeError("snapshot agent count changed mid-sequence");
    step_agentwise_into(state, g, next);
    state.x.swap(next);
    const double sup_next = sup_norm_to_truth(state, opts.truth);
    traj.max_sup_increase = std::max(traj.max_sup_increase, sup_next - sup);
    sup = sup_next;
  }
  while (si < schedule.size() && schedule[si] <= horizon) {
    record(schedule[si]);
    ++si;
  }
  return traj;
}

Eigen::MatrixXd fixed_closed_form(const GraphSnapshot& g, const Eigen::MatrixXd& x0,
                                  std::int64_t t) {
  if (t < 1) throw InvalidParameterError("closed form is defined for t >= 1");
  if (x0.rows() != static_cast<Eigen::Index>(g.n))
    throw ShapeError("initial opinions do not match snapshot agent count");
  if (!g.out_neighbors[0].empty())
    throw InvalidTruthError("closed form expects the truth at index 0");
  for (std::uint32_t i = 1; i < g.n; ++i)
    if (g.out_neighbors[i].empty())
      throw SingularDegreeError("learner " + std::to_string(i) +
                                " has outdegree zero; degree matrix is singular");

  // R = D^{-1}A with the conventional self-loop on the truth row, which makes
  // that row the identity and leaves the dynamics untouched.
  const std::uint32_t n = g.n;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  r(0, 0) = 1.0;
  for (std::uint32_t i = 1; i < n; ++i) {
    const double d = static_cast<double>(g.out_neighbors[i].size());
    for (AgentId j : g.out_neighbors[i]) r(i, j) += 1.0 / d;
  }

  Eigen::MatrixXd partial_sums = x0;  // S(s) = x(s) + ... + x(0)
  for (std::int64_t s = 1; s < t; ++s)
    partial_sums += (r * partial_sums) / static_cast<double>(s);
  return (r * partial_sums) / static_cast<double>(t);
}

}  // namespace opdyn
