#include "opdyn/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace opdyn {

namespace {

void check_single_truth(const GraphSequence& seq, AgentId truth) {
  if (const auto* r = seq.random_variant()) {
    const auto& ts = r->model.truth_set;
    if (ts.size() != 1 || ts.front() != truth)
      throw UnsupportedAnalysisError(
          "influence analysis handles a single truth; the sequence's truth set "
          "does not match");
  }
}

Eigen::VectorXd ones_minus_row_sums(const Eigen::MatrixXd& p) {
  return Eigen::VectorXd::Ones(p.rows()) - p.rowwise().sum();
}

}  // namespace

Eigen::MatrixXd learner_block(const GraphSnapshot& g, const Eigen::VectorXd& w,
                              AgentId truth) {
  if (truth >= g.n) throw InvalidParameterError("truth index out of range");
  if (!g.out_neighbors[truth].empty())
    throw InvalidTruthError("truth agent has outgoing edges");
  const Eigen::MatrixXd m = update_matrix(g, w);
  const std::uint32_t nl = g.n - 1;
  Eigen::MatrixXd p(nl, nl);
  for (std::uint32_t i = 0, bi = 0; i < g.n; ++i) {
    if (i == truth) continue;
    for (std::uint32_t j = 0, bj = 0; j < g.n; ++j) {
      if (j == truth) continue;
      p(bi, bj) = m(i, j);
      ++bj;
    }
    ++bi;
  }
  return p;
}

Eigen::MatrixXd window_block(const GraphSequence& seq, Eigen::VectorXd init_w,
                             std::int64_t s, std::int64_t t, AgentId truth) {
  if (!(0 <= s && s <= t))
    throw InvalidParameterError("window must satisfy 0 <= s <= t");
  if (init_w.size() != static_cast<Eigen::Index>(seq.agent_count()))
    throw ShapeError("confidence vector length does not match sequence");
  check_single_truth(seq, truth);

  GraphSequence::Cursor cursor;
  const auto advance_w = [&](std::int64_t r) {
    const GraphSnapshot& g = seq.at(r, cursor);
    for (std::uint32_t i = 0; i < g.n; ++i)
      init_w[i] += static_cast<double>(g.out_neighbors[i].size());
  };

  for (std::int64_t r = 0; r < s; ++r) advance_w(r);

  const std::uint32_t nl = seq.agent_count() - 1;
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(nl, nl);
  for (std::int64_t r = s; r < t; ++r) {
    const GraphSnapshot& g = seq.at(r, cursor);
    prod = learner_block(g, init_w, truth) * prod;
    for (std::uint32_t i = 0; i < g.n; ++i)
      init_w[i] += static_cast<double>(g.out_neighbors[i].size());
  }
  return prod;
}

Eigen::VectorXd influence_step(const GraphSnapshot& g, const Eigen::VectorXd& w,
                               AgentId truth) {
  return ones_minus_row_sums(learner_block(g, w, truth));
}

Eigen::VectorXd influence_window(const GraphSequence& seq, Eigen::VectorXd init_w,
                                 std::int64_t s, std::int64_t t, AgentId truth) {
  if (!(0 <= s && s < t))
    throw InvalidParameterError("window must satisfy 0 <= s < t");
  return ones_minus_row_sums(window_block(seq, std::move(init_w), s, t, truth));
}

Eigen::VectorXd lemma1_bound(const GraphSequence& seq, Eigen::VectorXd w,
                             std::int64_t s, std::int64_t t, AgentId truth) {
  if (!(0 <= s && s < t))
    throw InvalidParameterError("window must satisfy 0 <= s < t");
  if (w.size() != static_cast<Eigen::Index>(seq.agent_count()))
    throw ShapeError("confidence vector length does not match sequence");
  check_single_truth(seq, truth);

  GraphSequence::Cursor cursor;
  const auto advance_w = [&](std::int64_t r) {
    const GraphSnapshot& g = seq.at(r, cursor);
    for (std::uint32_t i = 0; i < g.n; ++i)
      w[i] += static_cast<double>(g.out_neighbors[i].size());
  };

  for (std::int64_t r = 0; r < s; ++r) advance_w(r);

  const std::uint32_t nl = seq.agent_count() - 1;
  Eigen::VectorXd w_at_s = w;
  Eigen::VectorXd alpha_sum = Eigen::VectorXd::Zero(nl);
  for (std::int64_t r = s; r < t; ++r) {
    const GraphSnapshot& g = seq.at(r, cursor);
    alpha_sum += influence_step(g, w, truth);
    for (std::uint32_t i = 0; i < g.n; ++i)
      w[i] += static_cast<double>(g.out_neighbors[i].size());
  }

  // w now holds W(t); w_at_s holds W(s). Zero confidence at t means zero
  // confidence throughout the window, and the bound degenerates to 0.
  Eigen::VectorXd bound(nl);
  const AgentId n = seq.agent_count();
  for (std::uint32_t i = 0, bi = 0; i < n; ++i) {
    if (i == truth) continue;
    bound(bi) = w[i] > 0.0 ? (w_at_s[i] / w[i]) * alpha_sum(bi) : 0.0;
    ++bi;
  }
  return bound;
}

SpectralReport spectral_gap(const GraphSnapshot& g, AgentId truth) {
  if (truth >= g.n) throw InvalidParameterError("truth index out of range");
  if (!g.out_neighbors[truth].empty())
    throw InvalidTruthError("truth agent has outgoing edges");
  for (std::uint32_t i = 0; i < g.n; ++i)
    if (i != truth && g.out_neighbors[i].empty())
      throw SingularDegreeError("learner " + std::to_string(i) +
                                " has outdegree zero; degree matrix is singular");

  // Learner block of D^{-1}A (not weight-adjusted: the gap is a graph
  // quantity).
  const std::uint32_t nl = g.n - 1;
  Eigen::MatrixXd eb = Eigen::MatrixXd::Zero(nl, nl);
  for (std::uint32_t i = 0, bi = 0; i < g.n; ++i) {
    if (i == truth) continue;
    const double d = static_cast<double>(g.out_neighbors[i].size());
    for (AgentId j : g.out_neighbors[i]) {
      if (j == truth) continue;
      const std::uint32_t bj = j < truth ? j : j - 1;
      eb(bi, bj) += 1.0 / d;
    }
    ++bi;
  }

  SpectralReport report;
  if (nl > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(eb, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
      throw Error("eigenvalue iteration failed to converge");
    report.eigen_moduli.reserve(nl);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      report.eigen_moduli.push_back(std::abs(solver.eigenvalues()[i]));
    std::sort(report.eigen_moduli.rbegin(), report.eigen_moduli.rend());
    report.max_modulus = report.eigen_moduli.front();
  }
  report.nu = 1.0 - report.max_modulus;
  const auto reach = truth_reachability(g, truth);
  report.reachable = std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
  return report;
}

std::vector<std::complex<double>> circulant_eigenvalues(std::uint32_t learners,
                                                        std::uint32_t degree) {
  if (learners < 1) throw InvalidParameterError("need at least one learner");
  if (degree < 1 || degree > learners)
    throw InvalidParameterError("circulant degree must satisfy 1 <= d <= learners");
  std::vector<std::complex<double>> lambda(learners);
  for (std::uint32_t j = 0; j < learners; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(learners);
    const std::complex<double> omega = std::polar(1.0, angle);
    std::complex<double> sum = 0.0;
    std::complex<double> power = 1.0;
    for (std::uint32_t p = 0; p + 2 <= degree; ++p) {
      sum += power;
      power *= omega;
    }
    lambda[j] = sum / static_cast<double>(degree);
  }
  return lambda;
}

RateFit fit_polynomial_rate(const Trajectory& traj, double window_lo,
                            double window_hi) {
  if (!(window_lo <= window_hi))
    throw InvalidParameterError("fit window is empty");

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = static_cast<double>(traj.times[i]);
    if (t < 1.0 || t < window_lo || t > window_hi) continue;
    if (!(traj.sup_norm[i] > 0.0)) continue;
    xs.push_back(std::log(t));
    ys.push_back(std::log(traj.sup_norm[i]));
  }
  if (xs.size() < 2)
    throw UnfittableError("fewer than two positive samples in the fit window");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0)
    throw UnfittableError("all samples share one time; slope is undefined");

  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.points = static_cast<int>(xs.size());
  return fit;
}

std::pair<double, double> tail_window(const Trajectory& traj, double decades) {
  double hi = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    if (traj.times[i] >= 1 && traj.sup_norm[i] > 0.0)
      hi = static_cast<double>(traj.times[i]);
  if (hi < 1.0)
    throw UnfittableError("trajectory has no positive samples at t >= 1");
  return {std::max(1.0, hi / std::pow(10.0, decades)), hi};
}

}  // namespace opdyn
