#include "opdyn/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "opdyn/rng.hpp"

namespace opdyn {

GraphSnapshot GraphSnapshot::empty(std::uint32_t n) {
  GraphSnapshot g;
  g.n = n;
  g.out_neighbors.resize(n);
  return g;
}

GraphSnapshot GraphSnapshot::from_sets(std::uint32_t n,
                                       std::vector<std::vector<AgentId>> sets) {
  if (sets.size() != n)
    throw ShapeError("neighbor-set count does not match agent count");
  GraphSnapshot g;
  g.n = n;
  g.out_neighbors = std::move(sets);
  for (auto& nb : g.out_neighbors) std::sort(nb.begin(), nb.end());
  validate(g);
  return g;
}

void validate(const GraphSnapshot& g) {
  if (g.out_neighbors.size() != g.n)
    throw ShapeError("neighbor-set count does not match agent count");
  for (std::uint32_t i = 0; i < g.n; ++i) {
    const auto& nb = g.out_neighbors[i];
    for (std::size_t j = 0; j < nb.size(); ++j) {
      if (nb[j] >= g.n)
        throw ValidationError("neighbor id " + std::to_string(nb[j]) +
                              " of agent " + std::to_string(i) + " out of range");
      if (j > 0 && nb[j - 1] >= nb[j])
        throw ValidationError("neighbor set of agent " + std::to_string(i) +
                              " is not a sorted set (duplicate or unordered entry)");
    }
  }
}

std::vector<std::uint32_t> out_degrees(const GraphSnapshot& g) {
  std::vector<std::uint32_t> d(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i)
    d[i] = static_cast<std::uint32_t>(g.out_neighbors[i].size());
  return d;
}

std::vector<bool> truth_reachability(const GraphSnapshot& g, AgentId truth) {
  if (truth >= g.n) throw InvalidParameterError("truth index out of range");
  if (!g.out_neighbors[truth].empty())
    throw InvalidTruthError("truth agent has outgoing edges");

  // Reverse adjacency: who listens to whom.
  std::vector<std::vector<AgentId>> in(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i)
    for (AgentId j : g.out_neighbors[i]) in[j].push_back(i);

  std::vector<bool> seen(g.n, false);
  seen[truth] = true;
  std::deque<AgentId> queue{truth};
  while (!queue.empty()) {
    const AgentId v = queue.front();
    queue.pop_front();
    for (AgentId u : in[v]) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }

  std::vector<bool> reach;
  reach.reserve(g.n - 1);
  for (std::uint32_t i = 0; i < g.n; ++i)
    if (i != truth) reach.push_back(seen[i]);
  return reach;
}

GraphSnapshot build_circulant(std::uint32_t learners, std::uint32_t degree) {
  if (learners < 1) throw InvalidParameterError("need at least one learner");
  if (degree < 1 || degree > learners)
    throw InvalidParameterError("circulant degree must satisfy 1 <= d <= learners");

  GraphSnapshot g = GraphSnapshot::empty(learners + 1);
  for (std::uint32_t i = 1; i <= learners; ++i) {
    auto& nb = g.out_neighbors[i];
    nb.push_back(0);
    for (std::uint32_t step = 0; step + 2 <= degree; ++step) {
      // learner ring position of i is i-1; wrap and map back to agent ids
      nb.push_back(1 + (i - 1 + step) % learners);
    }
    std::sort(nb.begin(), nb.end());
  }
  validate(g);
  return g;
}

RandomModel RandomModel::uniform(std::uint32_t n, std::vector<AgentId> truth_set,
                                 std::uint32_t d) {
  RandomModel m;
  m.n = n;
  m.truth_set = std::move(truth_set);
  std::sort(m.truth_set.begin(), m.truth_set.end());
  m.degrees.assign(n, d);
  for (AgentId t : m.truth_set)
    if (t < n) m.degrees[t] = 0;
  validate(m);
  return m;
}

void validate(const RandomModel& m) {
  if (m.n == 0) throw InvalidParameterError("random model needs at least one agent");
  if (m.degrees.size() != m.n)
    throw ShapeError("degree vector does not match agent count");
  for (AgentId t : m.truth_set)
    if (t >= m.n) throw InvalidParameterError("truth index out of range");
  for (std::uint32_t i = 0; i < m.n; ++i) {
    const bool is_truth =
        std::binary_search(m.truth_set.begin(), m.truth_set.end(), i);
    if (is_truth) continue;
    if (m.degrees[i] < 1 || m.degrees[i] > m.n)
      throw InvalidParameterError("learner outdegree must satisfy 1 <= d_i <= n");
  }
}

namespace {

void sample_random_snapshot_into(const RandomModel& m, std::int64_t t,
                                 std::uint64_t seed, GraphSnapshot& out,
                                 std::vector<std::uint32_t>& pool) {
  out.n = m.n;
  out.out_neighbors.resize(m.n);
  rng::SplitMix64 g(rng::derive(seed, rng::stream::graph, static_cast<std::uint64_t>(t)));
  auto truth_it = m.truth_set.begin();
  for (std::uint32_t i = 0; i < m.n; ++i) {
    auto& nb = out.out_neighbors[i];
    if (truth_it != m.truth_set.end() && *truth_it == i) {
      ++truth_it;
      nb.clear();
      continue;
    }
    rng::sample_distinct(g, m.n, m.degrees[i], pool, nb);
  }
}

}  // namespace

GraphSnapshot sample_random_snapshot(const RandomModel& m, std::int64_t t,
                                     std::uint64_t seed) {
  validate(m);
  if (t < 0) throw InvalidParameterError("time must be nonnegative");
  GraphSnapshot out;
  std::vector<std::uint32_t> pool;
  sample_random_snapshot_into(m, t, seed, out, pool);
  return out;
}

GraphSequence GraphSequence::fixed(GraphSnapshot g) {
  validate(g);
  const std::uint32_t n = g.n;
  return GraphSequence(Fixed{std::move(g)}, n);
}

GraphSequence GraphSequence::periodic(std::vector<GraphSnapshot> period) {
  if (period.empty())
    throw InvalidParameterError("periodic sequence needs at least one snapshot");
  const std::uint32_t n = period.front().n;
  for (const auto& g : period) {
    validate(g);
    if (g.n != n) throw ShapeError("all snapshots in a period must share the agent count");
  }
  return GraphSequence(Periodic{std::move(period)}, n);
}

GraphSequence GraphSequence::random(RandomModel model, std::uint64_t seed) {
  validate(model);
  const std::uint32_t n = model.n;
  return GraphSequence(Random{std::move(model), seed}, n);
}

GraphSequence GraphSequence::explicit_list(std::vector<GraphSnapshot> snapshots,
                                           std::optional<GraphSnapshot> overflow) {
  if (snapshots.empty() && !overflow)
    throw InvalidParameterError("explicit sequence needs snapshots or a default");
  const std::uint32_t n = snapshots.empty() ? overflow->n : snapshots.front().n;
  for (const auto& g : snapshots) {
    validate(g);
    if (g.n != n) throw ShapeError("all explicit snapshots must share the agent count");
  }
  if (overflow) {
    validate(*overflow);
    if (overflow->n != n)
      throw ShapeError("default snapshot must share the agent count");
  }
  return GraphSequence(Explicit{std::move(snapshots), std::move(overflow)}, n);
}

GraphSnapshot GraphSequence::snapshot_at(std::int64_t t) const {
  Cursor cursor;
  return at(t, cursor);
}

const GraphSnapshot& GraphSequence::at(std::int64_t t, Cursor& cursor) const {
  if (t < 0) throw InvalidParameterError("time must be nonnegative");
  if (const auto* f = std::get_if<Fixed>(&v_)) return f->snapshot;
  if (const auto* p = std::get_if<Periodic>(&v_))
    return p->period[static_cast<std::size_t>(t % static_cast<std::int64_t>(p->period.size()))];
  if (const auto* r = std::get_if<Random>(&v_)) {
    sample_random_snapshot_into(r->model, t, r->seed, cursor.snapshot, cursor.pool);
    return cursor.snapshot;
  }
  const auto& e = std::get<Explicit>(v_);
  if (t < static_cast<std::int64_t>(e.snapshots.size()))
    return e.snapshots[static_cast<std::size_t>(t)];
  if (e.overflow) return *e.overflow;
  throw ValidationError("explicit sequence exhausted at t=" + std::to_string(t) +
                        " and no default snapshot was given");
}

GraphSequence build_periodic_tight(std::uint32_t learners, std::uint32_t degree,
                                   std::uint32_t period) {
  if (period < 1) throw InvalidParameterError("period must be >= 1");
  std::vector<GraphSnapshot> snaps;
  snaps.reserve(period);
  snaps.push_back(build_circulant(learners, degree));
  for (std::uint32_t r = 1; r < period; ++r)
    snaps.push_back(GraphSnapshot::empty(learners + 1));
  return GraphSequence::periodic(std::move(snaps));
}

PeriodDegrees period_degrees(const GraphSequence& seq) {
  std::vector<const GraphSnapshot*> snaps;
  if (const auto* f = seq.fixed_variant()) {
    snaps.push_back(&f->snapshot);
  } else if (const auto* p = seq.periodic_variant()) {
    for (const auto& g : p->period) snaps.push_back(&g);
  } else {
    throw UnsupportedSequenceError(
        "period degrees are defined for fixed and periodic sequences only");
  }

  PeriodDegrees result;
  result.per_agent.assign(seq.agent_count(), 0);
  for (const auto* g : snaps)
    for (std::uint32_t i = 0; i < g->n; ++i)
      result.per_agent[i] += g->out_neighbors[i].size();
  for (std::uint64_t d : result.per_agent) result.d_max = std::max(result.d_max, d);
  return result;
}

}  // namespace opdyn
