#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "opdyn/errors.hpp"

namespace opdyn {

/// 0-based agent index. By convention the truth sits at index 0 in the
/// built-in constructions; analysis entry points take the truth index
/// explicitly.
using AgentId = std::uint32_t;

/// One directed interaction graph at a single time step. Edge i -> j means
/// agent i reads agent j's opinion. Self-loops are allowed; neighbor lists
/// are kept sorted and duplicate-free.
struct GraphSnapshot {
  std::uint32_t n = 0;
  std::vector<std::vector<AgentId>> out_neighbors;

  static GraphSnapshot empty(std::uint32_t n);
  /// Canonicalizes (sorts) and validates the given neighbor sets.
  static GraphSnapshot from_sets(std::uint32_t n, std::vector<std::vector<AgentId>> sets);

  bool operator==(const GraphSnapshot&) const = default;
};

/// Throws unless all ids are in range and every neighbor list is sorted and
/// duplicate-free.
void validate(const GraphSnapshot& g);

/// Per-agent outdegrees |N_i|.
std::vector<std::uint32_t> out_degrees(const GraphSnapshot& g);

/// Entry per learner (agents != truth, ascending id): true iff a directed
/// path learner -> ... -> truth exists. BFS from the truth over reversed
/// edges. The truth must have no outgoing edges.
std::vector<bool> truth_reachability(const GraphSnapshot& g, AgentId truth);

/// The tight fixed-graph construction: n = learners + 1 agents with the truth
/// at index 0. Learner i points to the truth plus the d-1 learners
/// i, i+1, ..., i+d-2 (wrapped over the learner ring), so every learner has
/// outdegree exactly d. For d = 1 the learner-learner block is empty.
GraphSnapshot build_circulant(std::uint32_t learners, std::uint32_t degree);

/// Every-step random rewiring: learner i draws degrees[i] distinct neighbors
/// uniformly from all n agents (itself and the truths included in the pool).
/// Truth agents never get neighbors.
struct RandomModel {
  std::uint32_t n = 0;
  std::vector<AgentId> truth_set;           // sorted
  std::vector<std::uint32_t> degrees;       // per agent; ignored for truths

  /// Common outdegree d for every learner, truths as given.
  static RandomModel uniform(std::uint32_t n, std::vector<AgentId> truth_set,
                             std::uint32_t d);
};

void validate(const RandomModel& m);

/// Snapshot for step t. Pure function of (model, seed, t): the same inputs
/// always produce the same graph, so replicates can run on any thread.
GraphSnapshot sample_random_snapshot(const RandomModel& m, std::int64_t t,
                                     std::uint64_t seed);

/// A rule producing the interaction graph for every step t >= 0.
class GraphSequence {
 public:
  struct Fixed {
    GraphSnapshot snapshot;
  };
  struct Periodic {
    std::vector<GraphSnapshot> period;
  };
  struct Random {
    RandomModel model;
    std::uint64_t seed = 0;
  };
  struct Explicit {
    std::vector<GraphSnapshot> snapshots;
    std::optional<GraphSnapshot> overflow;  // used past the end of the list
  };

  static GraphSequence fixed(GraphSnapshot g);
  static GraphSequence periodic(std::vector<GraphSnapshot> period);
  static GraphSequence random(RandomModel model, std::uint64_t seed);
  static GraphSequence explicit_list(std::vector<GraphSnapshot> snapshots,
                                     std::optional<GraphSnapshot> overflow = std::nullopt);

  /// Scratch space for the allocation-free accessor below.
  struct Cursor {
    GraphSnapshot snapshot;
    std::vector<std::uint32_t> pool;
  };

  /// The graph governing the step from t to t+1.
  GraphSnapshot snapshot_at(std::int64_t t) const;

  /// Same, but random snapshots are materialized into the cursor instead of
  /// allocating. The reference stays valid until the next call.
  const GraphSnapshot& at(std::int64_t t, Cursor& cursor) const;

  std::uint32_t agent_count() const { return n_; }

  const Random* random_variant() const { return std::get_if<Random>(&v_); }
  const Fixed* fixed_variant() const { return std::get_if<Fixed>(&v_); }
  const Periodic* periodic_variant() const { return std::get_if<Periodic>(&v_); }

 private:
  GraphSequence(std::variant<Fixed, Periodic, Random, Explicit> v, std::uint32_t n)
      : v_(std::move(v)), n_(n) {}

  std::variant<Fixed, Periodic, Random, Explicit> v_;
  std::uint32_t n_ = 0;
};

/// Periodic sequence realizing the tight periodic-rate construction: the
/// circulant graph fires at t = 0, T, 2T, ... and the other T-1 slots are
/// empty graphs, so each learner's total outdegree per period stays d.
GraphSequence build_periodic_tight(std::uint32_t learners, std::uint32_t degree,
                                   std::uint32_t period);

struct PeriodDegrees {
  std::vector<std::uint64_t> per_agent;  // total outdegree over one period
  std::uint64_t d_max = 0;               // max over agents (truths count 0)
};

/// Total per-period outdegrees. Fixed sequences are treated as period 1;
/// random/explicit sequences are rejected.
PeriodDegrees period_degrees(const GraphSequence& seq);

}  // namespace opdyn
