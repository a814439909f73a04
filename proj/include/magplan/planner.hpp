#pragma once

// Partitioning planner: split the managed nodes into sub-networks whose
// closed agent walks each fit within delta, the farthest node's round-trip
// time, and emit one data agent per sub-network.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "magplan/itinerary.hpp"
#include "magplan/routing.hpp"
#include "magplan/topology.hpp"

namespace magplan {

enum class PlanModel { MmapDynamic, Accumulative, Interactive };

inline std::string_view model_name(PlanModel m) {
  switch (m) {
    case PlanModel::MmapDynamic: return "mmap";
    case PlanModel::Accumulative: return "accumulative";
    case PlanModel::Interactive: return "interactive";
  }
  throw std::logic_error("unknown plan model");
}

inline std::optional<PlanModel> parse_model(std::string_view s) {
  if (s == "mmap") return PlanModel::MmapDynamic;
  if (s == "accumulative") return PlanModel::Accumulative;
  if (s == "interactive") return PlanModel::Interactive;
  return std::nullopt;
}

struct Partition {
  NodeId anchor = kNoNode;          // farthest node that seeded the partition
  std::vector<NodeId> assigned;     // sorted; nodes this agent collects
  Walk walk;
};

struct Plan {
  PlanModel model = PlanModel::MmapDynamic;
  Latency delta = 0.0;              // max tour time over managed nodes
  Latency makespan = 0.0;           // max partition walk time
  std::size_t agent_count = 0;
  std::vector<Partition> partitions;  // ordered by anchor rank
};

// Absolute slack when comparing walk times against delta; absorbs float
// rounding on decimal-weight inputs (integer weights compare exactly).
inline constexpr Latency kDeltaSlack = 1e-9;

inline Plan plan_mmap(const Topology& t) {
  std::vector<RankedNode> ranked = ranked_nodes(t);  // rejects empty networks
  PathOracle oracle(t);
  const ShortestPathTree& home_spt = oracle.from(t.home());

  Plan plan;
  plan.model = PlanModel::MmapDynamic;
  plan.delta = ranked.front().tour_time;

  std::vector<char> assigned(t.node_count(), 0);
  std::size_t remaining = ranked.size();

  for (const RankedNode& anchor : ranked) {
    if (assigned[anchor.id]) continue;

    // Seed with the anchor plus every unassigned node on its shortest path;
    // those are collected in transit at no extra travel cost.
    std::vector<NodeId> members;
    for (NodeId v : path_to(home_spt, anchor.id))
      if (v != t.home() && !assigned[v]) {
        members.push_back(v);
        assigned[v] = 1;
        --remaining;
      }

    // Extend with further nodes in rank order while the enlarged walk still
    // fits the budget; rejected nodes stay for later partitions.
    if (remaining > 0) {
      for (const RankedNode& candidate : ranked) {
        if (assigned[candidate.id]) continue;
        std::vector<NodeId> trial = members;
        trial.push_back(candidate.id);
        Walk enlarged = optimal_closed_walk(oracle, std::move(trial));
        if (walk_time(enlarged) <= plan.delta + kDeltaSlack) {
          members.push_back(candidate.id);
          assigned[candidate.id] = 1;
          --remaining;
        }
      }
    }

    Partition part;
    part.anchor = anchor.id;
    part.walk = optimal_closed_walk(oracle, members);
    std::sort(members.begin(), members.end());
    part.assigned = std::move(members);
    plan.partitions.push_back(std::move(part));
    if (remaining == 0) break;
  }

  plan.agent_count = plan.partitions.size();
  for (const Partition& p : plan.partitions)
    plan.makespan = std::max(plan.makespan, walk_time(p.walk));
  return plan;
}

struct PlanSummary {
  PlanModel model;
  std::size_t nodes;       // managed (non-home) node count
  std::size_t partitions;
  std::size_t agents;
  Latency delta;
  Latency makespan;
};

inline PlanSummary plan_summary(const Plan& p) {
  std::size_t nodes = 0;
  for (const Partition& part : p.partitions) nodes += part.assigned.size();
  return PlanSummary{p.model, nodes, p.partitions.size(), p.agent_count,
                     p.delta, p.makespan};
}

}  // namespace magplan
