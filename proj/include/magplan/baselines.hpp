#pragma once

// Comparison models: Accumulative (one agent walks the whole network,
// accumulating payload) and Interactive (one agent per managed node, each
// doing an independent out-and-back).

#include <algorithm>
#include <vector>

#include "magplan/itinerary.hpp"
#include "magplan/planner.hpp"
#include "magplan/routing.hpp"
#include "magplan/topology.hpp"

namespace magplan {

// Single agent, single partition over every managed node. The walk comes
// from the closed-walk solver (exact up to kExactTargetLimit targets,
// heuristic beyond), which can only flatter this baseline.
inline Plan plan_accumulative(const Topology& t) {
  std::vector<RankedNode> ranked = ranked_nodes(t);
  PathOracle oracle(t);

  Plan plan;
  plan.model = PlanModel::Accumulative;
  plan.delta = ranked.front().tour_time;

  Partition part;
  part.anchor = ranked.front().id;
  part.assigned = t.managed_nodes();
  part.walk = optimal_closed_walk(oracle, part.assigned);
  plan.makespan = walk_time(part.walk);
  plan.partitions.push_back(std::move(part));
  plan.agent_count = 1;
  return plan;
}

// One clone per managed node; each collector runs an independent shortest
// out-and-back, so the plan completes when the farthest round trip does.
inline Plan plan_interactive(const Topology& t) {
  std::vector<RankedNode> ranked = ranked_nodes(t);
  PathOracle oracle(t);

  Plan plan;
  plan.model = PlanModel::Interactive;
  plan.delta = ranked.front().tour_time;

  for (const RankedNode& r : ranked) {
    Partition part;
    part.anchor = r.id;
    part.assigned = {r.id};
    part.walk = optimal_closed_walk(oracle, part.assigned);
    plan.makespan = std::max(plan.makespan, walk_time(part.walk));
    plan.partitions.push_back(std::move(part));
  }
  plan.agent_count = plan.partitions.size();
  return plan;
}

}  // namespace magplan
