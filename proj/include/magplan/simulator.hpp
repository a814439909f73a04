#pragma once

// Executes a plan as deterministic agent traversals over the topology,
// producing per-agent event traces and aggregate metrics (makespan, agent
// count, traffic, per-node collection times).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "magplan/itinerary.hpp"
#include "magplan/planner.hpp"
#include "magplan/topology.hpp"

namespace magplan {

// Interactive-model traffic accounting. Timing is unaffected either way:
// out_and_back charges each clone a full round trip; hop_chain charges one
// outbound relay chain over all nodes plus a loaded return per node.
enum class InteractiveTraffic { OutAndBack, HopChain };

struct SimConfig {
  std::uint64_t agent_base_bytes = 512;            // agent code size
  std::optional<std::uint64_t> payload_override_bytes;
  std::optional<double> time_scale;                // reporting only
  InteractiveTraffic interactive_traffic_mode = InteractiveTraffic::OutAndBack;
};

enum class EventKind { Arrive, Collect, ReturnHome };

inline std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Arrive: return "arrive";
    case EventKind::Collect: return "collect";
    case EventKind::ReturnHome: return "return_home";
  }
  throw std::logic_error("unknown event kind");
}

struct TraceEvent {
  Latency time = 0.0;
  NodeId node = kNoNode;
  EventKind kind = EventKind::Arrive;
  std::uint64_t carried_bytes = 0;
};

struct AgentTrace {
  std::uint32_t agent_id = 0;
  std::vector<TraceEvent> events;
};

struct Metrics {
  Latency makespan = 0.0;
  std::size_t agent_count = 0;
  std::uint64_t traffic_byte_hops = 0;       // sum of carried bytes per edge crossing
  double traffic_byte_latency = 0.0;         // sum of carried bytes x edge weight
  std::size_t collected_nodes = 0;
  std::map<NodeId, Latency> per_node_collect_time;
};

struct SimResult {
  Metrics metrics;
  std::vector<AgentTrace> traces;
};

struct CollectionReport {
  bool complete = false;
  std::vector<NodeId> missing;     // managed nodes never collected
  std::vector<NodeId> duplicates;  // nodes collected more than once
};

inline CollectionReport collection_report(const std::vector<AgentTrace>& traces,
                                          const Topology& t) {
  std::map<NodeId, std::size_t> counts;
  for (const AgentTrace& trace : traces)
    for (const TraceEvent& ev : trace.events)
      if (ev.kind == EventKind::Collect) ++counts[ev.node];

  CollectionReport report;
  for (NodeId id : t.managed_nodes())
    if (!counts.count(id)) report.missing.push_back(id);
  for (const auto& [id, n] : counts)
    if (n > 1) report.duplicates.push_back(id);
  report.complete = report.missing.empty() && report.duplicates.empty();
  return report;
}

namespace detail {

inline Latency checked_edge_weight(const Topology& t, NodeId u, NodeId v) {
  auto w = t.edge_weight(u, v);
  if (!w)
    throw std::invalid_argument("plan/topology mismatch: walk hop " + t.name_of(u) +
                                " -> " + t.name_of(v) + " is not an edge");
  return *w;
}

// Traffic of the interactive relay chain: one outbound pass carrying agent
// code through all managed nodes (nearest first, ids break ties), then each
// node's collector returns home loaded.
inline void add_hop_chain_traffic(const Topology& t, const SimConfig& cfg,
                                  Metrics& metrics) {
  PathOracle oracle(t);
  const ShortestPathTree& home_spt = oracle.from(t.home());
  std::vector<NodeId> chain = t.managed_nodes();
  std::sort(chain.begin(), chain.end(), [&](NodeId a, NodeId b) {
    if (home_spt.dist[a] != home_spt.dist[b]) return home_spt.dist[a] < home_spt.dist[b];
    return a < b;
  });

  auto charge = [&](const std::vector<NodeId>& path, std::uint64_t carried) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      metrics.traffic_byte_hops += carried;
      metrics.traffic_byte_latency +=
          static_cast<double>(carried) * checked_edge_weight(t, path[i - 1], path[i]);
    }
  };

  NodeId at = t.home();
  for (NodeId next : chain) {
    charge(path_to(oracle.from(at), next), cfg.agent_base_bytes);
    at = next;
  }
  for (NodeId v : chain) {
    std::uint64_t payload = cfg.payload_override_bytes.value_or(t.node(v).payload_bytes);
    charge(path_to(oracle.from(v), t.home()), cfg.agent_base_bytes + payload);
  }
}

}  // namespace detail

// Runs every partition's walk. An agent departs home carrying its code
// (agent_base_bytes), collects each assigned node's payload at first
// arrival, and returns home. time_scale, when set, multiplies every
// reported time quantity; counts and byte-hop totals are unaffected.
inline SimResult simulate(const Topology& t, const Plan& p, const SimConfig& cfg = {}) {
  const double scale = cfg.time_scale.value_or(1.0);
  if (!(scale > 0.0)) throw std::invalid_argument("time_scale must be positive");

  SimResult result;
  Metrics& m = result.metrics;
  m.agent_count = p.agent_count;

  const bool chain_traffic = p.model == PlanModel::Interactive &&
                             cfg.interactive_traffic_mode == InteractiveTraffic::HopChain;

  std::uint32_t agent_id = 0;
  for (const Partition& part : p.partitions) {
    for (NodeId v : part.assigned)
      if (v >= t.node_count())
        throw std::invalid_argument("plan/topology mismatch: unknown node in partition");

    AgentTrace trace;
    trace.agent_id = agent_id++;
    std::uint64_t carried = cfg.agent_base_bytes;
    std::set<NodeId> collected;

    const auto& hops = part.walk.hops;
    if (hops.empty() || hops.front().first >= t.node_count())
      throw std::invalid_argument("plan/topology mismatch: empty or unknown walk");

    for (std::size_t i = 1; i < hops.size(); ++i) {
      auto [node, at] = hops[i];
      if (node >= t.node_count())
        throw std::invalid_argument("plan/topology mismatch: unknown node in walk");
      Latency w = detail::checked_edge_weight(t, hops[i - 1].first, node);

      if (!chain_traffic) {
        m.traffic_byte_hops += carried;
        m.traffic_byte_latency += static_cast<double>(carried) * w;
      }

      bool last = i + 1 == hops.size();
      trace.events.push_back(
          {at * scale, node, last ? EventKind::ReturnHome : EventKind::Arrive, carried});

      bool is_assigned = std::binary_search(part.assigned.begin(), part.assigned.end(), node);
      if (is_assigned && collected.insert(node).second) {
        carried += cfg.payload_override_bytes.value_or(t.node(node).payload_bytes);
        trace.events.push_back({at * scale, node, EventKind::Collect, carried});
        m.per_node_collect_time.emplace(node, at * scale);
      }
    }

    m.makespan = std::max(m.makespan, walk_time(part.walk) * scale);
    result.traces.push_back(std::move(trace));
  }

  if (chain_traffic) detail::add_hop_chain_traffic(t, cfg, m);
  m.traffic_byte_latency *= scale;
  m.collected_nodes = m.per_node_collect_time.size();
  return result;
}

}  // namespace magplan
