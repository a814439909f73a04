#pragma once

// Home-rooted shortest-path latencies and per-node round-trip tour times.
// A node's tour time comp + 2*dist drives the descending ranking that the
// partitioner consumes; the largest tour time is the walk budget delta.

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "magplan/topology.hpp"

namespace magplan {

struct ShortestPathTree {
  NodeId source = kNoNode;
  std::vector<Latency> dist;
  std::vector<NodeId> parent;  // parent[source] == source
};

// Dijkstra (weights are positive). Equal-cost paths resolve toward the
// lower-id predecessor so extracted paths are deterministic. Throws when
// some node is unreachable from `source`.
inline ShortestPathTree shortest_paths(const Topology& t, NodeId source) {
  if (source >= t.node_count()) throw std::invalid_argument("unknown node id");

  constexpr Latency kInf = std::numeric_limits<Latency>::infinity();
  ShortestPathTree spt;
  spt.source = source;
  spt.dist.assign(t.node_count(), kInf);
  spt.parent.assign(t.node_count(), kNoNode);
  std::vector<char> done(t.node_count(), 0);

  using Item = std::pair<Latency, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  spt.dist[source] = 0.0;
  spt.parent[source] = source;
  queue.push({0.0, source});

  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& [v, w] : t.neighbors(u)) {
      if (!(w > 0.0)) throw std::invalid_argument("edge weights must be positive");
      Latency alt = d + w;
      if (alt < spt.dist[v]) {
        spt.dist[v] = alt;
        spt.parent[v] = u;
        queue.push({alt, v});
      } else if (alt == spt.dist[v] && u < spt.parent[v]) {
        spt.parent[v] = u;
      }
    }
  }

  for (NodeId v = 0; v < t.node_count(); ++v)
    if (spt.dist[v] == kInf)
      throw std::runtime_error("node " + t.name_of(v) + " unreachable from " +
                               t.name_of(source));
  return spt;
}

// Node sequence source..target along the tree's parent links.
inline std::vector<NodeId> path_to(const ShortestPathTree& spt, NodeId target) {
  if (target >= spt.parent.size()) throw std::invalid_argument("unknown node id");
  std::vector<NodeId> path;
  for (NodeId v = target; v != spt.source; v = spt.parent[v]) {
    if (spt.parent[v] == kNoNode) throw std::runtime_error("target has no recorded path");
    path.push_back(v);
  }
  path.push_back(spt.source);
  std::reverse(path.begin(), path.end());
  return path;
}

// Round trip source -> id -> source: comp_time(id) + 2 * dist(id).
inline Latency tour_time(const Topology& t, const ShortestPathTree& spt, NodeId id) {
  if (id >= t.node_count()) throw std::invalid_argument("unknown node id");
  if (id == spt.source)
    throw std::invalid_argument("tour time of the source node is undefined");
  return t.node(id).comp_time + 2.0 * spt.dist[id];
}

struct RankedNode {
  NodeId id = kNoNode;
  Latency tour_time = 0.0;
};

// Managed nodes ordered by tour time descending, ids ascending on ties.
// The first entry's tour time is delta, the partition walk budget.
inline std::vector<RankedNode> ranked_nodes(const Topology& t) {
  ShortestPathTree spt = shortest_paths(t, t.home());
  std::vector<RankedNode> ranked;
  for (NodeId id : t.managed_nodes()) ranked.push_back({id, tour_time(t, spt, id)});
  if (ranked.empty())
    throw std::invalid_argument("network has no managed nodes to rank");
  std::sort(ranked.begin(), ranked.end(), [](const RankedNode& a, const RankedNode& b) {
    if (a.tour_time != b.tour_time) return a.tour_time > b.tour_time;
    return a.id < b.id;
  });
  return ranked;
}

}  // namespace magplan
