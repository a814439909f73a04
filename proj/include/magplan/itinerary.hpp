#pragma once

// Minimum-time closed walks from home through a set of target nodes.
// Legs between consecutive targets follow shortest paths (metric closure);
// the visiting order is searched exhaustively for small sets and by
// nearest-neighbor + 2-opt beyond that.

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "magplan/routing.hpp"
#include "magplan/topology.hpp"

namespace magplan {

// Largest target set solved by exhaustive order search.
inline constexpr std::size_t kExactTargetLimit = 10;

struct Walk {
  // (node, cumulative time). Starts and ends at home; each step adds the
  // edge weight plus the node's comp_time on the first visit of a target.
  std::vector<std::pair<NodeId, Latency>> hops;
  std::vector<NodeId> targets;  // sorted, unique
};

inline Latency walk_time(const Walk& w) {
  return w.hops.empty() ? 0.0 : w.hops.back().second;
}

// Targets of `w` in order of first visit along the walk.
inline std::vector<NodeId> collection_order(const Walk& w) {
  std::vector<NodeId> order;
  for (const auto& [node, at] : w.hops) {
    if (!std::binary_search(w.targets.begin(), w.targets.end(), node)) continue;
    if (std::find(order.begin(), order.end(), node) == order.end()) order.push_back(node);
  }
  return order;
}

// Caches one shortest-path tree per source node. Not thread-safe; use one
// instance per thread.
class PathOracle {
 public:
  explicit PathOracle(const Topology& t) : topo_(&t), trees_(t.node_count()) {}

  const Topology& topology() const { return *topo_; }

  const ShortestPathTree& from(NodeId source) {
    if (source >= trees_.size()) throw std::invalid_argument("unknown node id");
    if (!trees_[source]) trees_[source] = shortest_paths(*topo_, source);
    return *trees_[source];
  }

  Latency dist(NodeId a, NodeId b) { return from(a).dist[b]; }

 private:
  const Topology* topo_;
  std::vector<std::optional<ShortestPathTree>> trees_;
};

namespace detail {

inline std::vector<NodeId> normalize_targets(const Topology& t,
                                             std::vector<NodeId> targets) {
  if (targets.empty()) throw std::invalid_argument("target set is empty");
  for (NodeId id : targets)
    if (id >= t.node_count()) throw std::invalid_argument("unknown target node");
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (NodeId id : targets)
    if (id == t.home()) throw std::invalid_argument("home node cannot be a target");
  return targets;
}

// Closure-level cost of visiting order: legs between consecutive stops plus
// each target's comp charged once. Equals the expanded walk's total.
inline Latency order_cost(PathOracle& oracle, NodeId home,
                          const std::vector<NodeId>& order) {
  Latency cost = 0.0;
  NodeId at = home;
  for (NodeId next : order) {
    cost += oracle.dist(at, next) + oracle.topology().node(next).comp_time;
    at = next;
  }
  return cost + oracle.dist(at, home);
}

// Depth-first search over visiting orders in ascending-id (lexicographic)
// order, so the first minimum found is the lexicographically smallest one.
// Prunes with an admissible bound: every unvisited target still costs at
// least its cheapest entry leg plus its comp time.
class OrderSearch {
 public:
  OrderSearch(PathOracle& oracle, NodeId home, const std::vector<NodeId>& targets)
      : oracle_(oracle), home_(home), targets_(targets) {
    min_entry_.resize(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
      Latency best = oracle_.dist(home_, targets_[i]);
      for (std::size_t j = 0; j < targets.size(); ++j)
        if (j != i) best = std::min(best, oracle_.dist(targets_[j], targets_[i]));
      min_entry_[i] = best + oracle_.topology().node(targets_[i]).comp_time;
    }
  }

  std::vector<NodeId> run() {
    used_.assign(targets_.size(), 0);
    current_.clear();
    best_time_ = std::numeric_limits<Latency>::infinity();
    Latency pending = 0.0;
    for (Latency e : min_entry_) pending += e;
    descend(home_, 0.0, pending);
    return best_order_;
  }

 private:
  void descend(NodeId at, Latency cost, Latency pending) {
    if (current_.size() == targets_.size()) {
      Latency total = cost + oracle_.dist(at, home_);
      if (total < best_time_) {
        best_time_ = total;
        best_order_ = current_;
      }
      return;
    }
    for (std::size_t i = 0; i < targets_.size(); ++i) {
      if (used_[i]) continue;
      Latency step = oracle_.dist(at, targets_[i]) +
                     oracle_.topology().node(targets_[i]).comp_time;
      Latency lower = cost + step + (pending - min_entry_[i]);
      if (lower >= best_time_) continue;
      used_[i] = 1;
      current_.push_back(targets_[i]);
      descend(targets_[i], cost + step, pending - min_entry_[i]);
      current_.pop_back();
      used_[i] = 0;
    }
  }

  PathOracle& oracle_;
  NodeId home_;
  const std::vector<NodeId>& targets_;
  std::vector<Latency> min_entry_;
  std::vector<char> used_;
  std::vector<NodeId> current_;
  std::vector<NodeId> best_order_;
  Latency best_time_ = 0.0;
};

// Nearest-neighbor construction followed by first-improvement 2-opt on the
// visiting order. Comp times are order-independent, so legs alone decide.
inline std::vector<NodeId> heuristic_order(PathOracle& oracle, NodeId home,
                                           const std::vector<NodeId>& targets) {
  std::vector<NodeId> order;
  std::vector<NodeId> remaining = targets;
  NodeId at = home;
  while (!remaining.empty()) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < remaining.size(); ++i)
      if (oracle.dist(at, remaining[i]) < oracle.dist(at, remaining[pick])) pick = i;
    at = remaining[pick];
    order.push_back(at);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  // First-improvement 2-opt: reverse order[a..b] while it strictly shortens
  // the tour. Closure distances are symmetric, so only the two boundary legs
  // change. Endpoints (home on both sides) stay fixed.
  const std::size_t k = order.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t a = 0; a < k && !improved; ++a) {
      for (std::size_t b = a + 1; b < k && !improved; ++b) {
        NodeId before = a == 0 ? home : order[a - 1];
        NodeId after = b + 1 == k ? home : order[b + 1];
        Latency delta = oracle.dist(before, order[b]) + oracle.dist(order[a], after) -
                        oracle.dist(before, order[a]) - oracle.dist(order[b], after);
        if (delta < -1e-12) {
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(a),
                       order.begin() + static_cast<std::ptrdiff_t>(b + 1));
          improved = true;
        }
      }
    }
  }
  return order;
}

// Expands a visiting order into hop-level form, charging comp_time at each
// target's first visit (revisits are transit only).
inline Walk expand_order(PathOracle& oracle, NodeId home,
                         const std::vector<NodeId>& order,
                         std::vector<NodeId> sorted_targets) {
  const Topology& t = oracle.topology();
  Walk walk;
  walk.targets = std::move(sorted_targets);
  walk.hops.emplace_back(home, 0.0);

  std::vector<char> collected(t.node_count(), 0);
  auto push_leg = [&](const std::vector<NodeId>& path) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      NodeId prev = path[i - 1], next = path[i];
      Latency step = *t.edge_weight(prev, next);
      bool is_target =
          std::binary_search(walk.targets.begin(), walk.targets.end(), next);
      if (is_target && !collected[next]) {
        collected[next] = 1;
        step += t.node(next).comp_time;
      }
      walk.hops.emplace_back(next, walk.hops.back().second + step);
    }
  };

  if (order.size() == 1) {
    // Single target: out along the shortest path and straight back.
    std::vector<NodeId> out = path_to(oracle.from(home), order[0]);
    push_leg(out);
    std::reverse(out.begin(), out.end());
    push_leg(out);
    return walk;
  }

  NodeId at = home;
  for (NodeId next : order) {
    push_leg(path_to(oracle.from(at), next));
    at = next;
  }
  push_leg(path_to(oracle.from(at), home));
  return walk;
}

}  // namespace detail

// Heuristic closed walk (any target count): nearest-neighbor + 2-opt order
// over the metric closure. Exposed so the exact path can be checked against
// it on small instances.
inline Walk heuristic_closed_walk(PathOracle& oracle, std::vector<NodeId> targets) {
  const Topology& t = oracle.topology();
  targets = detail::normalize_targets(t, targets);
  auto order = detail::heuristic_order(oracle, t.home(), targets);
  return detail::expand_order(oracle, t.home(), order, std::move(targets));
}

// Minimum-time closed walk from home covering every target. Exact for up to
// kExactTargetLimit targets (ties resolved to the lexicographically smallest
// visiting order); heuristic beyond that. Deterministic throughout.
inline Walk optimal_closed_walk(PathOracle& oracle, std::vector<NodeId> targets) {
  const Topology& t = oracle.topology();
  targets = detail::normalize_targets(t, targets);
  std::vector<NodeId> order;
  if (targets.size() <= kExactTargetLimit)
    order = detail::OrderSearch(oracle, t.home(), targets).run();
  else
    order = detail::heuristic_order(oracle, t.home(), targets);
  return detail::expand_order(oracle, t.home(), order, std::move(targets));
}

inline Walk optimal_closed_walk(const Topology& t, std::vector<NodeId> targets) {
  PathOracle oracle(t);
  return optimal_closed_walk(oracle, std::move(targets));
}

}  // namespace magplan
