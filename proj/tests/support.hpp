#pragma once

// Test-side oracles and checkers, deliberately independent of the library's
// algorithms: exhaustive simple-path search instead of Dijkstra,
// Floyd-Warshall plus full permutation scan instead of the walk solver.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "magplan/itinerary.hpp"
#include "magplan/topology.hpp"

namespace testsupport {

inline std::string data_dir() {
  const char* env = std::getenv("MAGPLAN_DATA");
  return env ? env : "tests/data";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline magplan::Topology load_sample10() {
  return magplan::parse_topology(read_file(data_dir() + "/sample10.topo"));
}

// Minimum cost over all simple paths, by exhaustive DFS.
inline double min_path_cost(const magplan::Topology& t, magplan::NodeId src,
                            magplan::NodeId dst) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> visited(t.node_count(), 0);

  auto dfs = [&](auto&& self, magplan::NodeId u, double acc) -> void {
    if (acc >= best) return;
    if (u == dst) {
      best = acc;
      return;
    }
    visited[u] = 1;
    for (const auto& [v, w] : t.neighbors(u))
      if (!visited[v]) self(self, v, acc + w);
    visited[u] = 0;
  };
  dfs(dfs, src, 0.0);
  return best;
}

// All-pairs shortest distances by Floyd-Warshall.
inline std::vector<std::vector<double>> all_pairs_distances(const magplan::Topology& t) {
  const std::size_t n = t.node_count();
  std::vector<std::vector<double>> d(
      n, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : t.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Best closed-walk time through `targets`: full permutation scan over the
// metric closure, plus each target's comp charged once.
inline double best_walk_time_brute(const magplan::Topology& t,
                                   std::vector<magplan::NodeId> targets) {
  auto d = all_pairs_distances(t);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  double best = std::numeric_limits<double>::infinity();
  do {
    double time = 0.0;
    magplan::NodeId at = t.home();
    for (magplan::NodeId v : targets) {
      time += d[at][v] + t.node(v).comp_time;
      at = v;
    }
    time += d[at][t.home()];
    best = std::min(best, time);
  } while (std::next_permutation(targets.begin(), targets.end()));
  return best;
}

// Structural check of a hop-level walk: starts and ends at home, every hop
// follows an existing edge, cumulative times advance by edge weight plus
// comp_time at each target's first visit, and every target gets visited.
// Returns an empty string when valid, otherwise the first problem found.
inline std::string check_walk(const magplan::Topology& t, const magplan::Walk& walk) {
  if (walk.hops.empty()) return "walk has no hops";
  if (walk.hops.front().first != t.home()) return "walk does not start at home";
  if (walk.hops.front().second != 0.0) return "walk does not start at time 0";
  if (walk.hops.back().first != t.home()) return "walk does not end at home";

  std::set<magplan::NodeId> targets(walk.targets.begin(), walk.targets.end());
  std::set<magplan::NodeId> collected;
  for (std::size_t i = 1; i < walk.hops.size(); ++i) {
    auto [prev, prev_at] = walk.hops[i - 1];
    auto [node, at] = walk.hops[i];
    auto w = t.edge_weight(prev, node);
    if (!w)
      return "hop " + t.name_of(prev) + " -> " + t.name_of(node) + " is not an edge";
    double expected = *w;
    if (targets.count(node) && collected.insert(node).second)
      expected += t.node(node).comp_time;
    if (std::abs((at - prev_at) - expected) > 1e-9)
      return "hop into " + t.name_of(node) + " advances time by " +
             magplan::format_number(at - prev_at) + ", expected " +
             magplan::format_number(expected);
  }
  for (magplan::NodeId v : walk.targets)
    if (!collected.count(v)) return "target " + t.name_of(v) + " never visited";
  return "";
}

}  // namespace testsupport
