#pragma once

// Graph model of an SNMP-managed network: nodes with per-node MIB payload
// sizes and computational delays, undirected weighted links, and one
// designated home (manager) node. Includes the topology file format,
// validation, and a seeded random generator for scaling experiments.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace magplan {

using NodeId = std::uint32_t;
using Latency = double;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);
inline constexpr std::uint64_t kDefaultPayloadBytes = 1024;

struct NodeSpec {
  std::string name;
  Latency comp_time = 0.0;
  std::uint64_t payload_bytes = kDefaultPayloadBytes;
};

struct Edge {
  NodeId u = kNoNode;
  NodeId v = kNoNode;
  Latency weight = 0.0;
};

// Syntax-level failure while reading a topology file.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, const std::string& reason)
      : std::runtime_error(line_no == 0 ? reason
                                        : "line " + std::to_string(line_no) + ": " + reason),
        line(line_no) {}
  std::size_t line;
};

// Shortest decimal text that parses back to exactly the same double.
// Integral values print without a fraction part.
inline std::string format_number(double v) {
  if (std::floor(v) == v && std::abs(v) < 9.007199254740992e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

class Topology {
 public:
  Topology() = default;

  NodeId add_node(std::string name, Latency comp_time = 0.0,
                  std::uint64_t payload_bytes = kDefaultPayloadBytes) {
    if (index_.count(name)) throw std::invalid_argument("duplicate node: " + name);
    NodeId id = static_cast<NodeId>(nodes_.size());
    index_.emplace(name, id);
    nodes_.push_back(NodeSpec{std::move(name), comp_time, payload_bytes});
    adjacency_.emplace_back();
    return id;
  }

  void set_home(NodeId id) {
    require_node(id);
    home_ = id;
  }

  // Structural invariants (positive weight, no self-loop, no duplicate) are
  // deliberately not enforced here; validate() reports them as violations so
  // broken inputs can be represented and diagnosed.
  void add_edge(NodeId u, NodeId v, Latency weight) {
    require_node(u);
    require_node(v);
    edges_.push_back(Edge{u, v, weight});
    insert_neighbor(u, v, weight);
    if (u != v) insert_neighbor(v, u, weight);
  }

  void add_edge(const std::string& u, const std::string& v, Latency weight) {
    add_edge(id_of(u), id_of(v), weight);
  }

  void set_comp_time(NodeId id, Latency comp_time) {
    require_node(id);
    nodes_[id].comp_time = comp_time;
  }

  void set_payload_bytes(NodeId id, std::uint64_t bytes) {
    require_node(id);
    nodes_[id].payload_bytes = bytes;
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_home() const { return home_ != kNoNode; }
  NodeId home() const {
    if (home_ == kNoNode) throw std::logic_error("topology has no home node");
    return home_;
  }

  const NodeSpec& node(NodeId id) const {
    require_node(id);
    return nodes_[id];
  }

  const std::string& name_of(NodeId id) const { return node(id).name; }

  std::optional<NodeId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId id_of(std::string_view name) const {
    auto id = find(name);
    if (!id) throw std::invalid_argument("unknown node: " + std::string(name));
    return *id;
  }

  // Adjacency of `id`, ascending by neighbor id. Symmetric by construction.
  const std::vector<std::pair<NodeId, Latency>>& neighbors(NodeId id) const {
    require_node(id);
    return adjacency_[id];
  }

  // Weight of the (unique) edge u-v, or nullopt when not adjacent. With
  // duplicate edges present the smallest weight wins.
  std::optional<Latency> edge_weight(NodeId u, NodeId v) const {
    require_node(u);
    require_node(v);
    std::optional<Latency> best;
    for (const auto& [n, w] : adjacency_[u])
      if (n == v && (!best || w < *best)) best = w;
    return best;
  }

  // All nodes except home, ascending by id.
  std::vector<NodeId> managed_nodes() const {
    std::vector<NodeId> out;
    out.reserve(nodes_.empty() ? 0 : nodes_.size() - 1);
    for (NodeId id = 0; id < nodes_.size(); ++id)
      if (id != home_) out.push_back(id);
    return out;
  }

  // Value equality is semantic: same home name, same node specs by name,
  // same undirected edge multiset by endpoint names. Internal ids may differ.
  friend bool operator==(const Topology& a, const Topology& b) {
    return a.canonical_key() == b.canonical_key();
  }
  friend bool operator!=(const Topology& a, const Topology& b) { return !(a == b); }

 private:
  using NodeKey = std::tuple<std::string, Latency, std::uint64_t>;
  using EdgeKey = std::tuple<std::string, std::string, Latency>;

  std::pair<std::vector<NodeKey>, std::pair<std::string, std::vector<EdgeKey>>>
  canonical_key() const {
    std::vector<NodeKey> ns;
    for (const auto& n : nodes_) ns.emplace_back(n.name, n.comp_time, n.payload_bytes);
    std::sort(ns.begin(), ns.end());
    std::vector<EdgeKey> es;
    for (const auto& e : edges_) {
      std::string a = nodes_[e.u].name, b = nodes_[e.v].name;
      if (b < a) std::swap(a, b);
      es.emplace_back(std::move(a), std::move(b), e.weight);
    }
    std::sort(es.begin(), es.end());
    std::string home_name = home_ == kNoNode ? std::string() : nodes_[home_].name;
    return {std::move(ns), {std::move(home_name), std::move(es)}};
  }

  void require_node(NodeId id) const {
    if (id >= nodes_.size()) throw std::invalid_argument("unknown node id");
  }

  void insert_neighbor(NodeId at, NodeId n, Latency w) {
    auto& adj = adjacency_[at];
    auto pos = std::lower_bound(adj.begin(), adj.end(), std::make_pair(n, w));
    adj.insert(pos, {n, w});
  }

  std::vector<NodeSpec> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<NodeId, Latency>>> adjacency_;
  std::map<std::string, NodeId, std::less<>> index_;
  NodeId home_ = kNoNode;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Reports every invariant violation as data; never throws on bad graphs.
inline ValidationReport validate(const Topology& t) {
  ValidationReport report;
  auto flag = [&report](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (!t.has_home()) {
    flag("no home node");
    return report;
  }
  if (t.node(t.home()).comp_time != 0.0) flag("home node comp_time must be 0");

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& e : t.edges()) {
    const std::string& a = t.name_of(e.u);
    const std::string& b = t.name_of(e.v);
    if (e.u == e.v) flag("self-loop at " + a);
    if (!(e.weight > 0.0)) flag("edge " + a + "-" + b + ": weight must be positive");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) flag("duplicate edge " + a + "-" + b);
  }

  // Reachability from home over all recorded edges.
  std::vector<char> reached(t.node_count(), 0);
  std::queue<NodeId> frontier;
  frontier.push(t.home());
  reached[t.home()] = 1;
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    for (const auto& [v, w] : t.neighbors(u))
      if (!reached[v]) {
        reached[v] = 1;
        frontier.push(v);
      }
  }
  if (std::find(reached.begin(), reached.end(), 0) != reached.end())
    flag("graph not connected");

  return report;
}

namespace detail {

inline bool valid_node_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::optional<double> parse_decimal(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (used != s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::optional<std::uint64_t> parse_uint(const std::string& s) {
  if (s.empty() || s[0] == '-' || s[0] == '+') return std::nullopt;
  std::size_t used = 0;
  std::uint64_t v;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (used != s.size()) return std::nullopt;
  return v;
}

struct RawNodeAttrs {
  std::optional<Latency> comp_time;
  std::optional<std::uint64_t> payload_bytes;
};

// Assigns NodeIds in ascending name order so a topology is a canonical value
// independent of declaration order in the file.
inline Topology build_canonical(
    const std::string& home_name,
    const std::map<std::string, RawNodeAttrs>& attrs,
    const std::vector<std::tuple<std::string, std::string, Latency>>& edges) {
  std::set<std::string> names;
  names.insert(home_name);
  for (const auto& [a, b, w] : edges) {
    names.insert(a);
    names.insert(b);
  }

  Topology t;
  for (const auto& name : names) {
    Latency comp = 0.0;
    std::uint64_t payload = kDefaultPayloadBytes;
    if (auto it = attrs.find(name); it != attrs.end()) {
      comp = it->second.comp_time.value_or(0.0);
      payload = it->second.payload_bytes.value_or(kDefaultPayloadBytes);
    }
    t.add_node(name, comp, payload);
  }
  t.set_home(t.id_of(home_name));

  std::vector<std::tuple<std::string, std::string, Latency>> sorted = edges;
  for (auto& [a, b, w] : sorted)
    if (b < a) std::swap(a, b);
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [a, b, w] : sorted) t.add_edge(t.id_of(a), t.id_of(b), w);
  return t;
}

}  // namespace detail

// Line-oriented topology file:
//   # comment            (ignored, as are blank lines)
//   home <id>            (exactly once)
//   node <id> [comp=<units>] [payload=<bytes>]
//   edge <id> <id> <weight>
// Node ids are alphanumeric tokens. `node` lines override attributes of nodes
// introduced by `home`/`edge` lines; edge order is irrelevant.
inline Topology parse_topology(std::string_view text) {
  std::optional<std::string> home_name;
  std::map<std::string, detail::RawNodeAttrs> node_attrs;
  std::map<std::string, std::size_t> node_line_of;
  std::vector<std::tuple<std::string, std::string, Latency>> edges;
  std::set<std::pair<std::string, std::string>> edge_keys;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string directive;
    if (!(fields >> directive)) continue;

    std::vector<std::string> args;
    for (std::string tok; fields >> tok;) args.push_back(tok);

    if (directive == "home") {
      if (args.size() != 1) throw ParseError(line_no, "home takes exactly one node id");
      if (!detail::valid_node_token(args[0]))
        throw ParseError(line_no, "invalid node id: " + args[0]);
      if (home_name) throw ParseError(line_no, "duplicate home declaration");
      home_name = args[0];
    } else if (directive == "node") {
      if (args.empty()) throw ParseError(line_no, "node requires a node id");
      const std::string& id = args[0];
      if (!detail::valid_node_token(id)) throw ParseError(line_no, "invalid node id: " + id);
      if (node_attrs.count(id)) throw ParseError(line_no, "duplicate node declaration: " + id);
      detail::RawNodeAttrs attrs;
      for (std::size_t i = 1; i < args.size(); ++i) {
        auto eq = args[i].find('=');
        if (eq == std::string::npos)
          throw ParseError(line_no, "expected key=value attribute, got: " + args[i]);
        std::string key = args[i].substr(0, eq), value = args[i].substr(eq + 1);
        if (key == "comp") {
          auto v = detail::parse_decimal(value);
          if (!v || *v < 0.0) throw ParseError(line_no, "comp must be a non-negative number");
          if (attrs.comp_time) throw ParseError(line_no, "duplicate comp attribute");
          attrs.comp_time = *v;
        } else if (key == "payload") {
          auto v = detail::parse_uint(value);
          if (!v) throw ParseError(line_no, "payload must be a non-negative integer");
          if (attrs.payload_bytes) throw ParseError(line_no, "duplicate payload attribute");
          attrs.payload_bytes = *v;
        } else {
          throw ParseError(line_no, "unknown node attribute: " + key);
        }
      }
      node_attrs.emplace(id, attrs);
      node_line_of.emplace(id, line_no);
    } else if (directive == "edge") {
      if (args.size() != 3) throw ParseError(line_no, "edge takes two node ids and a weight");
      if (!detail::valid_node_token(args[0]))
        throw ParseError(line_no, "invalid node id: " + args[0]);
      if (!detail::valid_node_token(args[1]))
        throw ParseError(line_no, "invalid node id: " + args[1]);
      if (args[0] == args[1]) throw ParseError(line_no, "self-loop at " + args[0]);
      auto w = detail::parse_decimal(args[2]);
      if (!w || !(*w > 0.0)) throw ParseError(line_no, "weight must be positive");
      std::pair<std::string, std::string> key = std::minmax(args[0], args[1]);
      if (!edge_keys.insert(key).second)
        throw ParseError(line_no, "duplicate edge " + key.first + "-" + key.second);
      edges.emplace_back(args[0], args[1], *w);
    } else {
      throw ParseError(line_no, "unknown directive: " + directive);
    }
  }

  if (!home_name) throw ParseError(0, "missing home declaration");

  std::set<std::string> known;
  known.insert(*home_name);
  for (const auto& [a, b, w] : edges) {
    known.insert(a);
    known.insert(b);
  }
  for (const auto& [id, attrs] : node_attrs) {
    if (!known.count(id))
      throw ParseError(node_line_of.at(id), "unknown node referenced: " + id);
    if (id == *home_name && attrs.comp_time && *attrs.comp_time != 0.0)
      throw ParseError(node_line_of.at(id), "home node comp must be 0");
  }

  return detail::build_canonical(*home_name, node_attrs, edges);
}

// Emits home, then node lines (only where attributes differ from defaults)
// ascending by id, then edges sorted by (min id, max id). Reparsing the
// output reproduces the topology exactly.
inline std::string serialize_topology(const Topology& t) {
  std::string out = "home " + t.name_of(t.home()) + "\n";

  std::vector<NodeId> ids(t.node_count());
  for (NodeId i = 0; i < t.node_count(); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(),
            [&t](NodeId a, NodeId b) { return t.name_of(a) < t.name_of(b); });

  for (NodeId id : ids) {
    const NodeSpec& n = t.node(id);
    if (n.comp_time == 0.0 && n.payload_bytes == kDefaultPayloadBytes) continue;
    out += "node " + n.name;
    if (n.comp_time != 0.0) out += " comp=" + format_number(n.comp_time);
    if (n.payload_bytes != kDefaultPayloadBytes)
      out += " payload=" + std::to_string(n.payload_bytes);
    out += "\n";
  }

  std::vector<std::tuple<std::string, std::string, Latency>> edges;
  for (const auto& e : t.edges()) {
    std::string a = t.name_of(e.u), b = t.name_of(e.v);
    if (b < a) std::swap(a, b);
    edges.emplace_back(std::move(a), std::move(b), e.weight);
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b, w] : edges)
    out += "edge " + a + " " + b + " " + format_number(w) + "\n";
  return out;
}

struct WeightRange {
  std::int64_t lo = 10;
  std::int64_t hi = 100;
};

namespace detail {

inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  return bound <= 1 ? 0 : rng() % bound;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[draw_below(rng, i)]);
}

}  // namespace detail

// Connected random topology: a uniform random spanning tree (Pruefer decode)
// over `n` nodes (home included) plus floor(extra_edge_fraction * n) distinct
// extra edges, integer weights uniform in [lo, hi]. Deterministic in all
// arguments; node names are H, H0, H1, ...
inline Topology generate_random(std::size_t n, std::uint64_t seed,
                                WeightRange range = {10, 100},
                                double extra_edge_fraction = 0.0) {
  if (n == 0) throw std::invalid_argument("node count must be >= 1");
  if (range.lo <= 0 || range.hi < range.lo)
    throw std::invalid_argument("weight range must satisfy 0 < lo <= hi");
  if (!(extra_edge_fraction >= 0.0 && extra_edge_fraction <= 1.0))
    throw std::invalid_argument("extra_edge_fraction must be in [0, 1]");

  auto name_of = [](std::size_t i) {
    return i == 0 ? std::string("H") : "H" + std::to_string(i - 1);
  };

  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> tree;
  if (n >= 2) {
    std::vector<std::size_t> pruefer(n >= 3 ? n - 2 : 0);
    for (auto& s : pruefer) s = detail::draw_below(rng, n);
    std::vector<std::size_t> degree(n, 1);
    for (std::size_t s : pruefer) ++degree[s];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
    for (std::size_t i = 0; i < n; ++i)
      if (degree[i] == 1) leaves.push(i);
    for (std::size_t s : pruefer) {
      std::size_t leaf = leaves.top();
      leaves.pop();
      tree.emplace_back(leaf, s);
      if (--degree[s] == 1) leaves.push(s);
    }
    std::size_t u = leaves.top();
    leaves.pop();
    std::size_t v = leaves.top();
    tree.emplace_back(u, v);
  }

  std::set<std::pair<std::size_t, std::size_t>> present;
  for (auto& [u, v] : tree) present.insert(std::minmax(u, v));

  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!present.count({i, j})) candidates.emplace_back(i, j);
  detail::shuffle_in_place(candidates, rng);

  std::size_t extra = static_cast<std::size_t>(extra_edge_fraction * static_cast<double>(n));
  extra = std::min(extra, candidates.size());

  std::vector<std::tuple<std::string, std::string, Latency>> edges;
  auto weight = [&rng, &range]() {
    auto span = static_cast<std::uint64_t>(range.hi - range.lo) + 1;
    return static_cast<Latency>(range.lo + static_cast<std::int64_t>(rng() % span));
  };
  for (auto& [u, v] : tree) edges.emplace_back(name_of(u), name_of(v), weight());
  for (std::size_t i = 0; i < extra; ++i)
    edges.emplace_back(name_of(candidates[i].first), name_of(candidates[i].second), weight());

  return detail::build_canonical("H", {}, edges);
}

}  // namespace magplan
