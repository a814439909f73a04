#include <catch2/catch_amalgamated.hpp>

#include "magplan/itinerary.hpp"
#include "support.hpp"

using namespace magplan;

namespace {

std::vector<NodeId> ids_of(const Topology& t, const std::vector<std::string>& names) {
  std::vector<NodeId> ids;
  for (const auto& name : names) ids.push_back(t.id_of(name));
  return ids;
}

std::vector<std::string> hop_names(const Topology& t, const Walk& w) {
  std::vector<std::string> names;
  for (const auto& [node, at] : w.hops) names.push_back(t.name_of(node));
  return names;
}

}  // namespace

TEST_CASE("single-target walks go out and straight back") {
  Topology t = testsupport::load_sample10();
  Walk w = optimal_closed_walk(t, {t.id_of("H8")});

  REQUIRE(hop_names(t, w) == std::vector<std::string>{"H", "H0", "H3", "H5", "H6", "H4",
                                                      "H8", "H4", "H6", "H5", "H3", "H0",
                                                      "H"});
  REQUIRE(walk_time(w) == 700.0);
  REQUIRE(testsupport::check_walk(t, w).empty());
}

TEST_CASE("the two-target walk detours on the way back") {
  Topology t = testsupport::load_sample10();
  Walk w = optimal_closed_walk(t, ids_of(t, {"H8", "H9"}));

  REQUIRE(hop_names(t, w) == std::vector<std::string>{"H", "H0", "H3", "H5", "H6", "H4",
                                                      "H8", "H4", "H6", "H9", "H6", "H5",
                                                      "H3", "H0", "H"});
  std::vector<Latency> times;
  for (const auto& [node, at] : w.hops) times.push_back(at);
  REQUIRE(times == std::vector<Latency>{0, 30, 120, 150, 220, 280, 350, 420, 480, 500,
                                        520, 590, 620, 710, 740});
  REQUIRE(collection_order(w) == ids_of(t, {"H8", "H9"}));
  REQUIRE(testsupport::check_walk(t, w).empty());
}

TEST_CASE("the six-node partition walk fits the budget exactly") {
  Topology t = testsupport::load_sample10();
  Walk w = optimal_closed_walk(t, ids_of(t, {"H0", "H3", "H5", "H6", "H4", "H2"}));
  REQUIRE(walk_time(w) == 740.0);
  REQUIRE(collection_order(w) == ids_of(t, {"H0", "H3", "H5", "H6", "H4", "H2"}));
  REQUIRE(testsupport::check_walk(t, w).empty());
}

TEST_CASE("targets are normalized") {
  Topology t = testsupport::load_sample10();

  Walk w = optimal_closed_walk(t, ids_of(t, {"H9", "H8", "H9"}));
  REQUIRE(w.targets == ids_of(t, {"H8", "H9"}));

  REQUIRE_THROWS_AS(optimal_closed_walk(t, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(optimal_closed_walk(t, {t.home()}), std::invalid_argument);
  REQUIRE_THROWS_AS(optimal_closed_walk(t, {NodeId{99}}), std::invalid_argument);
}

TEST_CASE("comp time is charged once at first visit") {
  Topology t = parse_topology(
      "home H\n"
      "node A comp=5\n"
      "node B comp=11\n"
      "edge H A 10\n"
      "edge A B 3\n");
  Walk w = optimal_closed_walk(t, ids_of(t, {"A", "B"}));
  // H -> A(+comp) -> B(+comp) -> A (transit) -> H: 10+5, 3+11, 3, 10.
  REQUIRE(walk_time(w) == 42.0);
  REQUIRE(testsupport::check_walk(t, w).empty());

  std::vector<Latency> times;
  for (const auto& [node, at] : w.hops) times.push_back(at);
  REQUIRE(times == std::vector<Latency>{0, 15, 29, 32, 42});
}

TEST_CASE("equal-cost orders resolve to the lexicographically smallest") {
  // A and B sit symmetrically; both orders cost the same.
  Topology t = parse_topology(
      "home H\n"
      "edge H A 5\n"
      "edge H B 5\n"
      "edge A B 5\n");
  Walk w = optimal_closed_walk(t, ids_of(t, {"B", "A"}));
  REQUIRE(collection_order(w) == ids_of(t, {"A", "B"}));
}

TEST_CASE("optimal matches brute force on random instances") {
  std::mt19937_64 pick(2024);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::size_t n = 3 + seed % 6;  // up to 8 nodes, 7 managed
    Topology t = generate_random(n, seed, {1, 15}, 0.4);
    std::vector<NodeId> managed = t.managed_nodes();
    detail::shuffle_in_place(managed, pick);
    std::size_t k = 1 + pick() % std::min<std::size_t>(7, managed.size());
    std::vector<NodeId> targets(managed.begin(),
                                managed.begin() + static_cast<std::ptrdiff_t>(k));

    Walk w = optimal_closed_walk(t, targets);
    INFO("seed " << seed << " targets " << k);
    REQUIRE(testsupport::check_walk(t, w).empty());
    REQUIRE(walk_time(w) == testsupport::best_walk_time_brute(t, targets));
  }
}

TEST_CASE("the heuristic stays valid and never beats the optimum") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    std::size_t n = 4 + seed % 5;
    Topology t = generate_random(n, seed, {1, 15}, 0.4);
    std::vector<NodeId> targets = t.managed_nodes();

    PathOracle oracle(t);
    Walk h = heuristic_closed_walk(oracle, targets);
    INFO("seed " << seed);
    REQUIRE(testsupport::check_walk(t, h).empty());
    REQUIRE(walk_time(h) >= testsupport::best_walk_time_brute(t, targets));
  }
}

TEST_CASE("large target sets fall back to the heuristic") {
  Topology t = generate_random(16, 9, {1, 20}, 0.3);
  std::vector<NodeId> targets = t.managed_nodes();
  REQUIRE(targets.size() > kExactTargetLimit);
  Walk w = optimal_closed_walk(t, targets);
  REQUIRE(testsupport::check_walk(t, w).empty());
  std::vector<NodeId> order = collection_order(w);
  REQUIRE(order.size() == targets.size());
}
