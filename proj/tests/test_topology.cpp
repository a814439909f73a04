#include <catch2/catch_amalgamated.hpp>

#include "magplan/topology.hpp"
#include "support.hpp"

using namespace magplan;

TEST_CASE("parsing the ten-node sample file") {
  Topology t = testsupport::load_sample10();

  REQUIRE(t.node_count() == 11);
  REQUIRE(t.edges().size() == 10);
  REQUIRE(t.name_of(t.home()) == "H");

  SECTION("node ids follow ascending name order") {
    REQUIRE(t.id_of("H") == 0);
    REQUIRE(t.id_of("H0") == 1);
    REQUIRE(t.id_of("H9") == 10);
    REQUIRE(t.home() == 0);
  }

  SECTION("edge weights land on the right pairs") {
    REQUIRE(t.edge_weight(t.id_of("H"), t.id_of("H0")) == 30.0);
    REQUIRE(t.edge_weight(t.id_of("H1"), t.id_of("H7")) == 30.0);
    REQUIRE(t.edge_weight(t.id_of("H4"), t.id_of("H8")) == 70.0);
    REQUIRE_FALSE(t.edge_weight(t.id_of("H"), t.id_of("H9")).has_value());
  }

  SECTION("neighbor lists are sorted and symmetric") {
    using Nbr = std::pair<NodeId, Latency>;
    std::vector<Nbr> h0 = t.neighbors(t.id_of("H0"));
    REQUIRE(h0 == std::vector<Nbr>{{t.id_of("H"), 30.0},
                                   {t.id_of("H1"), 50.0},
                                   {t.id_of("H3"), 90.0}});
    for (NodeId u = 0; u < t.node_count(); ++u)
      for (const auto& [v, w] : t.neighbors(u))
        REQUIRE(t.edge_weight(v, u) == w);
    REQUIRE_THROWS_AS(t.neighbors(999), std::invalid_argument);
  }

  SECTION("defaults apply when no node line is present") {
    for (NodeId id : t.managed_nodes()) {
      REQUIRE(t.node(id).comp_time == 0.0);
      REQUIRE(t.node(id).payload_bytes == kDefaultPayloadBytes);
    }
  }

  SECTION("it validates cleanly") { REQUIRE(validate(t).ok()); }
}

TEST_CASE("node attribute overrides") {
  Topology t = parse_topology(
      "home H\n"
      "node A comp=5 payload=2048\n"
      "node B payload=64\n"
      "edge H A 10\n"
      "edge A B 3\n");
  REQUIRE(t.node(t.id_of("A")).comp_time == 5.0);
  REQUIRE(t.node(t.id_of("A")).payload_bytes == 2048);
  REQUIRE(t.node(t.id_of("B")).comp_time == 0.0);
  REQUIRE(t.node(t.id_of("B")).payload_bytes == 64);
}

TEST_CASE("single home node is a valid network") {
  Topology t = parse_topology("home H\n");
  REQUIRE(t.node_count() == 1);
  REQUIRE(t.edges().empty());
  REQUIRE(t.neighbors(t.home()).empty());
  REQUIRE(t.managed_nodes().empty());
  REQUIRE(validate(t).ok());
}

TEST_CASE("comments and blank lines are ignored") {
  Topology t = parse_topology(
      "# topology\n"
      "\n"
      "home H\n"
      "  # indented comment\n"
      "edge H A 1\n");
  REQUIRE(t.node_count() == 2);
}

TEST_CASE("parse failures carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_topology(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return std::size_t(-1);
  };

  CHECK(line_of("home H\nfrobnicate A B\n") == 2);
  CHECK(line_of("home H\nhome G\n") == 2);
  CHECK(line_of("home H\nedge H A 0\n") == 2);
  CHECK(line_of("home H\nedge H A -3\n") == 2);
  CHECK(line_of("home H\nedge H A ten\n") == 2);
  CHECK(line_of("home H\nedge H H 5\n") == 2);
  CHECK(line_of("home H\nedge H A 1\nedge A H 2\n") == 3);
  CHECK(line_of("home H\nedge H A 1\nnode A comp=-1\n") == 3);
  CHECK(line_of("home H\nedge H A 1\nnode A payload=-1\n") == 3);
  CHECK(line_of("home H\nedge H A 1\nnode A color=red\n") == 3);
  CHECK(line_of("home H\nedge H A 1\nnode A comp=1\nnode A comp=2\n") == 4);
  CHECK(line_of("home H\nedge H A. 1\n") == 2);
  CHECK(line_of("home H\nedge H A\n") == 2);

  CHECK_THROWS_AS(parse_topology("edge A B 1\n"), ParseError);
  CHECK_THROWS_WITH(parse_topology("edge A B 1\n"),
                    Catch::Matchers::ContainsSubstring("missing home"));
  CHECK_THROWS_WITH(parse_topology("home H\nedge H A 1\nnode B comp=1\n"),
                    Catch::Matchers::ContainsSubstring("unknown node referenced: B"));
  CHECK_THROWS_WITH(parse_topology("home H\nedge H A 1\nnode H comp=3\n"),
                    Catch::Matchers::ContainsSubstring("home node comp must be 0"));
}

TEST_CASE("topology equality is declaration-order independent") {
  Topology a = parse_topology("home H\nedge H A 1\nedge A B 2\n");
  Topology b = parse_topology("home H\nedge B A 2\nedge A H 1\n");
  REQUIRE(a == b);

  Topology c = parse_topology("home H\nedge H A 1\nedge A B 3\n");
  REQUIRE_FALSE(a == c);

  Topology d = parse_topology("home H\nnode B payload=7\nedge H A 1\nedge A B 2\n");
  REQUIRE_FALSE(a == d);
}

TEST_CASE("serialization round-trips and is canonical") {
  Topology t = parse_topology(
      "home H\n"
      "node A comp=5 payload=2048\n"
      "edge A B 3\n"
      "edge H A 10\n");
  std::string text = serialize_topology(t);
  REQUIRE(parse_topology(text) == t);
  REQUIRE(serialize_topology(parse_topology(text)) == text);

  REQUIRE_THAT(text, Catch::Matchers::StartsWith("home H\n"));
  REQUIRE_THAT(text, Catch::Matchers::ContainsSubstring("node A comp=5 payload=2048\n"));
  REQUIRE_THAT(text, !Catch::Matchers::ContainsSubstring("node B"));

  Topology sample = testsupport::load_sample10();
  REQUIRE(parse_topology(serialize_topology(sample)) == sample);
}

TEST_CASE("validation flags structural problems") {
  SECTION("no home") {
    Topology t;
    t.add_node("A");
    auto report = validate(t);
    REQUIRE_FALSE(report.ok());
    REQUIRE_THAT(report.violations.front(),
                 Catch::Matchers::ContainsSubstring("no home node"));
  }

  SECTION("disconnected graph") {
    Topology t;
    t.set_home(t.add_node("H"));
    t.add_node("A");
    auto report = validate(t);
    REQUIRE_FALSE(report.ok());
    REQUIRE_THAT(report.violations.front(),
                 Catch::Matchers::ContainsSubstring("not connected"));
  }

  SECTION("self-loop, bad weight, duplicate edge, home comp") {
    Topology t;
    NodeId h = t.add_node("H");
    NodeId a = t.add_node("A");
    t.set_home(h);
    t.add_edge(h, a, 1.0);
    t.add_edge(a, h, 2.0);
    t.add_edge(a, a, 1.0);
    t.add_edge(h, a, -1.0);
    t.set_comp_time(h, 4.0);
    auto report = validate(t);
    std::string all;
    for (const auto& v : report.violations) all += v + "\n";
    REQUIRE_THAT(all, Catch::Matchers::ContainsSubstring("self-loop at A"));
    REQUIRE_THAT(all, Catch::Matchers::ContainsSubstring("weight must be positive"));
    REQUIRE_THAT(all, Catch::Matchers::ContainsSubstring("duplicate edge"));
    REQUIRE_THAT(all, Catch::Matchers::ContainsSubstring("home node comp_time must be 0"));
  }
}

TEST_CASE("random generation") {
  SECTION("single node") {
    Topology t = generate_random(1, 7, {1, 10}, 0.0);
    REQUIRE(t.node_count() == 1);
    REQUIRE(t.edges().empty());
    REQUIRE(validate(t).ok());
  }

  SECTION("deterministic for fixed arguments") {
    Topology a = generate_random(5, 42, {10, 100}, 0.2);
    Topology b = generate_random(5, 42, {10, 100}, 0.2);
    REQUIRE(a == b);
    REQUIRE(serialize_topology(a) == serialize_topology(b));
    REQUIRE_FALSE(a == generate_random(5, 43, {10, 100}, 0.2));
  }

  SECTION("edge counts, weights, and validity across seeds") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      std::size_t n = 2 + seed % 29;
      double frac = (seed % 3) * 0.15;
      Topology t = generate_random(n, seed, {10, 100}, frac);
      REQUIRE(t.node_count() == n);
      REQUIRE(validate(t).ok());

      std::size_t extra = static_cast<std::size_t>(frac * static_cast<double>(n));
      std::size_t capacity = n * (n - 1) / 2 - (n - 1);
      REQUIRE(t.edges().size() == n - 1 + std::min(extra, capacity));

      for (const auto& e : t.edges()) {
        REQUIRE(e.weight >= 10.0);
        REQUIRE(e.weight <= 100.0);
        REQUIRE(e.weight == std::floor(e.weight));
      }
    }
  }

  SECTION("thirty nodes with extra edges validates") {
    REQUIRE(validate(generate_random(30, 1, {10, 100}, 0.3)).ok());
  }

  SECTION("bad arguments are rejected") {
    REQUIRE_THROWS_AS(generate_random(0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_random(3, 1, {0, 5}), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_random(3, 1, {5, 4}), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_random(3, 1, {1, 5}, 1.5), std::invalid_argument);
  }
}

TEST_CASE("number formatting trims integral values") {
  REQUIRE(format_number(740.0) == "740");
  REQUIRE(format_number(0.0) == "0");
  REQUIRE(format_number(2.5) == "2.5");
  REQUIRE(format_number(-3.0) == "-3");
  double parsed = std::strtod(format_number(0.1).c_str(), nullptr);
  REQUIRE(parsed == 0.1);
}
