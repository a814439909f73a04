// Command-line front end: plan, compare, scaling, gen, simulate.
// Exit codes: 0 success, 1 input parse error, 2 validation/usage error,
// 3 internal invariant violation.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magplan/harness.hpp"
#include "magplan/mib.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace magplan;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Topology load_topology(const std::string& path) {
  Topology t = parse_topology(read_file(path));
  ValidationReport report = validate(t);
  if (!report.ok()) {
    std::string msg = "invalid topology " + path + ":";
    for (const std::string& v : report.violations) msg += "\n  " + v;
    throw std::runtime_error(msg);
  }
  return t;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

PlanModel model_from_flag(const std::string& value) {
  auto model = parse_model(value);
  if (!model)
    throw std::runtime_error("unknown model: " + value +
                             " (expected mmap, accumulative, or interactive)");
  return *model;
}

struct SimFlags {
  std::uint64_t agent_base_bytes = 512;
  std::optional<std::uint64_t> payload_bytes;
  std::optional<double> time_scale;
  std::string interactive_traffic = "out-and-back";

  void attach(CLI::App* cmd) {
    cmd->add_option("--agent-base-bytes", agent_base_bytes,
                    "agent code+state size carried on every hop")
        ->capture_default_str();
    cmd->add_option("--payload-bytes", payload_bytes,
                    "override every node's MIB payload size");
    cmd->add_option("--time-scale", time_scale,
                    "multiply reported times by this factor (display only)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--interactive-traffic", interactive_traffic,
                    "traffic accounting for the interactive model")
        ->check(CLI::IsMember({"out-and-back", "hop-chain"}))
        ->capture_default_str();
  }

  SimConfig config() const {
    SimConfig sim;
    sim.agent_base_bytes = agent_base_bytes;
    sim.payload_override_bytes = payload_bytes;
    sim.time_scale = time_scale;
    sim.interactive_traffic_mode = interactive_traffic == "hop-chain"
                                       ? InteractiveTraffic::HopChain
                                       : InteractiveTraffic::OutAndBack;
    return sim;
  }
};

struct GenFlags {
  std::int64_t weight_min = 10;
  std::int64_t weight_max = 100;
  double extra_edge_fraction = 0.2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--weight-min", weight_min, "minimum edge weight")
        ->capture_default_str();
    cmd->add_option("--weight-max", weight_max, "maximum edge weight")
        ->capture_default_str();
    cmd->add_option("--extra-edge-fraction", extra_edge_fraction,
                    "extra edges beyond the spanning tree, as a fraction of n")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }

  GenParams params() const { return {{weight_min, weight_max}, extra_edge_fraction}; }
};

json plan_to_json(const Topology& t, const Plan& plan, double scale) {
  json out;
  out["model"] = std::string(model_name(plan.model));
  out["nodes"] = t.managed_nodes().size();
  out["partition_count"] = plan.partitions.size();
  out["agents"] = plan.agent_count;
  out["delta"] = plan.delta * scale;
  out["makespan"] = plan.makespan * scale;
  out["partitions"] = json::array();
  out["walks"] = json::array();
  for (const Partition& p : plan.partitions) {
    json names = json::array();
    for (NodeId id : collection_order(p.walk)) names.push_back(t.name_of(id));
    out["partitions"].push_back(std::move(names));

    json walk;
    walk["anchor"] = t.name_of(p.anchor);
    walk["hops"] = json::array();
    for (const auto& [node, time] : p.walk.hops)
      walk["hops"].push_back(json::array({t.name_of(node), time * scale}));
    walk["time"] = walk_time(p.walk) * scale;
    out["walks"].push_back(std::move(walk));
  }
  return out;
}

json rows_to_json(const std::vector<CompareRow>& rows) {
  json arr = json::array();
  for (const CompareRow& row : rows) {
    json o;
    o["nodes"] = row.nodes;
    o["model"] = std::string(model_name(row.model));
    o["partitions"] = row.partitions;
    o["agents"] = row.agents;
    o["makespan"] = row.makespan;
    o["traffic_byte_hops"] = row.traffic_byte_hops;
    o["seed"] = row.seed;
    arr.push_back(std::move(o));
  }
  return arr;
}

json aggregates_to_json(const std::vector<ScalingAggregate>& aggs) {
  json arr = json::array();
  for (const ScalingAggregate& agg : aggs) {
    json o;
    o["nodes"] = agg.nodes;
    o["model"] = std::string(model_name(agg.model));
    o["mean_agents"] = agg.mean_agents;
    o["mean_makespan"] = agg.mean_makespan;
    arr.push_back(std::move(o));
  }
  return arr;
}

json sim_to_json(const Topology& t, const Plan& plan, const SimResult& run) {
  json out;
  out["model"] = std::string(model_name(plan.model));
  out["metrics"] = {{"makespan", run.metrics.makespan},
                    {"agent_count", run.metrics.agent_count},
                    {"traffic_byte_hops", run.metrics.traffic_byte_hops},
                    {"traffic_byte_latency", run.metrics.traffic_byte_latency},
                    {"collected_nodes", run.metrics.collected_nodes}};
  json collect_times = json::object();
  for (const auto& [node, time] : run.metrics.per_node_collect_time)
    collect_times[t.name_of(node)] = time;
  out["collect_times"] = std::move(collect_times);

  CollectionReport report = collection_report(run.traces, t);
  json missing = json::array(), duplicates = json::array();
  for (NodeId id : report.missing) missing.push_back(t.name_of(id));
  for (NodeId id : report.duplicates) duplicates.push_back(t.name_of(id));
  out["collection"] = {{"complete", report.complete},
                       {"missing", std::move(missing)},
                       {"duplicates", std::move(duplicates)}};

  out["traces"] = json::array();
  for (const AgentTrace& trace : run.traces) {
    json events = json::array();
    for (const TraceEvent& ev : trace.events)
      events.push_back({{"time", ev.time},
                        {"node", t.name_of(ev.node)},
                        {"kind", std::string(event_kind_name(ev.kind))},
                        {"carried_bytes", ev.carried_bytes}});
    out["traces"].push_back(
        {{"agent", trace.agent_id}, {"events", std::move(events)}});
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void run_plan(const std::string& topology_file, const std::string& model_flag,
              std::optional<double> time_scale, const std::string& output) {
  Topology t = load_topology(topology_file);
  Plan plan = plan_for(t, model_from_flag(model_flag));
  write_output(output, dump(plan_to_json(t, plan, time_scale.value_or(1.0))));
}

void run_compare(const std::string& topology_file, std::optional<std::size_t> nodes,
                 std::uint64_t seed, const GenFlags& gen,
                 const std::vector<std::string>& model_flags,
                 const SimFlags& sim_flags, const std::string& format,
                 const std::string& output) {
  if (topology_file.empty() == !nodes)
    throw std::runtime_error("need exactly one of --topology and --nodes");
  Topology t =
      nodes ? generate_random(*nodes + 1, seed, gen.params().weights,
                              gen.params().extra_edge_fraction)
            : load_topology(topology_file);

  std::vector<PlanModel> models;
  for (const std::string& flag : model_flags) models.push_back(model_from_flag(flag));
  if (models.empty()) models.assign(kAllModels.begin(), kAllModels.end());

  std::vector<CompareRow> rows;
  for (PlanModel model : models)
    rows.push_back(compare_row(t, model, seed, sim_flags.config()));
  write_output(output, format == "json" ? dump(rows_to_json(rows)) : rows_to_csv(rows));
}

void run_scaling_cmd(const std::vector<std::size_t>& sizes, std::size_t trials,
                     std::uint64_t seed, const GenFlags& gen,
                     const SimFlags& sim_flags, const std::string& format,
                     const std::string& output) {
  ScalingResult result =
      run_scaling(sizes, trials, seed, gen.params(), sim_flags.config());
  if (format == "json") {
    json out;
    out["rows"] = rows_to_json(result.rows);
    out["aggregates"] = aggregates_to_json(result.aggregates);
    write_output(output, dump(out));
  } else {
    write_output(output, scaling_to_csv(result));
  }
}

void run_gen(std::size_t nodes, std::uint64_t seed, const GenFlags& gen,
             const std::string& output) {
  Topology t = generate_random(nodes, seed, gen.params().weights,
                               gen.params().extra_edge_fraction);
  write_output(output, serialize_topology(t));
}

void run_simulate(const std::string& topology_file, const std::string& model_flag,
                  const SimFlags& sim_flags, const std::string& output) {
  Topology t = load_topology(topology_file);
  Plan plan = plan_for(t, model_from_flag(model_flag));
  SimResult run = simulate(t, plan, sim_flags.config());
  write_output(output, dump(sim_to_json(t, plan, run)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mobile-agent MIB collection planner and simulator"};
  app.require_subcommand(1);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "partition a topology and print the plan");
  std::string plan_topology, plan_model = "mmap", plan_output;
  std::optional<double> plan_time_scale;
  plan_cmd->add_option("--topology", plan_topology, "topology file")->required();
  plan_cmd->add_option("--model", plan_model, "mmap|accumulative|interactive")
      ->capture_default_str();
  plan_cmd->add_option("--time-scale", plan_time_scale,
                       "multiply reported times by this factor (display only)")
      ->check(CLI::PositiveNumber);
  plan_cmd->add_option("--output", plan_output, "output file (default stdout)");

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "run every model on one topology");
  std::string compare_topology, compare_format = "csv", compare_output;
  std::optional<std::size_t> compare_nodes;
  std::uint64_t compare_seed = 0;
  std::vector<std::string> compare_models_flags;
  GenFlags compare_gen;
  SimFlags compare_sim;
  compare_cmd->add_option("--topology", compare_topology, "topology file");
  compare_cmd
      ->add_option("--nodes", compare_nodes,
                   "generate a random topology with this many managed nodes")
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", compare_seed, "generator seed / seed column")
      ->capture_default_str();
  compare_cmd->add_option("--model", compare_models_flags,
                          "models to run (repeatable; default all)");
  compare_cmd->add_option("--format", compare_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  compare_cmd->add_option("--output", compare_output, "output file (default stdout)");
  compare_gen.attach(compare_cmd);
  compare_sim.attach(compare_cmd);

  // scaling
  auto* scaling_cmd = app.add_subcommand(
      "scaling", "sweep random topologies across network sizes");
  std::vector<std::size_t> scaling_sizes;
  std::size_t scaling_trials = 1;
  std::uint64_t scaling_seed = 0;
  std::string scaling_format = "csv", scaling_output;
  GenFlags scaling_gen;
  SimFlags scaling_sim;
  scaling_cmd
      ->add_option("--sizes", scaling_sizes,
                   "managed node counts, e.g. --sizes 5,10,15")
      ->required()
      ->delimiter(',');
  scaling_cmd->add_option("--trials", scaling_trials, "topologies per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling_cmd->add_option("--seed", scaling_seed, "master seed")->capture_default_str();
  scaling_cmd->add_option("--format", scaling_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  scaling_cmd->add_option("--output", scaling_output, "output file (default stdout)");
  scaling_gen.attach(scaling_cmd);
  scaling_sim.attach(scaling_cmd);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a random topology file");
  std::size_t gen_nodes = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  GenFlags gen_gen;
  gen_cmd->add_option("--nodes", gen_nodes, "total node count including home")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--output", gen_output, "output file (default stdout)");
  gen_gen.attach(gen_cmd);

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "plan, dispatch agents, and print traces");
  std::string sim_topology, sim_model = "mmap", sim_output;
  SimFlags sim_sim;
  sim_cmd->add_option("--topology", sim_topology, "topology file")->required();
  sim_cmd->add_option("--model", sim_model, "mmap|accumulative|interactive")
      ->capture_default_str();
  sim_cmd->add_option("--output", sim_output, "output file (default stdout)");
  sim_sim.attach(sim_cmd);

  plan_cmd->callback(
      [&] { run_plan(plan_topology, plan_model, plan_time_scale, plan_output); });
  compare_cmd->callback([&] {
    run_compare(compare_topology, compare_nodes, compare_seed, compare_gen,
                compare_models_flags, compare_sim, compare_format, compare_output);
  });
  scaling_cmd->callback([&] {
    run_scaling_cmd(scaling_sizes, scaling_trials, scaling_seed, scaling_gen,
                    scaling_sim, scaling_format, scaling_output);
  });
  gen_cmd->callback([&] { run_gen(gen_nodes, gen_seed, gen_gen, gen_output); });
  sim_cmd->callback(
      [&] { run_simulate(sim_topology, sim_model, sim_sim, sim_output); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const magplan::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
