#pragma once

// Experiment runner: plan + simulate a topology under each model, collect the
// results as comparison rows, and sweep random topologies across network
// sizes. CSV is the exchange format; rows round-trip through it losslessly.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "magplan/baselines.hpp"
#include "magplan/planner.hpp"
#include "magplan/simulator.hpp"
#include "magplan/topology.hpp"

namespace magplan {

inline constexpr std::array<PlanModel, 3> kAllModels = {
    PlanModel::MmapDynamic, PlanModel::Accumulative, PlanModel::Interactive};

inline Plan plan_for(const Topology& t, PlanModel model) {
  switch (model) {
    case PlanModel::MmapDynamic: return plan_mmap(t);
    case PlanModel::Accumulative: return plan_accumulative(t);
    case PlanModel::Interactive: return plan_interactive(t);
  }
  throw std::logic_error("unhandled plan model");
}

struct CompareRow {
  std::size_t nodes = 0;  // managed (non-home) node count
  PlanModel model = PlanModel::MmapDynamic;
  std::size_t partitions = 0;
  std::size_t agents = 0;
  Latency makespan = 0.0;
  std::uint64_t traffic_byte_hops = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const CompareRow&, const CompareRow&) = default;
};

inline constexpr std::string_view kCompareCsvHeader =
    "nodes,model,partitions,agents,makespan,traffic_byte_hops,seed";

inline CompareRow compare_row(const Topology& t, PlanModel model,
                              std::uint64_t seed, const SimConfig& sim = {}) {
  Plan plan = plan_for(t, model);
  SimResult run = simulate(t, plan, sim);
  CompareRow row;
  row.nodes = t.managed_nodes().size();
  row.model = model;
  row.partitions = plan.partitions.size();
  row.agents = plan.agent_count;
  row.makespan = run.metrics.makespan;
  row.traffic_byte_hops = run.metrics.traffic_byte_hops;
  row.seed = seed;
  return row;
}

inline std::vector<CompareRow> compare_models(const Topology& t,
                                              std::uint64_t seed,
                                              const SimConfig& sim = {}) {
  std::vector<CompareRow> rows;
  rows.reserve(kAllModels.size());
  for (PlanModel model : kAllModels) rows.push_back(compare_row(t, model, seed, sim));
  return rows;
}

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::uint64_t csv_u64(const std::string& field, std::size_t line_no) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line_no, "expected unsigned integer, got: " + field);
  errno = 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(field.c_str(), &end, 10);
  if (errno != 0 || end != field.c_str() + field.size())
    throw ParseError(line_no, "integer out of range: " + field);
  return v;
}

inline double csv_double(const std::string& field, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(field.c_str(), &end);
  if (field.empty() || errno != 0 || end != field.c_str() + field.size())
    throw ParseError(line_no, "expected number, got: " + field);
  return v;
}

inline PlanModel csv_model(const std::string& field, std::size_t line_no) {
  auto model = parse_model(field);
  if (!model) throw ParseError(line_no, "unknown model: " + field);
  return *model;
}

}  // namespace detail

inline std::string rows_to_csv(const std::vector<CompareRow>& rows) {
  std::string out{kCompareCsvHeader};
  out += '\n';
  for (const CompareRow& row : rows) {
    out += std::to_string(row.nodes);
    out += ',';
    out += model_name(row.model);
    out += ',';
    out += std::to_string(row.partitions);
    out += ',';
    out += std::to_string(row.agents);
    out += ',';
    out += format_number(row.makespan);
    out += ',';
    out += std::to_string(row.traffic_byte_hops);
    out += ',';
    out += std::to_string(row.seed);
    out += '\n';
  }
  return out;
}

namespace detail {

// Splits text into lines; no trailing entry for a final newline.
inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  return lines;
}

inline CompareRow row_from_fields(const std::vector<std::string>& fields,
                                  std::size_t line_no) {
  if (fields.size() != 7)
    throw ParseError(line_no, "expected 7 fields, got " + std::to_string(fields.size()));
  CompareRow row;
  row.nodes = static_cast<std::size_t>(csv_u64(fields[0], line_no));
  row.model = csv_model(fields[1], line_no);
  row.partitions = static_cast<std::size_t>(csv_u64(fields[2], line_no));
  row.agents = static_cast<std::size_t>(csv_u64(fields[3], line_no));
  row.makespan = csv_double(fields[4], line_no);
  row.traffic_byte_hops = csv_u64(fields[5], line_no);
  row.seed = csv_u64(fields[6], line_no);
  return row;
}

}  // namespace detail

inline std::vector<CompareRow> rows_from_csv(std::string_view text) {
  std::vector<std::string> lines = detail::split_lines(text);
  if (lines.empty() || lines[0] != kCompareCsvHeader)
    throw ParseError(1, "expected header: " + std::string(kCompareCsvHeader));
  std::vector<CompareRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    rows.push_back(detail::row_from_fields(detail::split_csv_line(lines[i]), i + 1));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Scaling sweep: random topologies per size, all models, per-size means.

struct ScalingAggregate {
  std::size_t nodes = 0;
  PlanModel model = PlanModel::MmapDynamic;
  double mean_agents = 0.0;
  double mean_makespan = 0.0;

  friend bool operator==(const ScalingAggregate&, const ScalingAggregate&) = default;
};

inline constexpr std::string_view kScalingAggregateCsvHeader =
    "nodes,model,mean_agents,mean_makespan";

struct ScalingResult {
  std::vector<CompareRow> rows;            // (size, trial, model) order
  std::vector<ScalingAggregate> aggregates;  // (size, model) order

  friend bool operator==(const ScalingResult&, const ScalingResult&) = default;
};

struct GenParams {
  WeightRange weights = {10, 100};
  double extra_edge_fraction = 0.2;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t nodes,
                                std::size_t trial) {
  return detail::splitmix64(detail::splitmix64(master_seed + nodes) + trial);
}

// sizes are managed node counts; each trial generates size+1 total nodes
// (home included). Trials run on worker threads but rows are stored by task
// index, so output order is (size, trial, model) regardless of scheduling.
inline ScalingResult run_scaling(const std::vector<std::size_t>& sizes,
                                 std::size_t trials, std::uint64_t master_seed,
                                 const GenParams& params = {},
                                 const SimConfig& sim = {}) {
  if (sizes.empty()) throw std::invalid_argument("sizes must be nonempty");
  for (std::size_t n : sizes)
    if (n < 1) throw std::invalid_argument("sizes must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  const std::size_t task_count = sizes.size() * trials;
  std::vector<std::vector<CompareRow>> per_task(task_count);
  auto run_task = [&](std::size_t task) {
    std::size_t size = sizes[task / trials];
    std::uint64_t seed = trial_seed(master_seed, size, task % trials);
    Topology t = generate_random(size + 1, seed, params.weights,
                                 params.extra_edge_fraction);
    per_task[task] = compare_models(t, seed, sim);
  };

  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers > task_count) workers = task_count;
  if (workers <= 1) {
    for (std::size_t task = 0; task < task_count; ++task) run_task(task);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t task = w; task < task_count; task += workers) run_task(task);
      });
    for (std::thread& worker : pool) worker.join();
  }

  ScalingResult result;
  result.rows.reserve(task_count * kAllModels.size());
  for (const std::vector<CompareRow>& rows : per_task)
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());

  for (std::size_t s = 0; s < sizes.size(); ++s) {
    for (std::size_t m = 0; m < kAllModels.size(); ++m) {
      ScalingAggregate agg;
      agg.nodes = sizes[s];
      agg.model = kAllModels[m];
      for (std::size_t trial = 0; trial < trials; ++trial) {
        const CompareRow& row =
            result.rows[(s * trials + trial) * kAllModels.size() + m];
        agg.mean_agents += static_cast<double>(row.agents);
        agg.mean_makespan += row.makespan;
      }
      agg.mean_agents /= static_cast<double>(trials);
      agg.mean_makespan /= static_cast<double>(trials);
      result.aggregates.push_back(agg);
    }
  }
  return result;
}

inline std::string aggregates_to_csv(const std::vector<ScalingAggregate>& aggs) {
  std::string out{kScalingAggregateCsvHeader};
  out += '\n';
  for (const ScalingAggregate& agg : aggs) {
    out += std::to_string(agg.nodes);
    out += ',';
    out += model_name(agg.model);
    out += ',';
    out += format_number(agg.mean_agents);
    out += ',';
    out += format_number(agg.mean_makespan);
    out += '\n';
  }
  return out;
}

inline std::vector<ScalingAggregate> aggregates_from_csv(std::string_view text) {
  std::vector<std::string> lines = detail::split_lines(text);
  if (lines.empty() || lines[0] != kScalingAggregateCsvHeader)
    throw ParseError(1, "expected header: " + std::string(kScalingAggregateCsvHeader));
  std::vector<ScalingAggregate> aggs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = detail::split_csv_line(lines[i]);
    if (fields.size() != 4)
      throw ParseError(i + 1, "expected 4 fields, got " + std::to_string(fields.size()));
    ScalingAggregate agg;
    agg.nodes = static_cast<std::size_t>(detail::csv_u64(fields[0], i + 1));
    agg.model = detail::csv_model(fields[1], i + 1);
    agg.mean_agents = detail::csv_double(fields[2], i + 1);
    agg.mean_makespan = detail::csv_double(fields[3], i + 1);
    aggs.push_back(agg);
  }
  return aggs;
}

// Row block, blank line, aggregate block.
inline std::string scaling_to_csv(const ScalingResult& result) {
  return rows_to_csv(result.rows) + "\n" + aggregates_to_csv(result.aggregates);
}

inline ScalingResult scaling_from_csv(std::string_view text) {
  std::size_t blank = text.find("\n\n");
  if (blank == std::string_view::npos)
    throw ParseError(0, "missing blank line between rows and aggregates");
  ScalingResult result;
  result.rows = rows_from_csv(text.substr(0, blank + 1));
  result.aggregates = aggregates_from_csv(text.substr(blank + 2));
  return result;
}

}  // namespace magplan
