#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ospan/graph.hpp"
#include "ospan/instance_io.hpp"
#include "ospan/metric.hpp"
#include "ospan/verify.hpp"

namespace ospan {

/// Classic offline greedy: all pairs by (distance, i, j) ascending, a pair is
/// added iff its current spanner distance exceeds t * distance.
SpannerGraph offline_greedy(const FiniteMetric& m, double t);

// --- algorithms ------------------------------------------------------------

enum class Algorithm { Alg1, Greedy, Hst, Hst2e };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct AlgorithmSpec {
  Algorithm id = Algorithm::Greedy;
  double eps = 0.25;   // alg1, hst2e
  double t = 2.0;      // greedy
  double alpha = 2.0;  // hst

  /// Declared worst-case stretch of the algorithm.
  double stretch_bound() const;
  /// Stretch used for the offline greedy baseline.
  double greedy_proxy_t() const;
  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

/// Throws std::invalid_argument if the algorithm cannot run on this kind of
/// input (alg1 needs L2 points).
void check_compatible(Algorithm a, const Instance& instance);

/// Human readable generator x algorithm compatibility table.
std::string compatibility_matrix();

enum class Cadence { None, Final, Prefix };

std::string_view to_string(Cadence c);
Cadence parse_cadence(std::string_view name);

inline constexpr std::size_t kDefaultPrefixCap = 512;
inline constexpr std::size_t kDefaultGreedyBaselineCap = 512;

struct ReplayResult {
  SpannerGraph spanner;
  std::optional<StretchReport> stretch;  // final-state report unless cadence is None
  /// Set when some prefix exceeded the bound: that prefix length and its report.
  std::optional<std::pair<std::size_t, StretchReport>> violation;
  Table trace;  // alg1 only: step,level,u,v,w
};

/// Feeds the instance to the algorithm in index order and verifies stretch at
/// the cadence. Prefix cadence throws std::invalid_argument if n > prefix_cap.
/// MetricViolationError propagates if the input breaks the algorithm's metric
/// precondition.
ReplayResult replay(const AlgorithmSpec& alg, const Instance& instance, Cadence cadence,
                    std::size_t prefix_cap = kDefaultPrefixCap);

// --- experiments -----------------------------------------------------------

struct InstanceSpec {
  std::string generator = "uniform";  // uniform, l1-lattice, random-hst, girth, hypercube, uniform-metric, file
  std::string id;                     // CSV label; derived from the parameters when empty
  std::size_t n = 64;
  std::size_t dim = 2;
  double eps = 0.125;       // l1-lattice, hypercube
  std::size_t depth = 6;    // random-hst
  double min_ratio = 1.0;   // random-hst
  std::string graph = "heawood";
  std::size_t k = 2;
  bool star = false;
  std::string path;           // file
  std::string schedule_path;  // file, optional
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> shuffle;
};

struct GeneratedInstance {
  std::string id;
  Instance instance;
  /// Instance-specific offline network weight: Manhattan network or star.
  std::optional<std::pair<std::string, double>> named_baseline;
  std::vector<std::size_t> steps;  // presentation step per point, when the generator has one
};

/// Throws InfeasibleError (hypercube budget) or std::invalid_argument.
GeneratedInstance generate_instance(const InstanceSpec& spec);

struct ExperimentSpec {
  InstanceSpec instance;
  AlgorithmSpec algorithm;
  Cadence cadence = Cadence::Final;
  std::size_t prefix_cap = kDefaultPrefixCap;
  std::size_t greedy_baseline_cap = kDefaultGreedyBaselineCap;
};

struct BenchRow {
  std::string instance;
  std::string algorithm;
  std::size_t n = 0;
  std::optional<double> param_eps;
  std::optional<double> param_t;
  std::optional<double> param_alpha;
  std::size_t edges = 0;
  double weight = 0.0;
  double mst_weight = 0.0;
  double lightness = 1.0;
  double sparsity = 1.0;
  std::optional<double> max_stretch;
  double baseline_mst = 0.0;
  std::optional<double> baseline_offline_greedy;
  std::optional<double> baseline_named;
  double ratio_vs_mst = 1.0;
  std::optional<double> ratio_vs_greedy;
  std::optional<double> ratio_vs_named;
  std::string status = "ok";  // ok, stretch_violation, error
  double wall_ms = 0.0;
};

/// Bench CSV header columns, in order.
const std::vector<std::string>& bench_columns();
inline constexpr std::string_view kBenchCsvVersionLine = "# ospan bench csv v1";

std::vector<Cell> to_cells(const BenchRow& row);
Table bench_table(const std::vector<BenchRow>& rows);
/// Version comment line plus the table, or a JSON array.
std::string render_bench(const std::vector<BenchRow>& rows, TableFormat format);

/// Weight ratio with the degenerate conventions of metrics_report.
double weight_ratio(double weight, double baseline);

/// Runs one experiment. An empty instance yields no rows. Failures are
/// reported in the row's status, never thrown; `log` receives diagnostics.
std::vector<BenchRow> run_experiment(const ExperimentSpec& spec,
                                     const std::function<void(const std::string&)>& log = {});

struct BenchPlan {
  std::vector<ExperimentSpec> cells;
  std::vector<std::string> warnings;
  std::size_t threads = 0;  // 0: hardware concurrency
};

/// Bench spec JSON: one experiment object, or {"experiments": [...]}, each
/// optionally carrying "grid": {"dotted.path": [values...]} expanded as a
/// cross product in key order. Identical cells are dropped with a warning.
BenchPlan parse_bench_plan(std::string_view json_text);

/// Runs every cell (cells may run concurrently) and hands rows to `emit` in
/// cell order.
void sweep(const BenchPlan& plan, const std::function<void(const BenchRow&)>& emit,
           const std::function<void(const std::string&)>& log = {});

}  // namespace ospan
