#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ospan/adversary.hpp"
#include "ospan/graph.hpp"
#include "ospan/hst.hpp"
#include "ospan/metric.hpp"
#include "ospan/quadtree_yao.hpp"
#include "ospan/verify.hpp"

namespace ospan {

enum class InstanceKind { Points, Matrix, Hst };

std::string_view to_string(InstanceKind kind);

/// A self-describing input: Euclidean/L1 points, an explicit distance matrix
/// or an HST whose leaves are the points.
class Instance {
 public:
  explicit Instance(PointSequence points) : data_(std::move(points)) {}
  explicit Instance(FiniteMetric matrix) : data_(std::move(matrix)) {}
  explicit Instance(HstTree tree) : data_(std::move(tree)) {}

  InstanceKind kind() const noexcept { return static_cast<InstanceKind>(data_.index()); }
  std::size_t size() const;

  const PointSequence& points() const { return std::get<PointSequence>(data_); }
  const FiniteMetric& matrix() const { return std::get<FiniteMetric>(data_); }
  const HstTree& tree() const { return std::get<HstTree>(data_); }

  /// The distances of the instance (for an HST, its leaf ultrametric).
  FiniteMetric metric() const;

  /// Same instance presented in a new order: arrival k is old point order[k].
  Instance reordered(std::span<const std::size_t> order) const;

 private:
  std::variant<PointSequence, FiniteMetric, HstTree> data_;
};

/// Throws std::invalid_argument with a description of the first problem.
Instance parse_instance(std::string_view json_text);
std::string instance_to_json(const Instance& instance);

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file and rename, so readers never see a partial file.
void write_text_file(const std::filesystem::path& path, std::string_view text);

inline Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

// --- schedules -------------------------------------------------------------

struct Schedule {
  std::string instance;  // file name of the instance it belongs to; may be empty
  std::vector<std::size_t> steps;
};

Schedule parse_schedule(std::string_view json_text);
std::string schedule_to_json(const Schedule& schedule);

/// Point indices sorted by step, stable.
std::vector<std::size_t> arrival_order(std::span<const std::size_t> steps);

/// Reproducible random permutation of 0..n-1.
std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed);

// --- graphs ----------------------------------------------------------------

/// Whitespace separated "u v" pairs, one per line; '#' starts a comment.
SimpleGraph parse_edge_list(std::string_view text);

/// CSV with header u,v,w.
std::vector<Edge> parse_edges_csv(std::string_view text);
SpannerGraph graph_from_edges(std::size_t n, std::span<const Edge> edges);

// --- tables ----------------------------------------------------------------

/// Empty cells render as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip representation; inf, -inf and nan spelled out.
std::string format_double(double x);

enum class TableFormat { Csv, Json };

/// CSV: header line then rows. JSON: an array of row objects.
std::string render_table(const Table& table, TableFormat format);

Table edges_table(const SpannerGraph& g);
Table trace_table(const Alg1& alg);

std::string report_to_json(const MetricsReport& report, const std::optional<StretchReport>& stretch);

}  // namespace ospan
