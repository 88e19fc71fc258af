#include "ospan/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ospan/random.hpp"

namespace ospan {

using nlohmann::json;

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Points: return "points";
    case InstanceKind::Matrix: return "matrix";
    case InstanceKind::Hst: return "hst";
  }
  return "unknown";
}

// --- Instance --------------------------------------------------------------

std::size_t Instance::size() const {
  switch (kind()) {
    case InstanceKind::Points: return points().size();
    case InstanceKind::Matrix: return matrix().size();
    case InstanceKind::Hst: return tree().leaf_count();
  }
  return 0;
}

FiniteMetric Instance::metric() const {
  switch (kind()) {
    case InstanceKind::Points: return FiniteMetric::from_points(points());
    case InstanceKind::Matrix: return matrix();
    case InstanceKind::Hst: return tree().to_metric();
  }
  return {};
}

Instance Instance::reordered(std::span<const std::size_t> order) const {
  const std::size_t n = size();
  if (order.size() != n) throw std::invalid_argument("order size does not match the instance");
  std::vector<std::size_t> position(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || position[order[k]] != n) throw std::invalid_argument("order is not a permutation");
    position[order[k]] = k;
  }
  switch (kind()) {
    case InstanceKind::Points: {
      PointSequence out(points().dim(), points().norm());
      for (std::size_t k : order) out.append(points()[k]);
      return Instance(std::move(out));
    }
    case InstanceKind::Matrix: {
      FiniteMetric out;
      for (std::size_t a = 0; a < n; ++a) {
        std::vector<double> row(a);
        for (std::size_t b = 0; b < a; ++b) row[b] = matrix()(order[a], order[b]);
        out.append(row);
      }
      return Instance(std::move(out));
    }
    case InstanceKind::Hst: return Instance(tree().relabeled(position));
  }
  throw std::logic_error("unreachable");
}

// --- JSON ------------------------------------------------------------------

namespace {

void parse_hst_node(const json& j, HstTree& tree, std::size_t parent) {
  if (!j.is_object()) throw std::invalid_argument("hst node must be an object");
  if (j.contains("leaf")) {
    tree.add_leaf(parent, j.at("leaf").get<std::size_t>());
    return;
  }
  const std::size_t id = tree.add_internal(parent, j.at("label").get<double>());
  const json& children = j.at("children");
  if (!children.is_array() || children.empty()) throw std::invalid_argument("internal hst node needs children");
  for (const json& c : children) parse_hst_node(c, tree, id);
}

json hst_node_to_json(const HstTree& tree, std::size_t id) {
  const auto& node = tree.node(id);
  if (node.point) return json{{"leaf", *node.point}};
  json children = json::array();
  for (std::size_t c : node.children) children.push_back(hst_node_to_json(tree, c));
  return json{{"label", node.label}, {"children", std::move(children)}};
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "points") {
      const Norm norm = parse_norm(j.value("norm", std::string("l2")));
      const json& pts = j.at("points");
      std::size_t dim = j.contains("dim") ? j.at("dim").get<std::size_t>() : 0;
      if (dim == 0 && !pts.empty()) dim = pts.at(0).size();
      if (dim == 0) throw std::invalid_argument("points instance needs a positive dim");
      PointSequence seq(dim, norm);
      for (const json& p : pts) {
        const auto coords = p.get<std::vector<double>>();
        if (coords.size() != dim) throw std::invalid_argument("point has wrong dimension");
        seq.append(coords);
      }
      return Instance(std::move(seq));
    }
    if (kind == "matrix") {
      return Instance(FiniteMetric::from_matrix(j.at("dist").get<std::vector<std::vector<double>>>()));
    }
    if (kind == "hst") {
      HstTree tree;
      parse_hst_node(j.at("tree"), tree, HstTree::kNoParent);
      tree.validate();
      return Instance(std::move(tree));
    }
    throw std::invalid_argument("unknown instance kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance: ") + e.what());
  }
}

std::string instance_to_json(const Instance& instance) {
  json j;
  switch (instance.kind()) {
    case InstanceKind::Points: {
      const auto& pts = instance.points();
      json arr = json::array();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto p = pts[i];
        arr.push_back(std::vector<double>(p.begin(), p.end()));
      }
      j = json{{"kind", "points"}, {"dim", pts.dim()}, {"norm", std::string(to_string(pts.norm()))}, {"points", arr}};
      break;
    }
    case InstanceKind::Matrix:
      j = json{{"kind", "matrix"}, {"dist", instance.matrix().to_matrix()}};
      break;
    case InstanceKind::Hst:
      j = json{{"kind", "hst"}, {"tree", hst_node_to_json(instance.tree(), instance.tree().root())}};
      break;
  }
  return j.dump() + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// --- schedules -------------------------------------------------------------

Schedule parse_schedule(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    Schedule s;
    s.instance = j.value("instance", std::string());
    s.steps = j.at("steps").get<std::vector<std::size_t>>();
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed schedule: ") + e.what());
  }
}

std::string schedule_to_json(const Schedule& schedule) {
  json j{{"instance", schedule.instance}, {"steps", schedule.steps}};
  return j.dump() + "\n";
}

std::vector<std::size_t> arrival_order(std::span<const std::size_t> steps) {
  std::vector<std::size_t> order(steps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return steps[a] < steps[b]; });
  return order;
}

std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  shuffle(std::span<std::size_t>(order), rng);
  return order;
}

// --- graphs ----------------------------------------------------------------

SimpleGraph parse_edge_list(std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t n = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    if (!(fields >> u)) continue;
    if (!(fields >> v) || u < 0 || v < 0)
      throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": expected two vertex ids");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    n = std::max({n, static_cast<std::size_t>(u) + 1, static_cast<std::size_t>(v) + 1});
  }
  return SimpleGraph::from_edges(n, edges);
}

std::vector<Edge> parse_edges_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Edge> edges;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      if (line != "u,v,w") throw std::invalid_argument("spanner CSV must start with header u,v,w");
      continue;
    }
    std::istringstream fields(line);
    std::string a, b, c;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, c))
      throw std::invalid_argument("spanner CSV line " + std::to_string(lineno) + ": expected u,v,w");
    try {
      edges.push_back({std::stoul(a), std::stoul(b), std::stod(c)});
    } catch (const std::exception&) {
      throw std::invalid_argument("spanner CSV line " + std::to_string(lineno) + ": bad number");
    }
  }
  return edges;
}

SpannerGraph graph_from_edges(std::size_t n, std::span<const Edge> edges) {
  SpannerGraph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v, e.w);
  return g;
}

// --- tables ----------------------------------------------------------------

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return {};
  if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&c)) return format_double(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

json json_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  return std::get<std::string>(c);
}

}  // namespace

std::string render_table(const Table& table, TableFormat format) {
  if (format == TableFormat::Json) {
    json arr = json::array();
    for (const auto& row : table.rows) {
      json obj = json::object();
      for (std::size_t k = 0; k < table.columns.size(); ++k) obj[table.columns[k]] = json_cell(row.at(k));
      arr.push_back(std::move(obj));
    }
    return arr.dump() + "\n";
  }
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) out += ',';
    out += table.columns[k];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += csv_cell(row[k]);
    }
    out += '\n';
  }
  return out;
}

Table edges_table(const SpannerGraph& g) {
  Table t{{"u", "v", "w"}, {}};
  for (const Edge& e : g.edges())
    t.rows.push_back({static_cast<std::int64_t>(e.u), static_cast<std::int64_t>(e.v), e.w});
  return t;
}

Table trace_table(const Alg1& alg) {
  Table t{{"step", "level", "u", "v", "w"}, {}};
  const auto& log = alg.log();
  for (std::size_t k = 0; k < log.size(); ++k) {
    const LeveledEdge& e = log[k];
    Cell level = e.level == LeveledEdge::kCoincident ? Cell(std::string("coincident"))
                                                     : Cell(static_cast<std::int64_t>(e.level));
    t.rows.push_back({static_cast<std::int64_t>(alg.log_steps()[k]), level, static_cast<std::int64_t>(e.u),
                      static_cast<std::int64_t>(e.v), e.w});
  }
  return t;
}

std::string report_to_json(const MetricsReport& report, const std::optional<StretchReport>& stretch) {
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  json baselines = json::array();
  for (const auto& b : report.baselines)
    baselines.push_back(json{{"name", b.name}, {"weight", num(b.weight)}, {"ratio", num(b.ratio)}});
  json j{{"n", report.n},
         {"total_weight", num(report.total_weight)},
         {"mst_weight", num(report.mst_weight)},
         {"lightness", num(report.lightness)},
         {"edge_count", report.edge_count},
         {"sparsity", num(report.sparsity)},
         {"baselines", std::move(baselines)}};
  if (stretch) {
    j["max_stretch"] = num(stretch->max_stretch);
    j["connected"] = stretch->connected;
    j["stretch_witness"] = stretch->witness ? json::array({stretch->witness->first, stretch->witness->second})
                                            : json(nullptr);
  }
  return j.dump(2) + "\n";
}

}  // namespace ospan
