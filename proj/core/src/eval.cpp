#include "ospan/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "ospan/adversary.hpp"
#include "ospan/errors.hpp"
#include "ospan/hst.hpp"
#include "ospan/ordered_greedy.hpp"
#include "ospan/quadtree_yao.hpp"
#include "ospan/random.hpp"

namespace ospan {

using nlohmann::json;

SpannerGraph offline_greedy(const FiniteMetric& m, double t) {
  if (!(t > 1.0) || !std::isfinite(t)) throw std::invalid_argument("t must be a finite value > 1");
  const std::size_t n = m.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(m(i, j), i, j);
  std::sort(pairs.begin(), pairs.end());
  SpannerGraph g(n);
  for (const auto& [w, i, j] : pairs) {
    if (!bounded_distance(g, i, j, t * w)) g.add_edge(i, j, w);
  }
  return g;
}

// --- algorithms ------------------------------------------------------------

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Hst: return "hst";
    case Algorithm::Hst2e: return "hst2e";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "alg1") return Algorithm::Alg1;
  if (name == "greedy") return Algorithm::Greedy;
  if (name == "hst") return Algorithm::Hst;
  if (name == "hst2e") return Algorithm::Hst2e;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "' (expected alg1, greedy, hst, hst2e)");
}

double AlgorithmSpec::stretch_bound() const {
  switch (id) {
    case Algorithm::Alg1: return (1.0 + eps) * (1.0 + eps);
    case Algorithm::Greedy: return t;
    case Algorithm::Hst: return 2.0 * alpha * alpha / (alpha - 1.0);
    case Algorithm::Hst2e: return 2.0 * (1.0 + 3.0 * eps);
  }
  return std::numeric_limits<double>::infinity();
}

double AlgorithmSpec::greedy_proxy_t() const { return id == Algorithm::Alg1 ? 1.0 + eps : stretch_bound(); }

void AlgorithmSpec::validate() const {
  switch (id) {
    case Algorithm::Alg1:
      if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("alg1 needs 0 < eps < 1");
      break;
    case Algorithm::Greedy:
      if (!(t > 1.0) || !std::isfinite(t)) throw std::invalid_argument("greedy needs a finite t > 1");
      break;
    case Algorithm::Hst:
      if (!(alpha > 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("hst needs a finite alpha > 1");
      break;
    case Algorithm::Hst2e:
      if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("hst2e needs 0 < eps < 1/2");
      break;
  }
}

void check_compatible(Algorithm a, const Instance& instance) {
  switch (a) {
    case Algorithm::Alg1:
      if (instance.kind() != InstanceKind::Points || instance.points().norm() != Norm::L2)
        throw std::invalid_argument("alg1 requires kind=points with norm=l2");
      break;
    case Algorithm::Greedy: break;
    case Algorithm::Hst:
    case Algorithm::Hst2e:
      if (instance.kind() == InstanceKind::Points)
        throw std::invalid_argument(std::string(to_string(a)) + " requires an ultrametric (kind=hst or matrix)");
      break;
  }
}

std::string compatibility_matrix() {
  return "Compatibility (generator -> algorithms):\n"
         "  uniform         points l2   alg1 greedy\n"
         "  hypercube       points l2   greedy (alg1 only if its cone cover fits, i.e. small d)\n"
         "  l1-lattice      points l1   greedy\n"
         "  girth [--star]  matrix      greedy\n"
         "  uniform-metric  matrix      greedy hst hst2e\n"
         "  random-hst      hst         greedy hst hst2e\n"
         "  hst and hst2e reject matrix rows that break the ultrametric inequality.\n";
}

std::string_view to_string(Cadence c) {
  switch (c) {
    case Cadence::None: return "none";
    case Cadence::Final: return "final";
    case Cadence::Prefix: return "prefix";
  }
  return "unknown";
}

Cadence parse_cadence(std::string_view name) {
  if (name == "none") return Cadence::None;
  if (name == "final") return Cadence::Final;
  if (name == "prefix") return Cadence::Prefix;
  throw std::invalid_argument("unknown verification cadence '" + std::string(name) + "' (expected none, final, prefix)");
}

ReplayResult replay(const AlgorithmSpec& alg, const Instance& instance, Cadence cadence, std::size_t prefix_cap) {
  alg.validate();
  check_compatible(alg.id, instance);
  const std::size_t n = instance.size();
  if (cadence == Cadence::Prefix && n > prefix_cap)
    throw std::invalid_argument("every-prefix verification is limited to n <= " + std::to_string(prefix_cap));

  const FiniteMetric m = instance.metric();
  const double bound = alg.stretch_bound();
  ReplayResult result;

  std::optional<Alg1> alg1;
  std::optional<OrderedGreedy> greedy;
  std::optional<AlphaRoundedSpanner> hst;
  std::optional<MultiScaleSpanner> hst2e;
  const bool check_rows = instance.kind() != InstanceKind::Hst;
  switch (alg.id) {
    case Algorithm::Alg1: alg1.emplace(instance.points().dim(), alg.eps); break;
    case Algorithm::Greedy:
      greedy.emplace(alg.t, OrderedGreedy::Options{instance.kind() == InstanceKind::Matrix, false});
      break;
    case Algorithm::Hst: hst.emplace(alg.alpha, check_rows); break;
    case Algorithm::Hst2e: hst2e.emplace(alg.eps, check_rows); break;
  }
  auto graph = [&]() -> const SpannerGraph& {
    if (alg1) return alg1->spanner();
    if (greedy) return greedy->spanner();
    if (hst) return hst->spanner();
    return hst2e->spanner();
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (alg1) {
      alg1->insert(instance.points()[i]);
    } else {
      const std::vector<double> row = m.row_prefix(i);
      if (greedy) greedy->insert(row);
      if (hst) hst->insert(row);
      if (hst2e) hst2e->insert(row);
    }
    if (cadence == Cadence::Prefix) {
      std::optional<SpannerGraph> padded;
      if (graph().vertex_count() != i + 1) {
        padded.emplace(graph());
        padded->ensure_vertices(i + 1);
      }
      const SpannerGraph& prefix = padded ? *padded : graph();
      if (!within_stretch_bound(newest_vertex_stretch(prefix, m).max_stretch, bound)) {
        StretchReport rep = max_stretch(prefix, m);
        result.violation.emplace(i + 1, rep);
        result.stretch = rep;
        break;
      }
    }
  }
  result.spanner = graph();
  result.spanner.ensure_vertices(n);
  if (alg1) result.trace = trace_table(*alg1);
  if (cadence != Cadence::None && !result.violation) {
    result.stretch = max_stretch(result.spanner, m);
    if (!within_stretch_bound(result.stretch->max_stretch, bound)) result.violation.emplace(n, *result.stretch);
  }
  return result;
}

// --- instances -------------------------------------------------------------

namespace {

std::string fmt(double x) { return format_double(x); }

}  // namespace

GeneratedInstance generate_instance(const InstanceSpec& spec) {
  auto with_id = [&](std::string derived) { return spec.id.empty() ? derived : spec.id; };
  std::optional<GeneratedInstance> gen;
  const std::string& g = spec.generator;
  if (g == "uniform") {
    if (spec.dim == 0) throw std::invalid_argument("dim must be positive");
    Rng rng(spec.seed);
    PointSequence pts(spec.dim, Norm::L2);
    std::vector<double> p(spec.dim);
    for (std::size_t i = 0; i < spec.n; ++i) {
      for (double& x : p) x = unit_uniform(rng);
      pts.append(p);
    }
    gen.emplace(GeneratedInstance{
        with_id("uniform-d" + std::to_string(spec.dim) + "-n" + std::to_string(spec.n) + "-s" +
                std::to_string(spec.seed)),
        Instance(std::move(pts)), std::nullopt, {}});
  } else if (g == "l1-lattice") {
    ScheduledSequence seq = l1_lattice_sequence(spec.dim, spec.eps);
    const double manhattan = manhattan_network(seq).total_weight();
    gen.emplace(GeneratedInstance{with_id("l1-lattice-d" + std::to_string(spec.dim) + "-eps" + fmt(spec.eps)),
                                  Instance(seq.points), std::make_pair(std::string("manhattan"), manhattan),
                                  seq.step});
  } else if (g == "random-hst") {
    gen.emplace(GeneratedInstance{
        with_id("random-hst-n" + std::to_string(spec.n) + "-depth" + std::to_string(spec.depth) + "-r" +
                fmt(spec.min_ratio) + "-s" + std::to_string(spec.seed)),
        Instance(random_hst(spec.n, spec.depth, spec.seed, spec.min_ratio)), std::nullopt, {}});
  } else if (g == "girth") {
    const SimpleGraph graph =
        spec.path.empty() ? SimpleGraph::named(spec.graph) : parse_edge_list(read_text_file(spec.path));
    const std::string name = spec.path.empty() ? spec.graph : std::filesystem::path(spec.path).stem().string();
    FiniteMetric m = truncated_girth_metric(graph, spec.k);
    std::string id = "girth-" + name + "-k" + std::to_string(spec.k);
    if (spec.star) {
      StarInstance star = star_append(m, spec.k);
      const double weight = static_cast<double>(star.center) * star.radius;
      gen.emplace(GeneratedInstance{with_id(id + "-star"), Instance(std::move(star.metric)),
                                    std::make_pair(std::string("star"), weight), {}});
    } else {
      gen.emplace(GeneratedInstance{with_id(id), Instance(std::move(m)), std::nullopt, {}});
    }
  } else if (g == "hypercube") {
    PointSequence pts = hypercube_pm1_sequence(spec.dim, spec.eps, spec.n, spec.seed);
    const double star = static_cast<double>(spec.n) * std::sqrt(static_cast<double>(spec.dim));
    gen.emplace(GeneratedInstance{
        with_id("hypercube-d" + std::to_string(spec.dim) + "-eps" + fmt(spec.eps) + "-size" + std::to_string(spec.n) +
                "-s" + std::to_string(spec.seed)),
        Instance(std::move(pts)), std::make_pair(std::string("star"), star), {}});
  } else if (g == "uniform-metric") {
    FiniteMetric m;
    for (std::size_t i = 0; i < spec.n; ++i) m.append(std::vector<double>(i, 1.0));
    gen.emplace(
        GeneratedInstance{with_id("uniform-metric-n" + std::to_string(spec.n)), Instance(std::move(m)), std::nullopt, {}});
  } else if (g == "file") {
    if (spec.path.empty()) throw std::invalid_argument("file instance needs a path");
    Instance inst = load_instance(spec.path);
    std::vector<std::size_t> steps;
    if (!spec.schedule_path.empty()) {
      steps = parse_schedule(read_text_file(spec.schedule_path)).steps;
      if (steps.size() != inst.size()) throw std::invalid_argument("schedule length does not match the instance");
      const auto order = arrival_order(steps);
      inst = inst.reordered(order);
      std::vector<std::size_t> sorted(steps.size());
      for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = steps[order[k]];
      steps = std::move(sorted);
    }
    gen.emplace(GeneratedInstance{with_id(std::filesystem::path(spec.path).stem().string()), std::move(inst),
                                  std::nullopt, std::move(steps)});
  } else {
    throw std::invalid_argument("unknown instance generator '" + g + "'");
  }
  if (spec.shuffle) {
    gen->instance = gen->instance.reordered(shuffled_order(gen->instance.size(), *spec.shuffle));
    gen->steps.clear();
    gen->id += "-shuffle" + std::to_string(*spec.shuffle);
  }
  return std::move(*gen);
}

// --- rows ------------------------------------------------------------------

const std::vector<std::string>& bench_columns() {
  static const std::vector<std::string> cols{
      "instance",      "algorithm",      "n",
      "param_eps",     "param_t",        "param_alpha",
      "edges",         "weight",         "mst_weight",
      "lightness",     "sparsity",       "max_stretch",
      "baseline_mst",  "baseline_offline_greedy", "baseline_named",
      "ratio_vs_mst",  "ratio_vs_greedy", "ratio_vs_named",
      "status",        "wall_ms"};
  return cols;
}

std::vector<Cell> to_cells(const BenchRow& r) {
  auto opt = [](const std::optional<double>& x) { return x ? Cell(*x) : Cell(std::monostate{}); };
  return {r.instance,
          r.algorithm,
          static_cast<std::int64_t>(r.n),
          opt(r.param_eps),
          opt(r.param_t),
          opt(r.param_alpha),
          static_cast<std::int64_t>(r.edges),
          r.weight,
          r.mst_weight,
          r.lightness,
          r.sparsity,
          opt(r.max_stretch),
          r.baseline_mst,
          opt(r.baseline_offline_greedy),
          opt(r.baseline_named),
          r.ratio_vs_mst,
          opt(r.ratio_vs_greedy),
          opt(r.ratio_vs_named),
          r.status,
          r.wall_ms};
}

Table bench_table(const std::vector<BenchRow>& rows) {
  Table t{bench_columns(), {}};
  for (const auto& r : rows) t.rows.push_back(to_cells(r));
  return t;
}

std::string render_bench(const std::vector<BenchRow>& rows, TableFormat format) {
  std::string body = render_table(bench_table(rows), format);
  if (format == TableFormat::Json) return body;
  return std::string(kBenchCsvVersionLine) + "\n" + body;
}

double weight_ratio(double weight, double baseline) {
  if (baseline > 0.0) return weight / baseline;
  return weight == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

std::vector<BenchRow> run_experiment(const ExperimentSpec& spec, const std::function<void(const std::string&)>& log) {
  const auto start = std::chrono::steady_clock::now();
  auto note = [&](const std::string& msg) {
    if (log) log(msg);
  };
  BenchRow row;
  const AlgorithmSpec& alg = spec.algorithm;
  row.algorithm = std::string(to_string(alg.id));
  row.instance = spec.instance.id.empty() ? spec.instance.generator : spec.instance.id;
  switch (alg.id) {
    case Algorithm::Alg1:
    case Algorithm::Hst2e: row.param_eps = alg.eps; break;
    case Algorithm::Greedy: row.param_t = alg.t; break;
    case Algorithm::Hst: row.param_alpha = alg.alpha; break;
  }
  try {
    alg.validate();
    GeneratedInstance gen = generate_instance(spec.instance);
    row.instance = gen.id;
    row.n = gen.instance.size();
    if (row.n == 0) return {};

    ReplayResult res = replay(alg, gen.instance, spec.cadence, spec.prefix_cap);
    const FiniteMetric m = gen.instance.metric();
    if (res.stretch) row.max_stretch = res.stretch->max_stretch;
    row.edges = res.spanner.edge_count();
    row.weight = res.spanner.total_weight();
    row.mst_weight = row.baseline_mst = mst_weight(m);
    row.lightness = row.ratio_vs_mst = weight_ratio(row.weight, row.mst_weight);
    row.sparsity = row.n < 2 ? 1.0 : static_cast<double>(row.edges) / static_cast<double>(row.n - 1);

    if (res.violation) {
      const auto& [prefix, rep] = *res.violation;
      std::ostringstream msg;
      msg << row.instance << " " << row.algorithm << ": stretch " << rep.max_stretch << " exceeds "
          << alg.stretch_bound() << " after " << prefix << " arrivals";
      if (rep.witness) msg << " (pair " << rep.witness->first << ", " << rep.witness->second << ")";
      note(msg.str());
      row.status = "stretch_violation";
    } else {
      if (row.n <= spec.greedy_baseline_cap) {
        row.baseline_offline_greedy = offline_greedy(m, alg.greedy_proxy_t()).total_weight();
        row.ratio_vs_greedy = weight_ratio(row.weight, *row.baseline_offline_greedy);
      }
      if (gen.named_baseline) {
        row.baseline_named = gen.named_baseline->second;
        row.ratio_vs_named = weight_ratio(row.weight, *row.baseline_named);
      }
    }
  } catch (const std::exception& e) {
    note(row.instance + " " + row.algorithm + ": " + e.what());
    row.status = "error";
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {row};
}

// --- bench plans -----------------------------------------------------------

namespace {

InstanceSpec parse_instance_spec(const json& j) {
  InstanceSpec s;
  for (const auto& [key, v] : j.items()) {
    if (key == "generator") s.generator = v.get<std::string>();
    else if (key == "id") s.id = v.get<std::string>();
    else if (key == "n" || key == "size") s.n = v.get<std::size_t>();
    else if (key == "dim" || key == "d") s.dim = v.get<std::size_t>();
    else if (key == "eps") s.eps = v.get<double>();
    else if (key == "depth") s.depth = v.get<std::size_t>();
    else if (key == "min_ratio") s.min_ratio = v.get<double>();
    else if (key == "graph") s.graph = v.get<std::string>();
    else if (key == "k") s.k = v.get<std::size_t>();
    else if (key == "star") s.star = v.get<bool>();
    else if (key == "path") s.path = v.get<std::string>();
    else if (key == "schedule") s.schedule_path = v.get<std::string>();
    else if (key == "seed") s.seed = v.get<std::uint64_t>();
    else if (key == "shuffle") s.shuffle = v.get<std::uint64_t>();
    else throw std::invalid_argument("unknown instance field '" + key + "'");
  }
  return s;
}

AlgorithmSpec parse_algorithm_spec(const json& j) {
  AlgorithmSpec a;
  if (j.is_string()) {
    a.id = parse_algorithm(j.get<std::string>());
    return a;
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "id" || key == "name") a.id = parse_algorithm(v.get<std::string>());
    else if (key == "eps") a.eps = v.get<double>();
    else if (key == "t") a.t = v.get<double>();
    else if (key == "alpha") a.alpha = v.get<double>();
    else throw std::invalid_argument("unknown algorithm field '" + key + "'");
  }
  return a;
}

ExperimentSpec parse_experiment(const json& j) {
  ExperimentSpec e;
  for (const auto& [key, v] : j.items()) {
    if (key == "instance") e.instance = parse_instance_spec(v);
    else if (key == "algorithm") e.algorithm = parse_algorithm_spec(v);
    else if (key == "cadence" || key == "verify") e.cadence = parse_cadence(v.get<std::string>());
    else if (key == "prefix_cap") e.prefix_cap = v.get<std::size_t>();
    else if (key == "greedy_baseline_cap") e.greedy_baseline_cap = v.get<std::size_t>();
    else throw std::invalid_argument("unknown experiment field '" + key + "'");
  }
  return e;
}

void set_path(json& j, const std::string& dotted, const json& value) {
  json* cur = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw std::invalid_argument("bad grid path '" + dotted + "'");
    if (dot == std::string::npos) {
      (*cur)[key] = value;
      return;
    }
    json& next = (*cur)[key];
    if (next.is_string()) next = json{{"id", next}};
    if (!next.is_object()) next = json::object();
    cur = &next;
    start = dot + 1;
  }
}

void expand(const json& templ, std::vector<json>& out) {
  json base = templ;
  json grid = json::object();
  if (base.contains("grid")) {
    grid = base.at("grid");
    base.erase("grid");
    if (!grid.is_object()) throw std::invalid_argument("grid must be an object of arrays");
  }
  std::vector<std::pair<std::string, json>> axes;
  for (const auto& [k, v] : grid.items()) {
    if (!v.is_array() || v.empty()) throw std::invalid_argument("grid values for '" + k + "' must be a non-empty array");
    axes.emplace_back(k, v);
  }
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    json cell = base;
    for (std::size_t a = 0; a < axes.size(); ++a) set_path(cell, axes[a].first, axes[a].second[idx[a]]);
    out.push_back(std::move(cell));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
      if (a == 0) return;
    }
    if (axes.empty()) return;
  }
}

}  // namespace

BenchPlan parse_bench_plan(std::string_view json_text) {
  BenchPlan plan;
  try {
    const json j = json::parse(json_text);
    std::vector<json> cells;
    if (j.contains("experiments")) {
      for (const auto& [key, v] : j.items()) {
        if (key == "experiments") {
          for (const json& e : v) expand(e, cells);
        } else if (key == "threads") {
          plan.threads = v.get<std::size_t>();
        } else {
          throw std::invalid_argument("unknown bench field '" + key + "'");
        }
      }
    } else {
      json single = j;
      if (single.contains("threads")) {
        plan.threads = single.at("threads").get<std::size_t>();
        single.erase("threads");
      }
      expand(single, cells);
    }
    std::set<std::string> seen;
    for (const json& c : cells) {
      const std::string key = c.dump();
      if (!seen.insert(key).second) {
        plan.warnings.push_back("duplicate grid cell dropped: " + key);
        continue;
      }
      plan.cells.push_back(parse_experiment(c));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed bench spec: ") + e.what());
  }
  return plan;
}

void sweep(const BenchPlan& plan, const std::function<void(const BenchRow&)>& emit,
           const std::function<void(const std::string&)>& log) {
  const std::size_t cells = plan.cells.size();
  std::size_t threads = plan.threads ? plan.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(cells, 1));

  std::mutex mu;
  std::vector<std::optional<std::vector<BenchRow>>> done(cells);
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_cell{0};
  auto locked_log = [&](const std::string& msg) {
    if (!log) return;
    std::lock_guard lock(mu);
    log(msg);
  };
  auto worker = [&] {
    while (true) {
      const std::size_t c = next_cell.fetch_add(1);
      if (c >= cells) return;
      auto rows = run_experiment(plan.cells[c], locked_log);
      std::lock_guard lock(mu);
      done[c] = std::move(rows);
      while (next_emit < cells && done[next_emit]) {
        for (const BenchRow& r : *done[next_emit]) emit(r);
        done[next_emit].reset();
        ++next_emit;
      }
    }
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
}

}  // namespace ospan
