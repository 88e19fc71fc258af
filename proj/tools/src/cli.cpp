#include "ospan_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ospan/errors.hpp"
#include "ospan/eval.hpp"
#include "ospan/instance_io.hpp"
#include "ospan/verify.hpp"

namespace ospan::cli {

namespace fs = std::filesystem;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string verify = "final";
  std::optional<std::uint64_t> shuffle;
  std::string schedule;
};

struct RunOptions {
  std::string input;
  std::string trace;
  double eps = 0.25;
  double t = 2.0;
  double alpha = 2.0;
};

struct GenOptions {
  std::size_t d = 2;
  double eps = 0.125;
  std::size_t size = 32;
  std::size_t n = 64;
  std::size_t depth = 6;
  double min_ratio = 1.0;
  std::string graph = "heawood";
  std::string edges;
  std::size_t k = 2;
  bool star = false;
};

struct VerifyOptions {
  std::string input;
  std::string spanner;
  double bound = 0.0;
};

TableFormat table_format(const Globals& g) { return g.format == "json" ? TableFormat::Json : TableFormat::Csv; }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

/// Loads an instance in arrival order. order[k] is the file index of arrival k.
std::pair<Instance, std::vector<std::size_t>> load_for_run(const std::string& input, const Globals& g,
                                                           std::ostream& err) {
  Instance inst = load_instance(input);
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), 0);

  std::optional<Schedule> schedule;
  if (!g.schedule.empty()) {
    schedule = parse_schedule(read_text_file(g.schedule));
  } else {
    const fs::path sidecar = fs::path(input).parent_path() / "schedule.json";
    if (fs::exists(sidecar)) {
      Schedule s = parse_schedule(read_text_file(sidecar));
      if (s.instance == fs::path(input).filename().string()) {
        schedule = std::move(s);
        err << "# using schedule " << sidecar.string() << "\n";
      }
    }
  }
  if (schedule) {
    if (schedule->steps.size() != inst.size()) throw std::invalid_argument("schedule length does not match the instance");
    order = arrival_order(schedule->steps);
  }
  if (g.shuffle) {
    const auto perm = shuffled_order(order.size(), *g.shuffle);
    std::vector<std::size_t> composed(order.size());
    for (std::size_t k = 0; k < perm.size(); ++k) composed[k] = order[perm[k]];
    order = std::move(composed);
  }
  Instance arranged = inst.reordered(order);
  return {std::move(arranged), std::move(order)};
}

SpannerGraph to_file_indices(const SpannerGraph& g, const std::vector<std::size_t>& order) {
  SpannerGraph out(g.vertex_count());
  for (const Edge& e : g.edges()) out.add_edge(order[e.u], order[e.v], e.w);
  return out;
}

int run_algorithm(Algorithm id, const RunOptions& opt, const Globals& g, std::ostream& out, std::ostream& err) {
  AlgorithmSpec alg;
  alg.id = id;
  alg.eps = opt.eps;
  alg.t = opt.t;
  alg.alpha = opt.alpha;
  alg.validate();

  auto [instance, order] = load_for_run(opt.input, g, err);
  const Cadence cadence = parse_cadence(g.verify);
  ReplayResult res = replay(alg, instance, cadence);

  const SpannerGraph spanner = to_file_indices(res.spanner, order);
  emit(render_table(edges_table(spanner), table_format(g)), g.out, out);
  if (!opt.trace.empty()) {
    Table trace = res.trace;
    for (auto& row : trace.rows) {
      for (std::size_t c : {2U, 3U}) row[c] = static_cast<std::int64_t>(order[std::get<std::int64_t>(row[c])]);
    }
    write_text_file(opt.trace, render_table(trace, table_format(g)));
  }

  const FiniteMetric m = instance.metric();
  const double mst = mst_weight(m);
  err << "# n=" << instance.size() << " edges=" << spanner.edge_count()
      << " weight=" << format_double(spanner.total_weight())
      << " lightness=" << format_double(weight_ratio(spanner.total_weight(), mst));
  if (res.stretch) err << " max_stretch=" << format_double(res.stretch->max_stretch);
  err << " bound=" << format_double(alg.stretch_bound()) << "\n";

  if (res.violation) {
    const auto& [prefix, rep] = *res.violation;
    err << "error: stretch " << format_double(rep.max_stretch) << " exceeds the bound "
        << format_double(alg.stretch_bound()) << " after " << prefix << " arrivals";
    if (rep.witness) err << " (pair " << order[rep.witness->first] << ", " << order[rep.witness->second] << ")";
    err << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

int run_gen(const std::string& kind, const GenOptions& opt, const Globals& g, std::ostream& out, std::ostream& err) {
  InstanceSpec spec;
  spec.seed = g.seed;
  spec.dim = opt.d;
  spec.eps = opt.eps;
  spec.n = opt.n;
  if (kind == "l1-lattice") {
    spec.generator = "l1-lattice";
  } else if (kind == "girth") {
    spec.generator = "girth";
    spec.graph = opt.graph;
    spec.path = opt.edges;
    spec.k = opt.k;
    spec.star = opt.star;
  } else if (kind == "hypercube") {
    spec.generator = "hypercube";
    spec.n = opt.size;
  } else if (kind == "uniform") {
    spec.generator = "uniform";
  } else if (kind == "random-hst") {
    spec.generator = "random-hst";
    spec.depth = opt.depth;
    spec.min_ratio = opt.min_ratio;
  } else {
    spec.generator = "uniform-metric";
  }
  GeneratedInstance gen = generate_instance(spec);
  const std::size_t n = gen.instance.size();

  if (kind == "girth") {
    const SimpleGraph graph = opt.edges.empty() ? SimpleGraph::named(opt.graph) : parse_edge_list(read_text_file(opt.edges));
    const std::size_t girth = graph.girth();
    err << "# graph girth " << girth;
    if (girth != 0 && girth < 2 * opt.k + 2) err << " (below the recommended 2k+2 = " << 2 * opt.k + 2 << ")";
    err << "\n";
  }

  Schedule schedule;
  schedule.steps = gen.steps;
  if (schedule.steps.empty()) {
    schedule.steps.resize(n);
    if (kind == "girth" || kind == "hypercube") {
      const bool has_center = kind == "hypercube" || opt.star;
      std::fill(schedule.steps.begin(), schedule.steps.end(), 0);
      if (has_center && n > 0) schedule.steps.back() = 1;
    } else {
      std::iota(schedule.steps.begin(), schedule.steps.end(), 0);
    }
  }
  emit(instance_to_json(gen.instance), g.out, out);

  fs::path sidecar = g.schedule;
  if (sidecar.empty() && !g.out.empty() && g.out != "-") sidecar = fs::path(g.out).parent_path() / "schedule.json";
  if (!sidecar.empty()) {
    if (!g.out.empty() && g.out != "-") schedule.instance = fs::path(g.out).filename().string();
    write_text_file(sidecar, schedule_to_json(schedule));
    err << "# schedule written to " << sidecar.string() << "\n";
  } else {
    err << "# no schedule sidecar written (use --out or --schedule)\n";
  }
  if (gen.named_baseline)
    err << "# baseline " << gen.named_baseline->first << " weight " << format_double(gen.named_baseline->second) << "\n";
  return kOk;
}

int run_verify(const VerifyOptions& opt, const Globals& g, std::ostream& out, std::ostream& err) {
  if (!(opt.bound >= 1.0)) throw std::invalid_argument("--bound must be >= 1");
  const Instance instance = load_instance(opt.input);
  const FiniteMetric m = instance.metric();
  const auto edges = parse_edges_csv(read_text_file(opt.spanner));
  const SpannerGraph graph = graph_from_edges(m.size(), edges);
  const StretchReport stretch = max_stretch(graph, m);

  MetricsReport report;
  if (stretch.connected) {
    report = metrics_report(graph, m);
  } else {
    report.n = m.size();
    report.total_weight = graph.total_weight();
    report.edge_count = graph.edge_count();
    report.mst_weight = mst_weight(m);
  }
  emit(report_to_json(report, stretch), g.out, out);
  if (!within_stretch_bound(stretch.max_stretch, opt.bound)) {
    err << "error: max stretch " << format_double(stretch.max_stretch) << " exceeds bound " << format_double(opt.bound);
    if (stretch.witness) err << " at pair (" << stretch.witness->first << ", " << stretch.witness->second << ")";
    err << "\n";
    return kVerificationFailed;
  }
  err << "# ok: max stretch " << format_double(stretch.max_stretch) << " <= " << format_double(opt.bound) << "\n";
  return kOk;
}

int run_bench(const std::string& spec_path, const Globals& g, std::ostream& out, std::ostream& err) {
  const BenchPlan plan = parse_bench_plan(read_text_file(spec_path));
  for (const auto& w : plan.warnings) err << "warning: " << w << "\n";

  const TableFormat format = table_format(g);
  const bool to_file = !g.out.empty() && g.out != "-";
  std::ofstream file;
  if (to_file && format == TableFormat::Csv) {
    file.open(g.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + g.out);
  }
  std::ostream& sink = to_file ? static_cast<std::ostream&>(file) : out;

  std::vector<BenchRow> rows;
  bool violation = false;
  bool failed = false;
  if (format == TableFormat::Csv) {
    sink << render_bench({}, TableFormat::Csv) << std::flush;
  }
  sweep(
      plan,
      [&](const BenchRow& row) {
        violation |= row.status == "stretch_violation";
        failed |= row.status == "error";
        if (format == TableFormat::Csv) {
          const std::string text = render_table(Table{bench_columns(), {to_cells(row)}}, TableFormat::Csv);
          sink << text.substr(text.find('\n') + 1) << std::flush;
        } else {
          rows.push_back(row);
        }
      },
      [&](const std::string& msg) { err << "bench: " << msg << "\n"; });
  if (format == TableFormat::Json) emit(render_bench(rows, TableFormat::Json), g.out, out);
  err << "# " << plan.cells.size() << " cells\n";
  if (violation) return kVerificationFailed;
  if (failed) return kInfeasible;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online metric t-spanners: algorithms, adversarial generators and verification.", "ospan"};
  app.fallthrough();
  app.require_subcommand(1);
  app.footer(compatibility_matrix() +
             "\nExit codes: 0 ok, 1 usage or input error, 2 stretch bound violated, 3 generator infeasible "
             "(bench: some cell failed).");

  Globals g;
  std::uint64_t shuffle_seed = 0;
  app.add_option("--seed", g.seed, "Random seed for generators")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: standard output)");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--verify", g.verify, "Stretch verification cadence")
      ->check(CLI::IsMember({"none", "final", "prefix"}))
      ->capture_default_str();
  auto* shuffle_opt = app.add_option("--shuffle", shuffle_seed, "Permute the arrival order with this seed");
  app.add_option("--schedule", g.schedule, "Schedule JSON (gen: where to write it; runs: arrival order to use)");

  RunOptions run_opt;
  auto* alg1 = app.add_subcommand("alg1", "Online Euclidean spanner (grid levels + ordered Yao), stretch (1+eps)^2");
  alg1->add_option("--eps", run_opt.eps, "Stretch parameter in (0,1)")->required();
  alg1->add_option("--input", run_opt.input, "Instance JSON (kind=points, norm=l2)")->required();
  alg1->add_option("--trace", run_opt.trace, "Write the leveled edge trace (step,level,u,v,w)");

  auto* greedy = app.add_subcommand("greedy", "Online ordered greedy t-spanner for any metric");
  greedy->add_option("--t", run_opt.t, "Stretch t > 1")->required();
  greedy->add_option("--input", run_opt.input, "Instance JSON")->required();

  auto* hst = app.add_subcommand("hst", "Online alpha-rounded HST spanner for ultrametrics");
  hst->add_option("--alpha", run_opt.alpha, "Rounding base alpha > 1")->required();
  hst->add_option("--input", run_opt.input, "Instance JSON (kind=hst or an ultrametric matrix)")->required();

  auto* hst2e = app.add_subcommand("hst2e", "Online multi-scale (2+eps) spanner for ultrametrics");
  hst2e->add_option("--eps", run_opt.eps, "eps in (0,1/2)")->required();
  hst2e->add_option("--input", run_opt.input, "Instance JSON (kind=hst or an ultrametric matrix)")->required();

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate an instance (JSON) plus a schedule.json sidecar");
  gen->require_subcommand(1);
  auto* lattice = gen->add_subcommand("l1-lattice", "Integer lattice presented by L1 norm");
  lattice->add_option("--d", gen_opt.d, "Dimension")->required();
  lattice->add_option("--eps", gen_opt.eps, "eps in (0, 1/d)")->required();
  auto* girth = gen->add_subcommand("girth", "Truncated metric of a high-girth graph");
  girth->add_option("--graph", gen_opt.graph, "petersen, heawood or mcgee")->capture_default_str();
  girth->add_option("--edges", gen_opt.edges, "Edge list file instead of a named graph");
  girth->add_option("--k", gen_opt.k, "Truncation at 2k-1")->required();
  girth->add_flag("--star", gen_opt.star, "Append the star center last");
  auto* cube = gen->add_subcommand("hypercube", "+-1 vectors with near-equal Hamming distances, then the origin");
  cube->add_option("--d", gen_opt.d, "Dimension")->required();
  cube->add_option("--eps", gen_opt.eps, "Hamming slack in (0,1)")->required();
  cube->add_option("--size", gen_opt.size, "Number of +-1 points")->required();
  auto* uniform = gen->add_subcommand("uniform", "Uniform random points in the unit cube (L2)");
  uniform->add_option("--n", gen_opt.n, "Number of points")->required();
  uniform->add_option("--d", gen_opt.d, "Dimension")->capture_default_str();
  auto* rhst = gen->add_subcommand("random-hst", "Random HST");
  rhst->add_option("--n", gen_opt.n, "Number of leaves")->required();
  rhst->add_option("--depth", gen_opt.depth, "Maximum number of internal levels")->capture_default_str();
  rhst->add_option("--min-ratio", gen_opt.min_ratio, "Minimum parent/child label ratio")->capture_default_str();
  auto* umetric = gen->add_subcommand("uniform-metric", "All distances equal to 1");
  umetric->add_option("--n", gen_opt.n, "Number of points")->required();

  VerifyOptions ver_opt;
  auto* verify = app.add_subcommand("verify", "Check a spanner's stretch against a bound; prints a JSON report");
  verify->add_option("--input", ver_opt.input, "Instance JSON")->required();
  verify->add_option("--spanner", ver_opt.spanner, "Spanner CSV (u,v,w)")->required();
  verify->add_option("--bound", ver_opt.bound, "Stretch bound")->required();

  std::string bench_spec;
  auto* bench = app.add_subcommand("bench", "Run an experiment sweep and write the bench CSV");
  bench->add_option("--spec", bench_spec, "Bench spec JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }
  if (shuffle_opt->count() > 0) g.shuffle = shuffle_seed;

  err << "# resolved config\n";
  std::istringstream config(app.config_to_str(true, false));
  for (std::string line; std::getline(config, line);) {
    if (!line.empty()) err << "#   " << line << "\n";
  }

  try {
    if (*alg1) return run_algorithm(Algorithm::Alg1, run_opt, g, out, err);
    if (*greedy) return run_algorithm(Algorithm::Greedy, run_opt, g, out, err);
    if (*hst) return run_algorithm(Algorithm::Hst, run_opt, g, out, err);
    if (*hst2e) return run_algorithm(Algorithm::Hst2e, run_opt, g, out, err);
    if (*gen) {
      for (auto* sub : {lattice, girth, cube, uniform, rhst, umetric}) {
        if (*sub) return run_gen(sub->get_name(), gen_opt, g, out, err);
      }
    }
    if (*verify) return run_verify(ver_opt, g, out, err);
    if (*bench) return run_bench(bench_spec, g, out, err);
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const StretchViolationError& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace ospan::cli
