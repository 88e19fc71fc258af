#include <gtest/gtest.h>

#include <filesystem>

#include "ospan/instance_io.hpp"
#include "ospan/quadtree_yao.hpp"
#include "support.hpp"

namespace ospan {
namespace {

namespace fs = std::filesystem;

TEST(Instance, PointsRoundTrip) {
  const auto pts = testing::random_points(20, 3, 5, Norm::L1);
  const Instance in(pts);
  const Instance back = parse_instance(instance_to_json(in));
  ASSERT_EQ(back.kind(), InstanceKind::Points);
  EXPECT_EQ(back.points().norm(), Norm::L1);
  EXPECT_EQ(back.points().dim(), 3u);
  ASSERT_EQ(back.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i)
    EXPECT_TRUE(std::equal(pts[i].begin(), pts[i].end(), back.points()[i].begin()));
}

TEST(Instance, MatrixRoundTrip) {
  const auto m = testing::line_metric({0, 0.1, 3.7, 1e-300});
  const Instance back = parse_instance(instance_to_json(Instance(m)));
  ASSERT_EQ(back.kind(), InstanceKind::Matrix);
  EXPECT_EQ(back.matrix().to_matrix(), m.to_matrix());
}

TEST(Instance, HstRoundTrip) {
  const auto t = random_hst(30, 4, 8);
  const Instance back = parse_instance(instance_to_json(Instance(t)));
  ASSERT_EQ(back.kind(), InstanceKind::Hst);
  EXPECT_EQ(back.metric().to_matrix(), t.to_metric().to_matrix());
}

TEST(Instance, Defaults) {
  const auto in = parse_instance(R"({"kind":"points","points":[[0,0],[3,4]]})");
  EXPECT_EQ(in.points().norm(), Norm::L2);
  EXPECT_EQ(in.metric()(0, 1), 5.0);
  EXPECT_EQ(parse_instance(R"({"kind":"points","dim":2,"points":[]})").size(), 0u);
}

TEST(Instance, Errors) {
  const char* bad[] = {
      "not json",
      R"({"points":[[0]]})",
      R"({"kind":"cloud"})",
      R"({"kind":"points","points":[[0,0],[1]]})",
      R"({"kind":"points","points":[]})",
      R"({"kind":"points","norm":"linf","points":[[0]]})",
      R"({"kind":"matrix","dist":[[0,1],[2,0]]})",
      R"({"kind":"matrix","dist":[[0,1],[1]]})",
      R"({"kind":"matrix","dist":[[1]]})",
      R"({"kind":"matrix","dist":[[0,-1],[-1,0]]})",
      R"({"kind":"hst","tree":{"label":1,"children":[{"leaf":0},{"leaf":2}]}})",
      R"({"kind":"hst","tree":{"label":1,"children":[{"label":2,"children":[{"leaf":0}]},{"leaf":1}]}})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_instance(text), std::invalid_argument) << text;
}

TEST(Instance, Reordered) {
  const auto m = testing::line_metric({0, 1, 5});
  const std::vector<std::size_t> order{2, 0, 1};
  const auto r = Instance(m).reordered(order);
  EXPECT_EQ(r.metric()(0, 1), 5.0);
  EXPECT_EQ(r.metric()(0, 2), 4.0);
  EXPECT_EQ(r.metric()(1, 2), 1.0);

  PointSequence pts(1, Norm::L2);
  for (double x : {0.0, 1.0, 5.0}) pts.append(std::vector<double>{x});
  EXPECT_EQ(Instance(pts).reordered(order).points()[0][0], 5.0);

  const auto t = random_hst(3, 1, 2);
  EXPECT_EQ(Instance(t).reordered(order).metric().to_matrix(), t.to_metric().to_matrix());
  EXPECT_THROW(Instance(m).reordered(std::vector<std::size_t>{0, 0, 1}), std::invalid_argument);
}

TEST(Files, WriteAndRead) {
  const fs::path dir = fs::temp_directory_path() / "ospan_io_test";
  fs::create_directories(dir);
  const fs::path f = dir / "x.json";
  write_text_file(f, "hello");
  write_text_file(f, "world");
  EXPECT_EQ(read_text_file(f), "world");
  EXPECT_THROW(read_text_file(dir / "missing.json"), std::invalid_argument);
  fs::remove_all(dir);
}

TEST(Schedule, RoundTripAndOrder) {
  const Schedule s{"lattice.json", {0, 2, 1, 2, 0}};
  const auto back = parse_schedule(schedule_to_json(s));
  EXPECT_EQ(back.instance, "lattice.json");
  EXPECT_EQ(back.steps, s.steps);
  EXPECT_EQ(arrival_order(s.steps), (std::vector<std::size_t>{0, 4, 2, 1, 3}));
  EXPECT_THROW(parse_schedule(R"({"instance":"a"})"), std::invalid_argument);
}

TEST(Schedule, Shuffle) {
  const auto a = shuffled_order(50, 3);
  EXPECT_EQ(a, shuffled_order(50, 3));
  EXPECT_NE(a, shuffled_order(50, 4));
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(EdgeList, Parse) {
  const auto g = parse_edge_list("# triangle\n0 1\n1 2  # chord\n\n2 0\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.girth(), 3u);
  EXPECT_THROW(parse_edge_list("0 1\n2\n"), std::invalid_argument);
  EXPECT_THROW(parse_edge_list("0 -1\n"), std::invalid_argument);
}

TEST(EdgesCsv, RoundTrip) {
  SpannerGraph g(4);
  g.add_edge(1, 0, 0.1);
  g.add_edge(3, 2, 2.5);
  const auto text = render_table(edges_table(g), TableFormat::Csv);
  EXPECT_EQ(text, "u,v,w\n1,0,0.1\n3,2,2.5\n");
  const auto edges = parse_edges_csv(text);
  EXPECT_EQ(edges, g.edges());
  EXPECT_EQ(graph_from_edges(4, edges).total_weight(), g.total_weight());
  EXPECT_THROW(parse_edges_csv("a,b,c\n"), std::invalid_argument);
  EXPECT_THROW(parse_edges_csv("u,v,w\n1,2\n"), std::invalid_argument);
  EXPECT_THROW(parse_edges_csv("u,v,w\n1,x,2\n"), std::invalid_argument);
  EXPECT_TRUE(parse_edges_csv("# c\nu,v,w\r\n").empty());
}

TEST(Tables, Cells) {
  Table t{{"a", "b", "c", "d"}, {}};
  t.rows.push_back({std::monostate{}, std::int64_t{3}, 0.5, std::string("x,\"y\"")});
  EXPECT_EQ(render_table(t, TableFormat::Csv), "a,b,c,d\n,3,0.5,\"x,\"\"y\"\"\"\n");
  const auto js = render_table(t, TableFormat::Json);
  EXPECT_NE(js.find("\"a\":null"), std::string::npos);
  EXPECT_NE(js.find("\"b\":3"), std::string::npos);
}

TEST(Tables, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(1.0 / 0.0), "inf");
  EXPECT_EQ(format_double(-1.0 / 0.0), "-inf");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Tables, Trace) {
  Alg1 alg(2, 0.25);
  alg.insert(std::vector<double>{0.1, 0.1});
  alg.insert(std::vector<double>{0.9, 0.8});
  alg.insert(std::vector<double>{0.9, 0.8});
  const auto t = trace_table(alg);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"step", "level", "u", "v", "w"}));
  ASSERT_GE(t.rows.size(), 2u);
  EXPECT_EQ(std::get<std::string>(t.rows.back()[1]), "coincident");
}

TEST(Report, Json) {
  MetricsReport r;
  r.n = 3;
  r.lightness = 1.0 / 0.0;
  StretchReport s;
  s.max_stretch = 1.5;
  s.witness = std::make_pair(std::size_t{0}, std::size_t{2});
  const auto text = report_to_json(r, s);
  EXPECT_NE(text.find("\"lightness\": null"), std::string::npos);
  EXPECT_NE(text.find("\"max_stretch\": 1.5"), std::string::npos);
  EXPECT_EQ(report_to_json(r, std::nullopt).find("max_stretch"), std::string::npos);
}

}  // namespace
}  // namespace ospan
