#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "netregret/csv.hpp"
#include "netregret/errors.hpp"
#include "netregret/harness.hpp"
#include "netregret/simulation.hpp"

using namespace netregret;

namespace {

std::string text_of(const CsvTable& t) {
  std::ostringstream os;
  t.write(os);
  return os.str();
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.graph = "grid2d:3";
  cfg.p = {0.5};
  cfg.horizon = 40;
  cfg.reps = 3;
  cfg.master_seed = 12;
  cfg.data_seed = 4;
  cfg.learners = {{"dftrl", Algorithm::dftrl, EtaRule::experiment_dftrl, 0.0},
                  {"dogd", Algorithm::dogd, EtaRule::experiment_dogd, 0.0}};
  return cfg;
}

// Every field parses as the type its column promises.
void check_schema(const CsvTable& t, const std::vector<std::string>& header,
                  const std::set<std::string>& text_columns, const std::set<std::string>& optional_columns = {}) {
  REQUIRE(t.header() == header);
  for (const auto& row : t.rows()) {
    REQUIRE(row.size() == header.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (text_columns.count(header[i])) {
        CHECK_FALSE(row[i].empty());
        continue;
      }
      if (row[i].empty() && optional_columns.count(header[i])) continue;
      std::size_t used = 0;
      double x = std::stod(row[i], &used);
      CHECK(used == row[i].size());
      (void)x;
    }
  }
}

}  // namespace

TEST_CASE("graph specs") {
  CHECK(make_graph("clique:5").size() == 5);
  CHECK(make_graph("cycle:8").edges().size() == 8);
  CHECK(make_graph("grid2d:4").size() == 16);
  CHECK(make_graph("lattice:3").edges().size() == 18);
  auto a = make_graph("two_cliques:6:3:9");
  auto b = make_graph("two_cliques:6:3", 9);
  CHECK(a.edges() == b.edges());
  CHECK(make_graph("two_cliques:6:3", 10).edges() != a.edges());
  CHECK_THROWS_AS(make_graph("star:5"), ConfigError);
  CHECK_THROWS_AS(make_graph("clique:x"), ConfigError);
  CHECK_THROWS_AS(make_graph("file:/nonexistent/graph.txt"), IoError);
  auto path = std::filesystem::temp_directory_path() / "netregret_graph_test.txt";
  {
    std::ofstream out(path);
    write_edge_list(out, make_graph("cycle:6"));
  }
  CHECK(make_graph("file:" + path.string()).edges() == make_graph("cycle:6").edges());
}

TEST_CASE("grid parsing") {
  auto g = parse_grid("0.1:1.0:0.1");
  REQUIRE(g.size() == 10);
  CHECK(g[2] == 0.3);
  CHECK(g.back() == 1.0);
  CHECK(parse_grid("0.4,0.6,0.8") == std::vector<double>{0.4, 0.6, 0.8});
  CHECK(parse_grid("1") == std::vector<double>{1.0});
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("a,b"), ConfigError);
}

TEST_CASE("csv formatting round-trips") {
  for (double x : {0.1, 1.0 / 3, 1e-300, -2.5e17, 0.0})
    CHECK(std::stod(format_double(x)) == x);
  CHECK(csv_field("a,b") == "\"a,b\"");
  CsvTable t({"x", "y"});
  t.add({"1", "a,\"b\""});
  std::stringstream ss;
  t.write(ss);
  auto back = CsvTable::read(ss);
  CHECK(back.rows() == t.rows());
  CHECK_THROWS_AS(t.add({"1"}), ShapeError);
  CHECK_THROWS_AS(t.column("z"), ShapeError);
}

TEST_CASE("tiny run: one row per learner") {
  ExperimentConfig cfg;
  cfg.graph = "clique:2";
  cfg.p = {1.0};
  cfg.horizon = 1;
  cfg.reps = 1;
  cfg.learners = {{"dftrl", Algorithm::dftrl, EtaRule::experiment_dftrl, 0.0},
                  {"dogd", Algorithm::dogd, EtaRule::experiment_dogd, 0.0}};
  auto res = run_experiment(cfg);
  CHECK(res.reports.rows().size() == 2);
  // both start at the centre of the ball, so their first-round losses agree
  CHECK(res.runs[0].report.cumulative_alg_loss == doctest::Approx(res.runs[1].report.cumulative_alg_loss));
}

TEST_CASE("runs are deterministic and write documented schemas") {
  auto dir = std::filesystem::temp_directory_path() / "netregret_harness_test";
  std::filesystem::remove_all(dir);
  auto cfg = small_config();
  cfg.series = true;
  cfg.output_dir = dir.string();
  auto first = run_experiment(cfg);
  auto a = CsvTable::load((dir / "reports.csv").string());
  auto s = CsvTable::load((dir / "series.csv").string());
  auto second = run_experiment(cfg);
  CHECK(text_of(first.reports) == text_of(second.reports));
  CHECK(text_of(*first.series) == text_of(*second.series));

  check_schema(a, reports_header(), {"algo", "graph"});
  CHECK(a.rows().size() == 6);
  check_schema(s, series_header(), {"algo"});
  CHECK(s.rows().size() == 3 * 2 * 40);
  // last series point equals the report regret
  for (const auto& run : first.runs) CHECK(run.series.back() == doctest::Approx(run.report.realized_regret).epsilon(1e-9));

  auto sweep = run_sweep(small_config(), {0.5, 1.0}, {1.0});
  check_schema(sweep, sweep_header(), {"graph", "algo"});
  CHECK(sweep.rows().size() == 4);

  auto lb = run_lowerbound({1, 20, 3, 4});
  check_schema(lb, lowerbound_header(), {});
  auto rho = rho_scan("cycle:6", {0.5, 1.0}, 1.0, 50, 1);
  check_schema(rho, rho_scan_header(), {"graph"});
  std::filesystem::remove_all(dir);
}

TEST_CASE("learners within a rep see the same activations") {
  auto cfg = small_config();
  cfg.reps = 2;
  auto res = run_experiment(cfg);
  auto g = make_graph(cfg.graph);
  auto model = model_for(cfg, g.size());
  for (int rep = 0; rep < 2; ++rep) {
    auto acts = sample_trace(model, g, cfg.horizon, seed_for(cfg.master_seed, rep, Stream::activation));
    auto env = make_regression_env(g.size(), cfg.horizon, cfg.data_seed);
    for (const auto& run : res.runs) {
      if (run.rep != rep) continue;
      auto tr = simulate(env, g, acts, run.algorithm, run.eta, default_step(g));
      CHECK(network_regret(tr).realized_regret == run.report.realized_regret);
    }
  }
}

TEST_CASE("sweep over a single point equals the run aggregate") {
  auto cfg = small_config();
  cfg.p = {1.0};
  auto res = run_experiment(cfg);
  std::vector<SweepRow> rows;
  run_sweep(cfg, {1.0}, {1.0}, &rows);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    std::vector<double> r;
    for (const auto& run : res.runs)
      if (run.learner == row.learner) r.push_back(run.report.realized_regret);
    CHECK(row.mean == mean_of(r));
    CHECK(row.sem == sem_of(r));
  }
}

TEST_CASE("lower bound with forced signs, T = 2, by hand") {
  // M = 1, N = 4, R = 1, L = 1, every agent active, b = 1/4 on the 4-cycle.
  LowerBoundOptions opt;
  opt.block = 1;
  opt.horizon = 2;
  opt.reps = 1;
  opt.rule = EtaRule::explicit_value;
  opt.eta = 0.1;
  opt.eps_override = std::vector<int>{1, 1};
  auto t = run_lowerbound(opt);
  REQUIRE(t.rows().size() == 1);
  // Round 0: all predictions are 0, loss 0. Agent 3 receives gradient 4 e1.
  // After gossip z(3) = 4 e1; round 1: agent 3 predicts -0.4 e1, others 0.
  // Round 1 network loss: (1/16) sum_u sum_v loss_v(x_u) = (1/16) * 4 * (-0.4) = -0.1.
  // Comparator: sum_t (1/4) * 4 * x1 = 2 x1 -> x* = -e1, value -2.
  double regret = std::stod(t.rows()[0][1]);
  double comparator = std::stod(t.rows()[0][3]);
  CHECK(comparator == doctest::Approx(-2.0));
  CHECK(regret == doctest::Approx(-0.1 + 2.0));
  CHECK(std::stod(t.rows()[0][2]) == doctest::Approx(4 * 2.0 * 1.0 / 8 * std::sqrt(2.0)));
}

TEST_CASE("non-uniform activation and schedules run") {
  auto cfg = small_config();
  cfg.p = {0.9, 0.2, 0.5, 0.6, 0.7, 0.3, 0.4, 0.8, 0.5};
  cfg.reps = 2;
  auto res = run_experiment(cfg);
  CHECK_FALSE(res.rho_exact);
  CHECK(res.rho_sq > 0);
  CHECK(res.rho_sq < 1);
  cfg.p = {0.5};
  cfg.schedule = CycleSchedule{0.3, 0.9, 20};
  CHECK(run_experiment(cfg).reports.rows().size() == 4);
  cfg.p = {0.5, 0.5};
  CHECK_THROWS_AS(run_experiment(cfg), InvalidModelError);
}

TEST_CASE("adversary env requires a 4M-node graph") {
  auto cfg = small_config();
  cfg.env = "adversary";
  cfg.block = 2;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}
