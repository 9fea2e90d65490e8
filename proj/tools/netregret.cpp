#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "netregret/config.hpp"
#include "netregret/errors.hpp"
#include "netregret/harness.hpp"
#include "netregret/selftest.hpp"

using namespace netregret;

namespace {

void emit(const CsvTable& table, const std::string& out) {
  if (out.empty() || out == "-")
    table.write(std::cout);
  else
    table.save(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed online learning with stochastically available agents"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "run every learner of a config file");
  run->add_option("config", run_config, "config file")->required()->check(CLI::ExistingFile);

  std::string sweep_config, p_grid, q_grid = "1";
  auto* sweep = app.add_subcommand("sweep", "aggregate regret over a (p, q) grid");
  sweep->add_option("config", sweep_config, "config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--p-grid", p_grid, "a:b:step or comma list")->required();
  sweep->add_option("--q-grid", q_grid, "a:b:step or comma list");

  std::string rho_graph, rho_p, rho_out;
  double rho_q = 1.0;
  int rho_draws = 1000;
  std::uint64_t rho_seed = 0;
  auto* rho = app.add_subcommand("rho-scan", "exact, upper-bound and empirical rho^2 over p");
  rho->add_option("--graph", rho_graph, "graph spec, e.g. grid2d:6")->required();
  rho->add_option("--p-grid", rho_p, "a:b:step or comma list")->required();
  rho->add_option("--q", rho_q, "edge survival probability");
  rho->add_option("--draws", rho_draws, "Monte-Carlo draws per p")->check(CLI::PositiveNumber);
  rho->add_option("--seed", rho_seed, "seed");
  rho->add_option("--out", rho_out, "output CSV (stdout if omitted)");

  LowerBoundOptions lb;
  std::string lb_out;
  auto* lower = app.add_subcommand("lowerbound", "DFTRL against the cycle adversary");
  lower->add_option("--M", lb.block, "block length, N = 4M")->check(CLI::PositiveNumber);
  lower->add_option("--T", lb.horizon, "horizon")->check(CLI::PositiveNumber);
  lower->add_option("--reps", lb.reps, "number of sign draws")->check(CLI::PositiveNumber);
  lower->add_option("--seed", lb.seed, "seed");
  lower->add_option("--L", lb.lipschitz, "per-block Lipschitz scale");
  lower->add_option("--radius", lb.radius, "ball radius");
  lower->add_option("--out", lb_out, "output CSV (stdout if omitted)");

  auto* self = app.add_subcommand("selftest", "run the invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = experiment_from_config(Config::load(run_config));
      auto res = run_experiment(cfg);
      if (cfg.output_dir.empty()) res.reports.write(std::cout);
    } else if (*sweep) {
      auto cfg = experiment_from_config(Config::load(sweep_config));
      auto table = run_sweep(cfg, parse_grid(p_grid), parse_grid(q_grid));
      if (cfg.output_dir.empty()) table.write(std::cout);
    } else if (*rho) {
      emit(rho_scan(rho_graph, parse_grid(rho_p), rho_q, rho_draws, rho_seed), rho_out);
    } else if (*lower) {
      emit(run_lowerbound(lb), lb_out);
    } else if (*self) {
      bool ok = true;
      for (const auto& r : run_selftest()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << '\n';
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
