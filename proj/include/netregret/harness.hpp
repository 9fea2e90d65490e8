#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netregret/activation.hpp"
#include "netregret/config.hpp"
#include "netregret/csv.hpp"
#include "netregret/environment.hpp"
#include "netregret/graph.hpp"
#include "netregret/learners.hpp"
#include "netregret/regret.hpp"

namespace netregret {

/// "clique:36", "cycle:8", "grid2d:6", "lattice:6", "two_cliques:18:4[:seed]",
/// "file:<path>". two_cliques without an explicit seed uses graph_seed.
Graph make_graph(const std::string& spec, std::uint64_t graph_seed = 0);

struct ExperimentConfig {
  std::string graph = "clique:36";
  std::uint64_t graph_seed = 0;
  std::vector<double> p;  // length 1 means uniform over all agents
  double q = 1.0;
  std::optional<CycleSchedule> schedule;
  std::string env = "regression";
  std::uint64_t data_seed = 0;
  int block = 1;  // adversary M
  double lipschitz = 1.0;  // adversary L
  double radius = 1.0;  // adversary ball radius
  long horizon = 1000;
  int reps = 20;
  std::uint64_t master_seed = 0;
  std::string output_dir;
  bool series = false;
  bool decomposition = true;
  double delta = 0.05;
  std::optional<double> b;
  int rho_draws = 1000;
  std::vector<LearnerConfig> learners;
  std::vector<std::optional<std::vector<int>>> eps_override;  // adversary signs per rep (tests)
};

/// Builds an ExperimentConfig; unknown keys are reported together in one ConfigError.
ExperimentConfig experiment_from_config(const Config& cfg);

struct RunResult {
  int rep = 0;
  std::string learner;
  Algorithm algorithm = Algorithm::dftrl;
  double eta = 0.0;
  RegretReport report;
  std::vector<double> series;
};

struct ExperimentResult {
  Graph graph;
  ActivationModel model;
  double b = 0.0;
  double rho_sq = 0.0;
  bool rho_exact = false;
  double lipschitz = 0.0;
  std::vector<RunResult> runs;  // ordered by (rep, learner)
  CsvTable reports;
  std::optional<CsvTable> series;
};

std::vector<std::string> reports_header();
std::vector<std::string> series_header();
std::vector<std::string> sweep_header();
std::vector<std::string> lowerbound_header();
std::vector<std::string> rho_scan_header();

/// Activation model of the config for a graph with n nodes.
ActivationModel model_for(const ExperimentConfig& cfg, int n);

/// Runs every learner on the same activation trace per repetition. Writes
/// reports.csv (and series.csv when enabled) under output_dir when it is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct SweepRow {
  double p = 0.0;
  double q = 0.0;
  std::string learner;
  double mean = 0.0;
  double sem = 0.0;
};

/// Uniform activation p and survival q over the grid; one row per (p, q, learner).
CsvTable run_sweep(const ExperimentConfig& cfg, const std::vector<double>& p_grid,
                   const std::vector<double>& q_grid, std::vector<SweepRow>* rows = nullptr);

struct LowerBoundOptions {
  int block = 2;
  long horizon = 400;
  int reps = 50;
  std::uint64_t seed = 0;
  double lipschitz = 1.0;
  double radius = 1.0;
  EtaRule rule = EtaRule::theory_third_bound;
  double eta = 0.0;
  std::optional<std::vector<int>> eps_override;
};

/// DFTRL on the cycle adversary with every agent active, one row per sign draw.
CsvTable run_lowerbound(const LowerBoundOptions& opt);

CsvTable rho_scan(const std::string& graph_spec, const std::vector<double>& p_grid, double q,
                  int draws, std::uint64_t seed);

/// "a:b:step" (inclusive of b up to rounding) or "x,y,z".
std::vector<double> parse_grid(const std::string& text);

double mean_of(const std::vector<double>& xs);
double sem_of(const std::vector<double>& xs);

}  // namespace netregret
