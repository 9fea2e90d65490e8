#include "netregret/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "netregret/errors.hpp"
#include "netregret/gossip.hpp"
#include "netregret/parallel.hpp"
#include "netregret/simulation.hpp"

namespace netregret {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int to_int(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad integer '" + s + "' in graph spec " + spec);
}

std::string fmt(double x) { return format_double(x); }

}  // namespace

Graph make_graph(const std::string& spec, std::uint64_t graph_seed) {
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list " + path);
    return read_edge_list(in, spec);
  }
  auto parts = split(spec, ':');
  if (parts.size() < 2) throw ConfigError("graph spec needs kind:size, got '" + spec + "'");
  const std::string& kind = parts[0];
  const int size = to_int(parts[1], spec);
  if (kind == "clique" && parts.size() == 2) return build_clique(size);
  if (kind == "cycle" && parts.size() == 2) return build_cycle(size);
  if (kind == "grid2d" && parts.size() == 2) return build_grid2d(size);
  if (kind == "lattice" && parts.size() == 2) return build_lattice(size);
  if (kind == "two_cliques" && (parts.size() == 3 || parts.size() == 4)) {
    const int bridges = to_int(parts[2], spec);
    std::uint64_t seed = parts.size() == 4 ? static_cast<std::uint64_t>(std::stoull(parts[3])) : graph_seed;
    Rng rng(hash_words({seed, static_cast<std::uint64_t>(Stream::graph)}));
    return build_two_cliques(size, bridges, rng);
  }
  throw ConfigError("unknown graph spec '" + spec + "'");
}

ExperimentConfig experiment_from_config(const Config& cfg) {
  ExperimentConfig e;
  std::string graph = cfg.string("graph", e.graph);
  if (graph.find(':') == std::string::npos) {
    graph += ":" + std::to_string(cfg.integer("size"));
    if (cfg.has("bridges")) graph += ":" + std::to_string(cfg.integer("bridges"));
  }
  e.graph = graph;
  e.graph_seed = static_cast<std::uint64_t>(cfg.integer("graph_seed", 0));

  if (cfg.has("p_uniform") && cfg.has("p"))
    throw ConfigError("give either p_uniform or p, not both");
  if (cfg.has("p_uniform"))
    e.p = {cfg.number("p_uniform")};
  else if (cfg.has("p"))
    e.p = cfg.array("p");
  else
    e.p = {1.0};
  e.q = cfg.number("q", 1.0);
  if (cfg.has("schedule")) e.schedule = parse_schedule(cfg.string("schedule"));

  e.env = cfg.string("env", e.env);
  if (e.env != "regression" && e.env != "adversary")
    throw ConfigError("env must be \"regression\" or \"adversary\", got \"" + e.env + "\"");
  e.data_seed = static_cast<std::uint64_t>(cfg.integer("data_seed", 0));
  e.block = static_cast<int>(cfg.integer("M", e.block));
  e.lipschitz = cfg.number("L", e.lipschitz);
  e.radius = cfg.number("radius", e.env == "regression" ? 2.0 : e.radius);
  e.horizon = cfg.integer("T", e.horizon);
  e.reps = static_cast<int>(cfg.integer("reps", e.reps));
  e.master_seed = static_cast<std::uint64_t>(cfg.integer("master_seed", 0));
  e.output_dir = cfg.string("output_dir", "");
  e.series = cfg.boolean("series", false);
  e.decomposition = cfg.boolean("decomposition", true);
  e.delta = cfg.number("delta", e.delta);
  if (cfg.has("b")) e.b = cfg.number("b");
  e.rho_draws = static_cast<int>(cfg.integer("rho_draws", e.rho_draws));

  auto read_learner = [&](const std::string& prefix, const std::string& name) {
    LearnerConfig lc;
    lc.name = name;
    lc.algorithm = parse_algorithm(cfg.string(prefix + "algorithm", "dftrl"));
    if (lc.name.empty()) lc.name = to_string(lc.algorithm);
    if (cfg.has(prefix + "eta")) {
      lc.rule = EtaRule::explicit_value;
      lc.eta = cfg.number(prefix + "eta");
      if (cfg.has(prefix + "eta_rule") && parse_eta_rule(cfg.string(prefix + "eta_rule")) != EtaRule::explicit_value)
        throw ConfigError("learner '" + lc.name + "' sets both eta and a non-explicit eta_rule");
    } else {
      std::string fallback = lc.algorithm == Algorithm::dogd ? "experiment_dogd" : "experiment_dftrl";
      lc.rule = parse_eta_rule(cfg.string(prefix + "eta_rule", fallback));
    }
    return lc;
  };
  for (const auto& name : cfg.subsections("learner")) e.learners.push_back(read_learner("learner." + name + ".", name));
  if (e.learners.empty()) e.learners.push_back(read_learner("", ""));

  auto unused = cfg.unused_keys();
  if (!unused.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unused) msg += " " + k;
    throw ConfigError(msg);
  }
  if (e.reps < 1) throw ConfigError("reps must be >= 1");
  if (e.horizon < 1) throw ConfigError("T must be >= 1");
  for (const auto& lc : e.learners)
    if (lc.rule == EtaRule::explicit_value && !(lc.eta > 0))
      throw ConfigError("learner '" + lc.name + "' needs eta > 0");
  return e;
}

std::vector<std::string> reports_header() {
  return {"rep", "algo", "T", "N", "p", "q", "graph", "eta", "regret", "comparator_value",
          "termA", "termB", "second_bound", "third_bound"};
}
std::vector<std::string> series_header() { return {"rep", "algo", "t", "regret"}; }
std::vector<std::string> sweep_header() {
  return {"graph", "N", "T", "p", "q", "algo", "reps", "mean_regret", "sem_regret"};
}
std::vector<std::string> lowerbound_header() {
  return {"draw", "regret", "floor", "comparator_value", "M", "N", "T"};
}
std::vector<std::string> rho_scan_header() {
  return {"graph", "p", "q", "rho_sq_exact", "rho_sq_upper", "rho_sq_empirical", "draws"};
}

ActivationModel model_for(const ExperimentConfig& cfg, int n) {
  ActivationModel m;
  if (cfg.p.size() == 1)
    m.p.assign(n, cfg.p.front());
  else if (static_cast<int>(cfg.p.size()) == n)
    m.p = cfg.p;
  else
    throw InvalidModelError("p has " + std::to_string(cfg.p.size()) + " entries for " +
                            std::to_string(n) + " agents");
  m.q = cfg.q;
  m.schedule = cfg.schedule;
  m.validate();
  return m;
}

namespace {

std::shared_ptr<const LossOracle> make_env(const ExperimentConfig& cfg, int n, int rep) {
  if (cfg.env == "regression") return nullptr;  // shared, built once by the caller
  if (4 * cfg.block != n)
    throw ConfigError("adversary env needs N = 4M agents (graph has " + std::to_string(n) +
                      ", M = " + std::to_string(cfg.block) + ")");
  std::optional<std::vector<int>> override_signs;
  if (rep < static_cast<int>(cfg.eps_override.size())) override_signs = cfg.eps_override[rep];
  return std::make_shared<const AdversaryEnv>(
      cfg.block, cfg.horizon, cfg.lipschitz,
      seed_for(cfg.master_seed, static_cast<std::uint64_t>(rep), Stream::adversary), cfg.radius, 2,
      override_signs);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.learners.empty()) throw ConfigError("no learners configured");
  Graph g = make_graph(cfg.graph, cfg.graph_seed);
  ActivationModel model = model_for(cfg, g.size());
  for (const auto& w : activation_warnings(model)) std::cerr << "warning: " << w << '\n';
  const int n = g.size();
  const double b = cfg.b.value_or(default_step(g));

  std::shared_ptr<const LossOracle> shared_env;
  if (cfg.env == "regression") shared_env = make_regression_env(n, cfg.horizon, cfg.data_seed);
  double lip = shared_env ? shared_env->lipschitz() : make_env(cfg, n, 0)->lipschitz();
  double radius = shared_env ? shared_env->radius() : cfg.radius;

  ActivationStats stats = activation_stats(model, cfg.horizon);
  const bool uniform = model.is_uniform();
  const double p_eff = uniform ? model.p.front() : model.pmin_bound();
  bool rho_exact = uniform && std::abs(b - default_step(g)) <= 1e-12 * b;
  double rho_sq = rho_exact ? rho_closed_form(g, p_eff, model.q)
                            : rho_empirical(g, model, b, cfg.rho_draws,
                                            seed_for(cfg.master_seed, 0, Stream::gossip));
  rho_sq = std::clamp(rho_sq, 0.0, 1.0);

  Regularizer reg{radius, 1.0};
  BoundParams bp;
  bp.n = n;
  bp.horizon = cfg.horizon;
  bp.d = std::sqrt(reg.diameter_sq());
  bp.l = lip;
  bp.mu = reg.mu;
  bp.pbar = stats.pbar;
  bp.sigma_sq = stats.sigma_sq;
  bp.pmin = model.pmin_bound();
  bp.p = p_eff;
  bp.q = model.q;
  bp.rho = std::sqrt(rho_sq);
  bp.delta = cfg.delta;
  bp.kappa = g.kappa();

  std::vector<double> etas;
  for (const auto& lc : cfg.learners) {
    EtaInputs in;
    in.p = p_eff;
    in.n = n;
    in.horizon = cfg.horizon;
    in.d = bp.d;
    in.l = lip;
    in.mu = reg.mu;
    in.pmin = bp.pmin;
    in.explicit_eta = lc.eta;
    etas.push_back(tune_eta(lc.rule, in));
  }

  const std::size_t nl = cfg.learners.size();
  std::vector<RunResult> runs(static_cast<std::size_t>(cfg.reps) * nl);
  parallel_for(static_cast<std::size_t>(cfg.reps), [&](std::size_t rep) {
    auto env = shared_env ? shared_env : make_env(cfg, n, static_cast<int>(rep));
    auto trace_act = sample_trace(model, g, cfg.horizon,
                                  seed_for(cfg.master_seed, rep, Stream::activation));
    for (std::size_t li = 0; li < nl; ++li) {
      auto& run = runs[rep * nl + li];
      run.rep = static_cast<int>(rep);
      run.learner = cfg.learners[li].name;
      run.algorithm = cfg.learners[li].algorithm;
      run.eta = etas[li];
      SimulationTrace tr = simulate(env, g, trace_act, run.algorithm, run.eta, b);
      bool any = std::any_of(tr.rounds.begin(), tr.rounds.end(),
                             [](const RoundRecord& r) { return !r.active.empty(); });
      if (!any) {
        run.report.realized_regret = 0.0;
        run.report.comparator.x = Eigen::VectorXd::Zero(env->dim());
        if (cfg.series) run.series.assign(static_cast<std::size_t>(cfg.horizon), 0.0);
        continue;
      }
      run.report = network_regret(tr);
      if (cfg.decomposition)
        run.report.decomposition = decomposition_diagnostic(tr, run.report.comparator.x);
      if (cfg.series) run.series = regret_series(tr);
    }
  });

  std::map<std::string, double> bounds_by_eta;
  CsvTable reports(reports_header());
  std::optional<CsvTable> series;
  if (cfg.series) series.emplace(series_header());
  const double p_col = uniform ? model.p.front() : stats.pbar;
  for (auto& run : runs) {
    BoundParams rp = bp;
    rp.eta = run.eta;
    std::string second, third;
    try {
      run.report.bounds = eval_bounds(rp);
      second = fmt(run.report.bounds.at("second_bound"));
      third = fmt(run.report.bounds.at("third_bound"));
    } catch (const SpectralGapError&) {
      second = third = "nan";
    }
    const auto& dec = run.report.decomposition;
    reports.add({std::to_string(run.rep), run.learner, std::to_string(cfg.horizon), std::to_string(n),
                 fmt(p_col), fmt(model.q), g.label(), fmt(run.eta), fmt(run.report.realized_regret),
                 fmt(run.report.comparator.value), dec ? fmt(dec->term_a) : "",
                 dec ? fmt(dec->term_b) : "", second, third});
    if (series)
      for (std::size_t t = 0; t < run.series.size(); ++t)
        series->add({std::to_string(run.rep), run.learner, std::to_string(t + 1), fmt(run.series[t])});
  }

  if (!cfg.output_dir.empty()) {
    reports.save(cfg.output_dir + "/reports.csv");
    if (series) series->save(cfg.output_dir + "/series.csv");
  }

  return ExperimentResult{std::move(g), std::move(model), b, rho_sq, rho_exact, lip,
                          std::move(runs), std::move(reports), std::move(series)};
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sem_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return sd / std::sqrt(static_cast<double>(xs.size()));
}

CsvTable run_sweep(const ExperimentConfig& cfg, const std::vector<double>& p_grid,
                   const std::vector<double>& q_grid, std::vector<SweepRow>* rows) {
  if (p_grid.empty() || q_grid.empty()) throw ConfigError("sweep grids must be non-empty");
  CsvTable out(sweep_header());
  for (double p : p_grid)
    for (double q : q_grid) {
      ExperimentConfig point = cfg;
      point.p = {p};
      point.q = q;
      point.schedule.reset();
      point.output_dir.clear();
      point.series = false;
      ExperimentResult res = run_experiment(point);
      for (const auto& lc : cfg.learners) {
        std::vector<double> regrets;
        for (const auto& run : res.runs)
          if (run.learner == lc.name) regrets.push_back(run.report.realized_regret);
        SweepRow row{p, q, lc.name, mean_of(regrets), sem_of(regrets)};
        out.add({res.graph.label(), std::to_string(res.graph.size()), std::to_string(cfg.horizon),
                 fmt(p), fmt(q), lc.name, std::to_string(cfg.reps), fmt(row.mean), fmt(row.sem)});
        if (rows) rows->push_back(row);
      }
    }
  if (!cfg.output_dir.empty()) out.save(cfg.output_dir + "/sweep.csv");
  return out;
}

CsvTable run_lowerbound(const LowerBoundOptions& opt) {
  if (opt.block < 1) throw InvalidParameterError("lowerbound needs M >= 1");
  ExperimentConfig cfg;
  cfg.graph = "cycle:" + std::to_string(4 * opt.block);
  cfg.p = {1.0};
  cfg.q = 1.0;
  cfg.env = "adversary";
  cfg.block = opt.block;
  cfg.lipschitz = opt.lipschitz;
  cfg.radius = opt.radius;
  cfg.horizon = opt.horizon;
  cfg.reps = opt.reps;
  cfg.master_seed = opt.seed;
  cfg.decomposition = true;
  if (opt.eps_override) cfg.eps_override.assign(static_cast<std::size_t>(opt.reps), opt.eps_override);
  LearnerConfig lc;
  lc.name = "dftrl";
  lc.algorithm = Algorithm::dftrl;
  lc.rule = opt.rule;
  lc.eta = opt.eta;
  cfg.learners = {lc};
  ExperimentResult res = run_experiment(cfg);

  const int n = 4 * opt.block;
  const double floor = lower_bound_floor(opt.block, opt.horizon, 2.0 * opt.radius, opt.lipschitz);
  CsvTable out(lowerbound_header());
  for (const auto& run : res.runs)
    out.add({std::to_string(run.rep), fmt(run.report.realized_regret), fmt(floor),
             fmt(run.report.comparator.value), std::to_string(opt.block), std::to_string(n),
             std::to_string(opt.horizon)});
  return out;
}

CsvTable rho_scan(const std::string& graph_spec, const std::vector<double>& p_grid, double q,
                  int draws, std::uint64_t seed) {
  Graph g = make_graph(graph_spec, seed);
  const double b = default_step(g);
  CsvTable out(rho_scan_header());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    ActivationModel m = ActivationModel::uniform(g.size(), p_grid[i], q);
    m.validate();
    double exact = rho_closed_form(g, p_grid[i], q);
    double upper = rho_upper_bound(g, p_grid[i], b, q);
    double emp = rho_empirical(g, m, b, draws, hash_words({seed, static_cast<std::uint64_t>(Stream::gossip), i}));
    out.add({g.label(), fmt(p_grid[i]), fmt(q), fmt(exact), fmt(upper), fmt(emp), std::to_string(draws)});
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad number '" + s + "' in grid '" + text + "'");
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("grid must be a:b:step, got '" + text + "'");
    double a = num(parts[0]), b = num(parts[1]), step = num(parts[2]);
    if (!(step > 0) || b < a) throw ConfigError("grid needs step > 0 and b >= a: '" + text + "'");
    long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i)
      out.push_back(std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12);
  } else {
    for (const auto& s : split(text, ','))
      if (!s.empty()) out.push_back(num(s));
  }
  if (out.empty()) throw ConfigError("empty grid '" + text + "'");
  return out;
}

}  // namespace netregret
