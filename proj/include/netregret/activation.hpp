#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netregret/graph.hpp"
#include "netregret/rng.hpp"

namespace netregret {

/// Every agent shares p(t) = pmin + (pmax - pmin) * (1 - cos(2 pi t / period)) / 2,
/// so p starts at pmin, peaks at pmax half a period later.
struct CycleSchedule {
  double pmin = 0.0;
  double pmax = 0.0;
  double period = 1.0;

  double at(long t) const;
};

/// Parses "cycle(pmin,pmax,period)".
CycleSchedule parse_schedule(const std::string& text);

struct ActivationModel {
  std::vector<double> p;
  double q = 1.0;
  std::optional<CycleSchedule> schedule;

  static ActivationModel uniform(int n, double p, double q = 1.0);

  /// Throws InvalidModelError unless every p_v and q lie in (0, 1] and the
  /// schedule bounds satisfy 0 < pmin <= pmax <= 1.
  void validate() const;
  bool is_uniform() const;
  /// Activation probabilities used at round t (schedule overrides p).
  std::vector<double> probabilities_at(long t) const;
  /// Smallest probability any agent can have in any round.
  double pmin_bound() const;
};

struct ActivationStats {
  double pbar = 0.0;
  double sigma_sq = 0.0;
  double pmin = 0.0;
  double pmax = 0.0;
  double nonempty_fraction = 0.0;  // 1 - prod_v (1 - p_v)
};

/// Moments of model.p. With a schedule, per-round moments averaged over rounds [0, horizon)
/// (pmin/pmax are the extremes reached).
ActivationStats activation_stats(const ActivationModel& model, long horizon = 0);

/// Human-readable warnings (currently only sum_v p_v < 1).
std::vector<std::string> activation_warnings(const ActivationModel& model);

struct RoundActivation {
  std::vector<int> active_nodes;  // ascending
  std::vector<Edge> active_edges;  // canonical order
};

/// Nodes are drawn in ascending order, then each base edge with both
/// endpoints active is kept with probability q in canonical edge order. No
/// uniform is consumed for edges when q == 1.
RoundActivation sample_round(const ActivationModel& model, const Graph& g, long t, Rng& rng);

}  // namespace netregret
