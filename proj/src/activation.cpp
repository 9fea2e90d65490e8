#include "netregret/activation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "netregret/errors.hpp"

namespace netregret {

double CycleSchedule::at(long t) const {
  double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / period;
  return pmin + (pmax - pmin) * (1.0 - std::cos(phase)) / 2.0;
}

CycleSchedule parse_schedule(const std::string& text) {
  const std::string head = "cycle(";
  if (text.rfind(head, 0) != 0 || text.back() != ')')
    throw InvalidModelError("schedule must look like cycle(pmin,pmax,period): " + text);
  std::string body = text.substr(head.size(), text.size() - head.size() - 1);
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    std::string tok = body.substr(pos, comma - pos);
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw InvalidModelError("bad number '" + tok + "' in schedule " + text);
    vals.push_back(v);
    pos = comma + 1;
  }
  if (vals.size() != 3) throw InvalidModelError("schedule needs 3 arguments: " + text);
  return {vals[0], vals[1], vals[2]};
}

ActivationModel ActivationModel::uniform(int n, double p, double q) {
  ActivationModel m;
  m.p.assign(n, p);
  m.q = q;
  return m;
}

void ActivationModel::validate() const {
  if (p.empty()) throw InvalidModelError("activation vector is empty");
  for (std::size_t v = 0; v < p.size(); ++v)
    if (!(p[v] > 0.0 && p[v] <= 1.0))
      throw InvalidModelError("p[" + std::to_string(v) + "] = " + std::to_string(p[v]) +
                              " outside (0,1]");
  if (!(q > 0.0 && q <= 1.0)) throw InvalidModelError("q outside (0,1]");
  if (schedule) {
    const auto& s = *schedule;
    if (!(s.pmin > 0.0 && s.pmin <= s.pmax && s.pmax <= 1.0))
      throw InvalidModelError("schedule bounds must satisfy 0 < pmin <= pmax <= 1");
    if (!(s.period > 0.0)) throw InvalidModelError("schedule period must be positive");
  }
}

bool ActivationModel::is_uniform() const {
  if (schedule) return false;
  return std::all_of(p.begin(), p.end(), [&](double x) { return x == p.front(); });
}

std::vector<double> ActivationModel::probabilities_at(long t) const {
  if (!schedule) return p;
  return std::vector<double>(p.size(), std::clamp(schedule->at(t), schedule->pmin, schedule->pmax));
}

double ActivationModel::pmin_bound() const {
  if (schedule) return schedule->pmin;
  return *std::min_element(p.begin(), p.end());
}

namespace {

ActivationStats stats_of(const std::vector<double>& p) {
  ActivationStats s;
  if (p.empty()) return s;
  const double n = static_cast<double>(p.size());
  s.pbar = std::accumulate(p.begin(), p.end(), 0.0) / n;
  double sq = 0.0;
  for (double x : p) sq += x * x;
  s.sigma_sq = std::max(0.0, sq / n - s.pbar * s.pbar);
  s.pmin = *std::min_element(p.begin(), p.end());
  s.pmax = *std::max_element(p.begin(), p.end());
  double none = 1.0;
  for (double x : p) none *= 1.0 - x;
  s.nonempty_fraction = 1.0 - none;
  return s;
}

}  // namespace

ActivationStats activation_stats(const ActivationModel& model, long horizon) {
  if (!model.schedule || horizon < 1) return stats_of(model.p);
  ActivationStats s;
  s.pmin = 1.0;
  for (long t = 0; t < horizon; ++t) {
    ActivationStats r = stats_of(model.probabilities_at(t));
    s.pbar += r.pbar;
    s.sigma_sq += r.sigma_sq;
    s.nonempty_fraction += r.nonempty_fraction;
    s.pmin = std::min(s.pmin, r.pmin);
    s.pmax = std::max(s.pmax, r.pmax);
  }
  const double h = static_cast<double>(horizon);
  s.pbar /= h;
  s.sigma_sq /= h;
  s.nonempty_fraction /= h;
  return s;
}

std::vector<std::string> activation_warnings(const ActivationModel& model) {
  std::vector<std::string> out;
  double total = std::accumulate(model.p.begin(), model.p.end(), 0.0);
  if (model.schedule) total = model.schedule->pmin * static_cast<double>(model.p.size());
  if (total < 1.0)
    out.push_back("sum of activation probabilities is " + std::to_string(total) +
                  " < 1; many rounds will have no active agent");
  return out;
}

RoundActivation sample_round(const ActivationModel& model, const Graph& g, long t, Rng& rng) {
  if (static_cast<int>(model.p.size()) != g.size())
    throw InvalidModelError("activation vector has " + std::to_string(model.p.size()) +
                            " entries for a graph with " + std::to_string(g.size()) + " nodes");
  RoundActivation r;
  std::vector<char> on(g.size(), 0);
  auto draw = [&](int v, double pv) {
    if (rng.bernoulli(pv)) {
      on[v] = 1;
      r.active_nodes.push_back(v);
    }
  };
  if (model.schedule) {
    double pt = std::clamp(model.schedule->at(t), model.schedule->pmin, model.schedule->pmax);
    for (int v = 0; v < g.size(); ++v) draw(v, pt);
  } else {
    for (int v = 0; v < g.size(); ++v) draw(v, model.p[v]);
  }
  const bool thin = model.q < 1.0;
  for (const auto& e : g.edges()) {
    if (!on[e.first] || !on[e.second]) continue;
    if (thin && !rng.bernoulli(model.q)) continue;
    r.active_edges.push_back(e);
  }
  return r;
}

}  // namespace netregret
