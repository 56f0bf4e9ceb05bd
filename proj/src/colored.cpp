#include "revmc/colored.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace revmc {

ColoredRun::ColoredRun(const Params& params, int start_vertex)
    : params_(params), next_vertex_(start_vertex + 1) {
  params_.validate();
  vertices_.push_back(start_vertex);
}

int ColoredRun::distinct_index(const ColoredEdge& e) const {
  auto it = std::find(distinct_.begin(), distinct_.end(), e);
  return it == distinct_.end() ? -1 : static_cast<int>(it - distinct_.begin());
}

void ColoredRun::push_edge(const ColoredEdge& e, bool fresh_color) {
  edges_.push_back(e);
  int mult = e.is_loop() ? 2 : 1;
  if (e.is_loop()) {
    incidence_[e.u] += 2;
  } else {
    incidence_[e.u] += 1;
    incidence_[e.v] += 1;
  }
  if (fresh_color) {
    distinct_.push_back(e);
    crossings_.push_back(1);
    eta_[e.u] += mult;
    if (!e.is_loop()) eta_[e.v] += mult;
  } else {
    int i = distinct_index(e);
    if (i < 0) throw std::logic_error("recrossing an unseen edge");
    ++crossings_[i];
  }
}

double ColoredRun::initial_stay_probability() const {
  return params_.beta * (1.0 - params_.alpha) / (params_.beta + params_.theta);
}

void ColoredRun::apply_initial(bool stay) {
  if (!edges_.empty()) throw std::logic_error("initial move after the first edge");
  int x = current_vertex();
  int y = stay ? x : next_vertex_++;
  ColoredEdge e(x, y, next_color_++);
  push_edge(e, true);
  vertices_.push_back(y);
}

double ColoredRun::edge_weight(std::size_t i) const {
  double g = std::max(0.0, crossings_[i] - params_.beta);
  return g * (distinct_[i].is_loop() ? 2.0 : 1.0);
}

double ColoredRun::incidence_weight(int v) const {
  auto it = incidence_.find(v);
  return -params_.alpha * params_.beta + (it == incidence_.end() ? 0.0 : it->second);
}

double ColoredRun::new_color_weight(int v) const {
  auto it = eta_.find(v);
  return -params_.alpha * params_.beta +
         params_.beta * (it == eta_.end() ? 0.0 : it->second);
}

std::vector<ColoredMove> ColoredRun::predictive() const {
  if (edges_.empty()) throw std::logic_error("first transition uses the initial law");
  const double beta = params_.beta, theta = params_.theta, alpha = params_.alpha;
  int x = current_vertex();
  double w = incidence_weight(x);
  double tau = static_cast<double>(distinct_.size());
  double rho = static_cast<double>(incidence_.size());
  double vertex_den = 2.0 * beta * tau + theta + beta;

  std::vector<ColoredMove> moves;
  for (std::size_t i = 0; i < distinct_.size(); ++i) {
    if (!distinct_[i].contains(x)) continue;
    double g = edge_weight(i);
    if (g <= 0.0) continue;
    moves.push_back({ColoredMove::Recross, static_cast<int>(i), -1, g / w});
  }
  double b = new_color_weight(x);
  if (b > 0.0) {
    double p_new_color = b / w;
    for (const auto& [y, eta] : eta_) {
      double num = (y == x ? beta : 0.0) + (-alpha * beta + beta * eta);
      if (num > 0.0)
        moves.push_back({ColoredMove::NewColorOldVertex, -1, y,
                         p_new_color * num / vertex_den});
    }
    double fresh = theta + alpha * beta * rho;
    if (fresh > 0.0)
      moves.push_back(
          {ColoredMove::NewColorNewVertex, -1, -1, p_new_color * fresh / vertex_den});
  }
  return moves;
}

void ColoredRun::apply(const ColoredMove& move) {
  int x = current_vertex();
  switch (move.kind) {
    case ColoredMove::Recross: {
      const ColoredEdge& e = distinct_[move.edge_index];
      if (!e.contains(x)) throw std::logic_error("recross not incident to current vertex");
      push_edge(e, false);
      vertices_.push_back(e.is_loop() ? x : (e.u == x ? e.v : e.u));
      break;
    }
    case ColoredMove::NewColorOldVertex: {
      ColoredEdge e(x, move.vertex, next_color_++);
      push_edge(e, true);
      vertices_.push_back(move.vertex);
      break;
    }
    case ColoredMove::NewColorNewVertex: {
      int y = next_vertex_++;
      ColoredEdge e(x, y, next_color_++);
      push_edge(e, true);
      vertices_.push_back(y);
      break;
    }
  }
}

void ColoredRun::step(CounterRng& rng) {
  if (edges_.empty()) {
    apply_initial(rng.uniform() < initial_stay_probability());
    return;
  }
  std::vector<ColoredMove> moves = predictive();
  std::vector<double> w(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i) w[i] = moves[i].prob;
  apply(moves[rng.discrete(w)]);
}

SufficientStats sufficient_stats(const ColoredRun& run) {
  SufficientStats out;
  const auto& verts = run.vertex_path();
  int x = verts.back();
  int visits = static_cast<int>(std::count(verts.begin(), verts.end(), x));
  out.kappa = visits + (x != verts.front() ? 0.5 : 0.0);
  for (std::size_t i = 0; i < run.distinct_edges().size(); ++i) {
    const ColoredEdge& e = run.distinct_edges()[i];
    out.kappa_e[e] = run.crossings(i);
    out.s_e[e] = e.is_loop() ? 1 : 0;
    int mult = e.is_loop() ? 2 : 1;
    out.eta_v[e.u] += mult;
    if (!e.is_loop()) out.eta_v[e.v] += mult;
  }
  out.tau = static_cast<double>(run.distinct_edges().size());
  std::vector<int> uniq(verts);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  out.rho = static_cast<int>(uniq.size());
  return out;
}

std::map<std::vector<int>, double> colored_vertex_marginal(const Params& params,
                                                           int n_transitions) {
  std::map<std::vector<int>, double> out;
  std::function<void(const ColoredRun&, double, int)> rec = [&](const ColoredRun& run,
                                                                double prob, int left) {
    if (prob <= 0.0) return;
    if (left == 0) {
      out[run.vertex_path()] += prob;
      return;
    }
    if (run.edges().empty()) {
      double stay = run.initial_stay_probability();
      for (bool s : {true, false}) {
        ColoredRun next = run;
        next.apply_initial(s);
        rec(next, prob * (s ? stay : 1.0 - stay), left - 1);
      }
      return;
    }
    for (const ColoredMove& mv : run.predictive()) {
      ColoredRun next = run;
      next.apply(mv);
      rec(next, prob * mv.prob, left - 1);
    }
  };
  rec(ColoredRun(params), 1.0, n_transitions);
  return out;
}

}  // namespace revmc
