#include "revmc/scheme.hpp"

#include <stdexcept>

namespace revmc {

SchemeRun::SchemeRun(const Params& params, const WeightedGraph& g0, StateId start,
                     std::uint64_t seed, std::uint64_t stream)
    : params_(params), graph_(g0), seed_(seed), stream_(stream) {
  params_.validate();
  if (start.is_zeta()) throw std::invalid_argument("cannot start at the hub");
  graph_.set_zeta_loop(initial_zeta_loop(params_, g0));
  path_.push_back(start);
  species_seen_ = start.is_species() ? start.species_label() : 0;
  eps_start_ = graph_.strength(start) == 0.0;
}

StepDistribution SchemeRun::predictive() const {
  const double beta = params_.beta;
  StateId x = current();
  StateId zeta = StateId::zeta();
  StepDistribution out;

  double w_total = graph_.strength(x);
  double w_zeta = graph_.weight(x, zeta);
  double leg_zeta;
  if (w_total == 0.0) {
    if (!(eps_start_ && path_.size() == 1))
      throw std::runtime_error("absorbing start");
    leg_zeta = 1.0;  // infinitesimal hub edge forces mediation
  } else {
    leg_zeta = w_zeta / w_total;
    for (const auto& [y, w] : graph_.neighbors(x))
      if (!y.is_zeta() && w > 0.0) out.direct[y] = w / w_total;
  }
  if (leg_zeta > 0.0) {
    double den = beta + graph_.zeta_loop() + graph_.zeta_edge_total();
    if (!(den > 0.0)) {
      if (out.direct.empty()) throw std::runtime_error("absorbing start");
    } else {
      for (const auto& [y, w] : graph_.neighbors(zeta)) {
        double num = w + (y == x ? beta : 0.0);
        if (num > 0.0) out.mediated[y] = leg_zeta * num / den;
      }
      if (beta > 0.0 && !out.mediated.count(x))
        out.mediated[x] = leg_zeta * beta / den;  // return bonus alone
      out.discover = leg_zeta * graph_.zeta_loop() / den;
    }
  }
  if (out.direct.empty() && out.mediated.empty() && out.discover == 0.0)
    throw std::runtime_error("absorbing start");
  return out;
}

std::pair<StateId, char> SchemeRun::step() {
  StepDistribution dist = predictive();
  CounterRng rng(seed_, stream_, step_index_++);

  std::vector<double> w;
  std::vector<std::pair<StateId, char>> alt;
  for (const auto& [y, p] : dist.direct) {
    w.push_back(p);
    alt.push_back({y, 'a'});
  }
  for (const auto& [y, p] : dist.mediated) {
    w.push_back(p);
    alt.push_back({y, 'b'});
  }
  w.push_back(dist.discover);
  alt.push_back({StateId::species(species_seen_ + 1), 'c'});

  auto [next, cat] = alt[rng.discrete(w)];

  const double beta = params_.beta, alpha = params_.alpha;
  StateId x = current();
  StateId zeta = StateId::zeta();
  switch (cat) {
    case 'a':
      graph_.add_weight(x, next, x == next ? 2.0 : 1.0);
      break;
    case 'b':
      graph_.add_weight(x, next, (1.0 - beta) * (x == next ? 2.0 : 1.0));
      graph_.add_weight(x, zeta, beta);
      graph_.add_weight(next, zeta, beta);
      break;
    case 'c':
      ++species_seen_;
      graph_.add_weight(x, next, 1.0 - beta);
      graph_.add_weight(x, zeta, beta);
      graph_.add_weight(next, zeta, (1.0 - alpha) * beta);
      graph_.add_zeta_loop(alpha * beta);
      break;
  }
  path_.push_back(next);
  categories_.push_back(cat);
  return {next, cat};
}

SchemeRun simulate(const Params& params, const WeightedGraph& g0, StateId start,
                   int n_steps, std::uint64_t seed, std::uint64_t stream) {
  SchemeRun run(params, g0, start, seed, stream);
  for (int i = 0; i < n_steps; ++i) run.step();
  return run;
}

SchemeRun simulate(const Params& params, int n_steps, std::uint64_t seed,
                   std::uint64_t stream) {
  return simulate(params, WeightedGraph(), StateId::species(1), n_steps, seed, stream);
}

SchemeRun resume(const CanonicalPath& path, const LatentCounts& k, const Params& params,
                 const WeightedGraph& g0, std::uint64_t seed, std::uint64_t stream) {
  WeightedGraph g = graph_after(path, k, params, g0);
  SchemeRun run(params, g, path.start(), seed, stream);
  run.path_ = path.states();
  run.initial_length_ = path.length();
  run.species_seen_ = path.species_count();
  run.eps_start_ = false;
  return run;
}

}  // namespace revmc
