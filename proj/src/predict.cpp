#include "revmc/predict.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "revmc/scheme.hpp"

namespace revmc {

PredictiveDraw posterior_predictive(const CanonicalPath& z, const LatentCounts& k,
                                    const Params& params, int m, std::uint64_t seed,
                                    std::uint64_t stream, const WeightedGraph& g0) {
  if (m < 0) throw std::invalid_argument("negative horizon");
  k.check_support();
  SchemeRun run = resume(z, k, params, g0, seed, stream);
  for (int i = 0; i < m; ++i) run.step();

  PredictiveDraw out;
  out.future.assign(run.path().begin() + z.length(), run.path().end());
  out.new_state_count = run.species_seen() - z.species_count();
  for (StateId s : out.future) out.occupancy[s] += 1.0;
  for (auto& [s, f] : out.occupancy) f /= m;
  return out;
}

double nearest_rank(const std::vector<double>& sorted_values, double percent) {
  if (sorted_values.empty()) throw std::invalid_argument("empty sample");
  auto n = static_cast<double>(sorted_values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percent / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted_values.size());
  return sorted_values[rank - 1];
}

namespace {

const std::vector<int> kLevels{10, 25, 50, 75, 90};

std::map<int, double> quantile_box(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::map<int, double> out;
  for (int p : kLevels) out[p] = nearest_rank(values, p);
  return out;
}

}  // namespace

RichnessSummary richness_summary(const std::vector<PredictiveDraw>& draws,
                                 const CanonicalPath& z, int top_n) {
  if (draws.empty()) throw std::invalid_argument("no predictive draws");
  RichnessSummary out;
  out.n_draws = static_cast<int>(draws.size());

  std::vector<double> new_counts;
  for (const PredictiveDraw& d : draws) {
    out.histogram[d.new_state_count] += 1;
    out.mean_new += d.new_state_count;
    new_counts.push_back(d.new_state_count);
  }
  out.mean_new /= draws.size();
  std::sort(new_counts.begin(), new_counts.end());
  for (int p : kLevels)
    out.new_quantiles[p] = static_cast<int>(nearest_rank(new_counts, p));

  const std::vector<StateId>& seen = z.distinct();
  std::map<StateId, std::vector<double>> per_state;
  std::vector<double> unseen_mass(draws.size(), 0.0);
  for (StateId s : seen) per_state[s].assign(draws.size(), 0.0);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    for (const auto& [s, f] : draws[i].occupancy) {
      auto it = per_state.find(s);
      if (it != per_state.end())
        it->second[i] = f;
      else
        unseen_mass[i] += f;
    }
  }

  std::vector<std::size_t> order(seen.size());
  for (std::size_t i = 0; i < seen.size(); ++i) order[i] = i;
  std::vector<double> mean(seen.size());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    const auto& v = per_state[seen[i]];
    for (double f : v) mean[i] += f;
    mean[i] /= draws.size();
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mean[a] > mean[b]; });
  if (top_n < static_cast<int>(order.size())) order.resize(top_n);

  for (std::size_t i : order) {
    out.top_states.push_back(seen[i]);
    out.state_quantiles[seen[i]] = quantile_box(per_state[seen[i]]);
  }
  out.unseen_quantiles = quantile_box(std::move(unseen_mass));
  return out;
}

ValidateReport validate_split(const CanonicalPath& full, std::size_t split_point,
                              const std::vector<Params>& grid,
                              const ValidateOptions& opts) {
  if (split_point < 2 || split_point >= full.length())
    throw std::invalid_argument("split leaves an empty segment");
  CanonicalPath train(std::vector<StateId>(full.states().begin(),
                                           full.states().begin() + split_point));
  const int m = static_cast<int>(full.length() - split_point);

  ValidateReport report;
  report.train_transitions = static_cast<int>(train.transitions());
  report.validation_transitions = m;
  report.grid = fit_grid(train, grid, opts.gibbs, opts.threads);
  report.best = report.grid.front();
  const Params best = report.best.params;

  // Posterior draws of the latent counts under the winning parameters.
  TransitionCounts counts = compute_counts(train);
  std::vector<LatentCounts> latents;
  latents.reserve(opts.draws);
  if (best.beta == 1.0) {
    for (int i = 0; i < opts.draws; ++i) latents.push_back(LatentCounts::zeros(counts));
  } else {
    GibbsSampler sampler(train, best);
    CounterRng rng(opts.gibbs.seed ^ 0x9E3779B97F4A7C15ull, opts.gibbs.stream);
    for (int i = 0; i < opts.gibbs.burn_in; ++i) sampler.sweep(rng);
    for (int i = 0; i < opts.draws; ++i) {
      for (int t = 0; t < std::max(1, opts.gibbs.thin); ++t) sampler.sweep(rng);
      latents.push_back(sampler.latent());
    }
  }

  std::vector<PredictiveDraw> draws(opts.draws);
  int threads = opts.threads <= 0
                    ? std::max(1u, std::thread::hardware_concurrency())
                    : opts.threads;
  threads = std::min(threads, opts.draws);
  auto worker = [&](int t) {
    for (int i = t; i < opts.draws; i += threads)
      draws[i] = posterior_predictive(train, latents[i], best, m,
                                      opts.gibbs.seed + 0x51ED270B7A1FA17ull, i);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  // Held-out facts.
  std::vector<StateId> validation(full.states().begin() + split_point,
                                  full.states().end());
  int actual_new = 0;
  {
    std::vector<StateId> seen = train.distinct();
    std::vector<StateId> fresh;
    for (StateId s : validation)
      if (std::find(seen.begin(), seen.end(), s) == seen.end() &&
          std::find(fresh.begin(), fresh.end(), s) == fresh.end())
        fresh.push_back(s);
    actual_new = static_cast<int>(fresh.size());
  }
  report.actual_new_states = actual_new;

  std::vector<double> new_counts;
  for (const PredictiveDraw& d : draws) {
    report.predicted_new_histogram[d.new_state_count] += 1;
    new_counts.push_back(d.new_state_count);
  }
  std::sort(new_counts.begin(), new_counts.end());
  report.new_lower = static_cast<int>(nearest_rank(new_counts, 2.5));
  report.new_upper = static_cast<int>(nearest_rank(new_counts, 97.5));
  report.new_state_count_covered =
      actual_new >= report.new_lower && actual_new <= report.new_upper;

  for (StateId s : train.distinct()) {
    std::vector<double> occ(draws.size(), 0.0);
    for (std::size_t i = 0; i < draws.size(); ++i) {
      auto it = draws[i].occupancy.find(s);
      if (it != draws[i].occupancy.end()) occ[i] = it->second;
    }
    std::sort(occ.begin(), occ.end());
    double lo = nearest_rank(occ, 5.0), hi = nearest_rank(occ, 95.0);
    double truth =
        static_cast<double>(std::count(validation.begin(), validation.end(), s)) / m;
    ++report.states_checked;
    if (truth >= lo - 1e-12 && truth <= hi + 1e-12) ++report.states_in_band;
  }
  report.occupancy_coverage =
      report.states_checked ? static_cast<double>(report.states_in_band) /
                                  report.states_checked
                            : 0.0;
  return report;
}

}  // namespace revmc
