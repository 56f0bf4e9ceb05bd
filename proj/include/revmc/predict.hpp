#ifndef REVMC_PREDICT_HPP
#define REVMC_PREDICT_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "revmc/gibbs.hpp"
#include "revmc/params.hpp"
#include "revmc/path.hpp"

namespace revmc {

// One simulated continuation of an observed path.
struct PredictiveDraw {
  std::vector<StateId> future;          // m states after the conditioning path
  int new_state_count = 0;              // species beyond the conditioning path
  std::map<StateId, double> occupancy;  // fraction of the m steps per state
};

// Resume the scheme from (z, k) and simulate m further transitions with
// continued reinforcement. Unseen states get fresh species labels.
PredictiveDraw posterior_predictive(const CanonicalPath& z, const LatentCounts& k,
                                    const Params& params, int m, std::uint64_t seed,
                                    std::uint64_t stream = 0,
                                    const WeightedGraph& g0 = WeightedGraph());

// Aggregates over predictive draws. Quantiles are nearest-rank at the
// 10/25/50/75/90 percent levels; state boxes cover the top_n observed
// states by mean occupancy (ties by first appearance), and the mass on
// states absent from the conditioning path is pooled per draw.
struct RichnessSummary {
  std::map<int, int> histogram;  // new-species count -> number of draws
  double mean_new = 0.0;
  std::map<int, int> new_quantiles;
  std::vector<StateId> top_states;
  std::map<StateId, std::map<int, double>> state_quantiles;
  std::map<int, double> unseen_quantiles;
  int n_draws = 0;
};

RichnessSummary richness_summary(const std::vector<PredictiveDraw>& draws,
                                 const CanonicalPath& z, int top_n);

// Nearest-rank quantile of a sorted sample: smallest value with at
// least ceil(p/100 * n) observations at or below it.
double nearest_rank(const std::vector<double>& sorted_values, double percent);

struct ValidateOptions {
  GibbsOptions gibbs;
  int draws = 600;
  int threads = 1;
};

struct ValidateReport {
  std::vector<FitResult> grid;  // best first
  FitResult best;
  int train_transitions = 0;
  int validation_transitions = 0;
  int actual_new_states = 0;
  std::map<int, int> predicted_new_histogram;
  int new_lower = 0, new_upper = 0;  // central 95% predictive interval
  bool new_state_count_covered = false;
  int states_checked = 0;
  int states_in_band = 0;  // true occupancy inside central 90% band
  double occupancy_coverage = 0.0;
};

// Train on a prefix, fit the grid, then check the held-out suffix
// against the predictive distribution. split_point counts states in the
// training prefix; the horizon is the number of held-out transitions.
ValidateReport validate_split(const CanonicalPath& full, std::size_t split_point,
                              const std::vector<Params>& grid,
                              const ValidateOptions& opts = {});

}  // namespace revmc

#endif
