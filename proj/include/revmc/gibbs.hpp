#ifndef REVMC_GIBBS_HPP
#define REVMC_GIBBS_HPP

#include <cstdint>
#include <vector>

#include "revmc/ftable.hpp"
#include "revmc/law.hpp"
#include "revmc/params.hpp"
#include "revmc/path.hpp"
#include "revmc/rng.hpp"

namespace revmc {

// Augmented state of the two-block sampler: latent direct-transition
// counts plus the edge-intensity scale G and vertex weights D. D has one
// component per species in appearance order and a trailing remainder.
struct GibbsState {
  std::vector<int> k;     // aligned with TransitionCounts::pairs
  double G = 1.0;
  std::vector<double> D;
};

struct GibbsOptions {
  int n_samples = 600;
  int burn_in = 200;
  int thin = 1;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int bootstrap = 200;  // resamples behind the reported standard error
};

// Blocked Gibbs sampler for the latent counts of a path observed from
// the null initial graph. Alternates exact conditional draws:
// (G, D) | k, then each k_xy | (G, D) independently across pairs.
class GibbsSampler {
 public:
  GibbsSampler(const CanonicalPath& path, const Params& params);

  const TransitionCounts& counts() const { return counts_; }
  const GibbsState& state() const { return state_; }
  const std::vector<int>& caps() const { return caps_.cap; }

  // One full sweep: (G, D) | k then k | (G, D).
  void sweep(CounterRng& rng);

  void sample_weights_given_k(CounterRng& rng);
  void sample_k_given_weights(CounterRng& rng);

  // Unnormalized log density of (k, G, D); monitoring only.
  double log_psi() const;

  LatentCounts latent() const;

 private:
  Params params_;
  TransitionCounts counts_;
  LatentCounts caps_;
  GibbsState state_;
  std::vector<std::pair<int, int>> d_index_;  // per pair: D components of endpoints
  int n_species_;
  FCache cache_;
};

struct MarginalLikelihood {
  double log_value = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
};

// Estimated log marginal likelihood of a path under fixed parameters.
// Posterior draws of k feed the identity
//   E[ 1 / p(z, k) | z ] = |K| / p(z)
// with |K| the latent support cardinality. The error is a bootstrap
// standard deviation over the recorded draws. At beta = 1 the latent
// counts are degenerate at zero and the value is exact.
MarginalLikelihood estimate_marginal_likelihood(const CanonicalPath& path,
                                                const Params& params,
                                                const GibbsOptions& opts = {});

struct FitResult {
  Params params;
  double log_ml = 0.0;
  double std_error = 0.0;
};

// Marginal likelihood over a parameter grid, best first. Ties broken by
// grid order. `threads` <= 0 picks the hardware count.
std::vector<FitResult> fit_grid(const CanonicalPath& path,
                                const std::vector<Params>& grid,
                                const GibbsOptions& opts = {}, int threads = 1);

}  // namespace revmc

#endif
