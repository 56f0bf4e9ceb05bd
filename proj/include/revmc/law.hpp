#ifndef REVMC_LAW_HPP
#define REVMC_LAW_HPP

#include <functional>
#include <map>
#include <vector>

#include "revmc/ftable.hpp"
#include "revmc/graph.hpp"
#include "revmc/params.hpp"
#include "revmc/path.hpp"

namespace revmc {

// log of the combinatorial factor F(z, k): product over pairs of
// 2^{k_xx} f_{e,beta}(n_xy - 1{g0(x,y)=0}, k_xy).
double log_F(const TransitionCounts& counts, const LatentCounts& k, const Params& params,
             const WeightedGraph& g0, FCache& cache);

// log p(z, k), the joint law of the canonical path and the latent
// direct-transition counts.
//
// When the start state has no initial weight, the infinitesimal weight
// on its hub edge is cancelled analytically: the leading factor of both
// the hub-edge numerator and the start-state denominator is dropped.
double log_p_zk(const CanonicalPath& path, const TransitionCounts& counts,
                const LatentCounts& k, const Params& params, const WeightedGraph& g0,
                FCache& cache);

double log_p_zk(const CanonicalPath& path, const LatentCounts& k, const Params& params,
                const WeightedGraph& g0 = WeightedGraph());

// Exact log p(z) by summation over the full latent support. Tiny paths
// only: the support product must not exceed max_support.
double exact_log_p_z(const CanonicalPath& path, const Params& params,
                     const WeightedGraph& g0 = WeightedGraph(),
                     double max_support = 1e6);

// Iterate the latent support in mixed-radix order.
void for_each_latent(const TransitionCounts& counts, const WeightedGraph& g0,
                     const std::function<void(const LatentCounts&)>& fn,
                     double max_support = 1e6);

// --- enumeration oracle -------------------------------------------------
//
// Exhaustive enumeration of latent walks through the hub. Independent of
// the factorized law above: it replays the reinforcement rules
// transition by transition. Signed initial weights are tolerated (used
// by the colored-scheme comparison).

struct LatentEnumeration {
  // probability per latent assignment, keyed by the k vector (aligned
  // with TransitionCounts::pairs of the same path)
  std::map<std::vector<int>, double> by_k;
  double total = 0.0;
};

LatentEnumeration enumerate_latent_walks(const CanonicalPath& path, const Params& params,
                                         const WeightedGraph& g0 = WeightedGraph());

// All canonical paths with exactly n transitions reachable from `start`
// under the null initial graph (next state is a seen state or the next
// fresh species).
std::vector<CanonicalPath> canonical_paths(int n_transitions,
                                           StateId start = StateId::species(1));

}  // namespace revmc

#endif
