#ifndef REVMC_SCHEME_HPP
#define REVMC_SCHEME_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "revmc/graph.hpp"
#include "revmc/params.hpp"
#include "revmc/path.hpp"
#include "revmc/rng.hpp"

namespace revmc {

// One-step predictive law from the current state: mass on each seen
// state plus the discovery mass.
struct StepDistribution {
  std::map<StateId, double> direct;    // category a per target
  std::map<StateId, double> mediated;  // category b per target
  double discover = 0.0;               // category c

  double total(StateId y) const {
    auto a = direct.find(y);
    auto b = mediated.find(y);
    return (a != direct.end() ? a->second : 0.0) +
           (b != mediated.end() ? b->second : 0.0);
  }
};

// A live run of the reinforced scheme: reinforced graph, path so far and
// the latent transition categories.
class SchemeRun {
 public:
  SchemeRun(const Params& params, const WeightedGraph& g0, StateId start,
            std::uint64_t seed, std::uint64_t stream = 0);

  const Params& params() const { return params_; }
  const WeightedGraph& graph() const { return graph_; }
  const std::vector<StateId>& path() const { return path_; }
  const std::vector<char>& categories() const { return categories_; }
  StateId current() const { return path_.back(); }
  std::size_t steps_taken() const { return categories_.size(); }
  int species_seen() const { return species_seen_; }

  // Exact predictive probabilities for the next transition.
  StepDistribution predictive() const;

  // Sample one transition; returns the next state and its category.
  std::pair<StateId, char> step();

  // Length of the path before any sampled step (used when resuming).
  std::size_t initial_length() const { return initial_length_; }

 private:
  Params params_;
  WeightedGraph graph_;
  std::vector<StateId> path_;
  std::vector<char> categories_;
  int species_seen_ = 0;
  std::size_t initial_length_ = 1;
  std::size_t step_index_ = 0;  // global step counter, keys the rng
  bool eps_start_;              // start carries only the infinitesimal hub edge
  std::uint64_t seed_, stream_;

  friend SchemeRun resume(const CanonicalPath&, const LatentCounts&, const Params&,
                          const WeightedGraph&, std::uint64_t, std::uint64_t);
};

SchemeRun simulate(const Params& params, const WeightedGraph& g0, StateId start,
                   int n_steps, std::uint64_t seed, std::uint64_t stream = 0);

// Convenience: default initial graph (hub loop theta, infinitesimal
// start edge), start at species 1.
SchemeRun simulate(const Params& params, int n_steps, std::uint64_t seed,
                   std::uint64_t stream = 0);

// Resume a run from an observed path and a latent assignment: the graph
// is rebuilt by graph_after and stepping continues from the last state.
SchemeRun resume(const CanonicalPath& path, const LatentCounts& k, const Params& params,
                 const WeightedGraph& g0, std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace revmc

#endif
