#ifndef REVMC_PATH_HPP
#define REVMC_PATH_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "revmc/graph.hpp"
#include "revmc/params.hpp"
#include "revmc/state.hpp"

namespace revmc {

// A trajectory after canonicalization: anchors keep their identity,
// every other state is a species labeled by order of first appearance.
// Species j may appear only after species 1..j-1.
class CanonicalPath {
 public:
  CanonicalPath() = default;
  explicit CanonicalPath(std::vector<StateId> states);

  const std::vector<StateId>& states() const { return states_; }
  std::size_t length() const { return states_.size(); }
  // Number of transitions.
  std::size_t transitions() const { return states_.empty() ? 0 : states_.size() - 1; }
  StateId start() const { return states_.front(); }
  StateId last() const { return states_.back(); }
  StateId at(std::size_t i) const { return states_[i]; }

  // Distinct states in order of first appearance.
  const std::vector<StateId>& distinct() const { return distinct_; }
  int species_count() const { return species_count_; }

  CanonicalPath extended(StateId next) const;

 private:
  std::vector<StateId> states_;
  std::vector<StateId> distinct_;
  int species_count_ = 0;
};

struct Canonicalized {
  CanonicalPath path;
  // Raw label -> canonical id, for round-tripping.
  std::map<std::string, StateId> label_map;
};

// The order-of-appearance relabeling. Labels in `anchors` map to Anchor
// ids (indexed by first appearance), everything else to Species ids.
Canonicalized canonicalize(const std::vector<std::string>& raw,
                           const std::set<std::string>& anchors = {});

// Per-pair transition statistics of a canonical path.
struct PairCount {
  StatePair pair;
  int n = 0;    // transitions between the endpoints, either direction
  int disc = 0; // discovery transitions on this pair
};

struct TransitionCounts {
  std::vector<PairCount> pairs;             // sorted by pair
  std::map<StateId, int> n_state;           // incident transition count, loops count 2
  std::map<StateId, int> first_entry;       // transition index that discovered a species
  int n_transitions = 0;
  int discoveries = 0;                      // = l' under the null initial graph
  StateId start;

  int pair_index(const StatePair& p) const; // -1 if absent
  int n_of(const StatePair& p) const;
};

TransitionCounts compute_counts(const CanonicalPath& path);

// Per-unordered-pair counts of direct (ERRW-like) transitions. Aligned
// with TransitionCounts::pairs. cap = n - 1 when the pair starts with
// zero weight: its first traversal is necessarily mediated.
struct LatentCounts {
  std::vector<int> k;
  std::vector<int> cap;

  static LatentCounts zeros(const TransitionCounts& counts,
                            const WeightedGraph& g0 = WeightedGraph());
  void check_support() const;
  // Product of (cap+1) over pairs, clamped to `limit`.
  double support_size(double limit = 1e18) const;
};

struct LatentStats {
  std::map<StateId, int> l_x;  // hub-edge traversals per state
  int l = 0;                   // mediated transitions
  int l_prime = 0;             // hub self-loop traversals (discoveries)
};

LatentStats derived_latent_stats(const TransitionCounts& counts, const LatentCounts& k);

// The hub self-loop starts at theta unless the initial graph overrides it.
inline double initial_zeta_loop(const Params& params, const WeightedGraph& g0) {
  return g0.zeta_loop() == 0.0 ? params.theta : g0.zeta_loop();
}

// Final reinforced graph for a path and a latent assignment. Increments
// are additive, so only the counts matter, not the transition order.
WeightedGraph graph_after(const CanonicalPath& path, const LatentCounts& k,
                          const Params& params, const WeightedGraph& g0 = WeightedGraph());

}  // namespace revmc

#endif
