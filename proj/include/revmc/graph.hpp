#ifndef REVMC_GRAPH_HPP
#define REVMC_GRAPH_HPP

#include <map>
#include <vector>

#include "revmc/state.hpp"

namespace revmc {

// Symmetric edge weights on observed states plus the hub. One entry per
// unordered pair; loops stored once. The hub self-loop is kept separately.
//
// strength(x) is the total weight incident on x with the loop counted
// once; it is the denominator of a walk step out of x.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(double zeta_loop) : zeta_loop_(zeta_loop) {}

  double zeta_loop() const { return zeta_loop_; }
  void set_zeta_loop(double w) { zeta_loop_ = w; }
  void add_zeta_loop(double d) { zeta_loop_ += d; }

  double weight(StateId x, StateId y) const {
    auto ix = adj_.find(x);
    if (ix == adj_.end()) return 0.0;
    auto iy = ix->second.find(y);
    return iy == ix->second.end() ? 0.0 : iy->second;
  }
  double weight(const StatePair& p) const { return weight(p.lo, p.hi); }

  void set_weight(StateId x, StateId y, double w) {
    adj_[x][y] = w;
    if (x != y) adj_[y][x] = w;
  }
  void add_weight(StateId x, StateId y, double d) {
    adj_[x][y] += d;
    if (x != y) adj_[y][x] += d;
  }

  // Total weight incident on x, loop counted once (zeta edge included).
  double strength(StateId x) const {
    auto ix = adj_.find(x);
    if (ix == adj_.end()) return 0.0;
    double s = 0.0;
    for (const auto& [y, w] : ix->second) s += w;
    return s;
  }

  // Sum of hub-to-state edge weights (loop excluded).
  double zeta_edge_total() const { return strength(StateId::zeta()); }

  const std::map<StateId, double>& neighbors(StateId x) const {
    static const std::map<StateId, double> kEmpty;
    auto ix = adj_.find(x);
    return ix == adj_.end() ? kEmpty : ix->second;
  }

  std::vector<StatePair> pairs() const {
    std::vector<StatePair> out;
    for (const auto& [x, nb] : adj_)
      for (const auto& [y, w] : nb)
        if (!(y < x) && w != 0.0) out.emplace_back(x, y);
    return out;
  }

 private:
  std::map<StateId, std::map<StateId, double>> adj_;
  double zeta_loop_ = 0.0;
};

}  // namespace revmc

#endif
