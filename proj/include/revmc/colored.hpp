#ifndef REVMC_COLORED_HPP
#define REVMC_COLORED_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "revmc/params.hpp"
#include "revmc/rng.hpp"

namespace revmc {

// Vertices and colors are integer labels; fresh labels stand in for
// draws from the diffuse base measures.
struct ColoredEdge {
  int u, v;   // unordered; stored u <= v
  int color;

  ColoredEdge(int a, int b, int c) : u(a < b ? a : b), v(a < b ? b : a), color(c) {}
  bool is_loop() const { return u == v; }
  bool contains(int x) const { return x == u || x == v; }
  bool operator==(const ColoredEdge&) const = default;
  auto operator<=>(const ColoredEdge&) const = default;
};

// One alternative of the colored predictive distribution.
struct ColoredMove {
  enum Kind { Recross, NewColorOldVertex, NewColorNewVertex } kind;
  int edge_index = -1;  // Recross: index into distinct edges
  int vertex = -1;      // NewColorOldVertex: target vertex
  double prob = 0.0;
};

// A run of the colored reinforced walk. Starts at a fixed vertex; the
// first edge follows the explicit initial law, later edges the
// closed-form predictive.
class ColoredRun {
 public:
  explicit ColoredRun(const Params& params, int start_vertex = 1);

  const Params& params() const { return params_; }
  const std::vector<ColoredEdge>& edges() const { return edges_; }
  const std::vector<int>& vertex_path() const { return vertices_; }
  int current_vertex() const { return vertices_.back(); }
  std::size_t transitions() const { return edges_.size(); }

  // Distinct edges in order of first crossing, with crossing counts.
  const std::vector<ColoredEdge>& distinct_edges() const { return distinct_; }
  int crossings(std::size_t distinct_index) const { return crossings_[distinct_index]; }

  // Initial law for the first transition: probability that the walk
  // stays put versus discovering a fresh vertex.
  double initial_stay_probability() const;

  // Exact predictive probabilities after >= 1 edges. Probabilities of
  // all alternatives sum to one.
  std::vector<ColoredMove> predictive() const;

  // Append a concrete move.
  void apply(const ColoredMove& move);
  // First transition (choose stay vs fresh vertex).
  void apply_initial(bool stay);

  // Sample one transition.
  void step(CounterRng& rng);

  // Weight of a crossed edge in the predictive numerator.
  double edge_weight(std::size_t distinct_index) const;
  // Incidence weight W_{x,n} and new-color weight B_{x,n}.
  double incidence_weight(int vertex) const;
  double new_color_weight(int vertex) const;

 private:
  Params params_;
  std::vector<ColoredEdge> edges_;
  std::vector<int> vertices_;
  std::vector<ColoredEdge> distinct_;
  std::vector<int> crossings_;
  std::map<int, double> incidence_;  // per-vertex crossing incidences, loops doubled
  std::map<int, int> eta_;           // per-vertex distinct-edge degree, loops doubled
  int next_vertex_;
  int next_color_ = 1;

  int distinct_index(const ColoredEdge& e) const;
  void push_edge(const ColoredEdge& e, bool fresh_color);
};

// Summary statistics behind the predictive sufficiency conditions.
struct SufficientStats {
  double kappa = 0.0;              // visits of the current state (+1/2 if away from start)
  std::map<ColoredEdge, int> kappa_e;
  double tau = 0.0;                // number of distinct colors
  std::map<int, int> eta_v;        // distinct-edge degree, loops doubled
  int rho = 0;                     // distinct vertices
  std::map<ColoredEdge, int> s_e;  // loop indicator
};

SufficientStats sufficient_stats(const ColoredRun& run);

// Exhaustive distribution of the vertex sequence after n transitions,
// marginalizing over colors; keys are order-of-appearance canonical
// vertex sequences.
std::map<std::vector<int>, double> colored_vertex_marginal(const Params& params,
                                                           int n_transitions);

}  // namespace revmc

#endif
