#include "revmc/path.hpp"

#include <algorithm>
#include <stdexcept>

namespace revmc {

CanonicalPath::CanonicalPath(std::vector<StateId> states) : states_(std::move(states)) {
  if (states_.empty()) throw std::invalid_argument("empty trajectory");
  std::set<StateId> seen;
  for (StateId s : states_) {
    if (s.is_zeta()) throw std::invalid_argument("zeta cannot appear in a trajectory");
    if (seen.insert(s).second) {
      if (s.is_species()) {
        ++species_count_;
        if (s.species_label() != species_count_)
          throw std::invalid_argument("species labels must appear in order");
      }
      distinct_.push_back(s);
    }
  }
}

CanonicalPath CanonicalPath::extended(StateId next) const {
  std::vector<StateId> s = states_;
  s.push_back(next);
  return CanonicalPath(std::move(s));
}

Canonicalized canonicalize(const std::vector<std::string>& raw,
                           const std::set<std::string>& anchors) {
  if (raw.empty()) throw std::invalid_argument("empty trajectory");
  Canonicalized out;
  std::vector<StateId> states;
  states.reserve(raw.size());
  int next_anchor = 0, next_species = 0;
  for (const std::string& label : raw) {
    auto it = out.label_map.find(label);
    if (it == out.label_map.end()) {
      StateId id = anchors.count(label) ? StateId::anchor(next_anchor++)
                                        : StateId::species(++next_species);
      it = out.label_map.emplace(label, id).first;
    }
    states.push_back(it->second);
  }
  out.path = CanonicalPath(std::move(states));
  return out;
}

int TransitionCounts::pair_index(const StatePair& p) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), p,
                             [](const PairCount& a, const StatePair& b) { return a.pair < b; });
  if (it == pairs.end() || !(it->pair == p)) return -1;
  return static_cast<int>(it - pairs.begin());
}

int TransitionCounts::n_of(const StatePair& p) const {
  int i = pair_index(p);
  return i < 0 ? 0 : pairs[i].n;
}

TransitionCounts compute_counts(const CanonicalPath& path) {
  TransitionCounts out;
  out.start = path.start();
  out.n_transitions = static_cast<int>(path.transitions());
  std::map<StatePair, PairCount> acc;
  std::set<StateId> seen{path.start()};
  out.n_state[path.start()] = 0;
  for (std::size_t i = 0; i + 1 < path.length(); ++i) {
    StateId x = path.at(i), y = path.at(i + 1);
    StatePair p(x, y);
    PairCount& pc = acc.try_emplace(p, PairCount{p, 0, 0}).first->second;
    ++pc.n;
    out.n_state[x] += 1;
    out.n_state[y] += 1;  // loops contribute 2 to n_x
    // Only species arrivals are discoveries; an anchor reached for the
    // first time travels over initial weight.
    if (seen.insert(y).second && y.is_species()) {
      ++pc.disc;
      out.first_entry[y] = static_cast<int>(i);
      ++out.discoveries;
    }
  }
  out.pairs.reserve(acc.size());
  for (auto& [p, pc] : acc) out.pairs.push_back(pc);
  return out;
}

LatentCounts LatentCounts::zeros(const TransitionCounts& counts, const WeightedGraph& g0) {
  LatentCounts out;
  out.k.assign(counts.pairs.size(), 0);
  out.cap.resize(counts.pairs.size());
  for (std::size_t i = 0; i < counts.pairs.size(); ++i) {
    const PairCount& pc = counts.pairs[i];
    out.cap[i] = pc.n - (g0.weight(pc.pair) == 0.0 ? 1 : 0);
  }
  return out;
}

void LatentCounts::check_support() const {
  if (k.size() != cap.size()) throw std::invalid_argument("latent counts shape mismatch");
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < 0 || k[i] > cap[i])
      throw std::out_of_range("latent count outside support");
}

double LatentCounts::support_size(double limit) const {
  double prod = 1.0;
  for (int c : cap) {
    prod *= static_cast<double>(c + 1);
    if (prod > limit) return prod;
  }
  return prod;
}

LatentStats derived_latent_stats(const TransitionCounts& counts, const LatentCounts& k) {
  k.check_support();
  LatentStats out;
  for (const auto& [x, n] : counts.n_state) out.l_x[x] = 0;
  for (std::size_t i = 0; i < counts.pairs.size(); ++i) {
    const PairCount& pc = counts.pairs[i];
    int mediated = pc.n - k.k[i];
    out.l += mediated;
    if (pc.pair.is_loop()) {
      out.l_x[pc.pair.lo] += 2 * mediated;
    } else {
      out.l_x[pc.pair.lo] += mediated;
      out.l_x[pc.pair.hi] += mediated;
    }
  }
  out.l_prime = counts.discoveries;
  return out;
}

WeightedGraph graph_after(const CanonicalPath& path, const LatentCounts& k,
                          const Params& params, const WeightedGraph& g0) {
  TransitionCounts counts = compute_counts(path);
  if (k.k.size() != counts.pairs.size())
    throw std::invalid_argument("latent counts do not match path");
  k.check_support();
  LatentStats stats = derived_latent_stats(counts, k);

  WeightedGraph g = g0;
  const double beta = params.beta, alpha = params.alpha;
  for (std::size_t i = 0; i < counts.pairs.size(); ++i) {
    const PairCount& pc = counts.pairs[i];
    int mult = pc.pair.is_loop() ? 2 : 1;
    double inc = mult * (k.k[i] + (1.0 - beta) * (pc.n - k.k[i]));
    if (inc != 0.0) g.add_weight(pc.pair.lo, pc.pair.hi, inc);
  }
  for (const auto& [x, lx] : stats.l_x) {
    double inc = beta * lx;
    if (counts.first_entry.count(x)) inc -= alpha * beta;  // discovery arrival
    if (inc != 0.0) g.add_weight(x, StateId::zeta(), inc);
  }
  g.set_zeta_loop(initial_zeta_loop(params, g0) + alpha * beta * stats.l_prime);
  return g;
}

}  // namespace revmc
