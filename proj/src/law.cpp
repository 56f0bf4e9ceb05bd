#include "revmc/law.hpp"

#include <cmath>
#include <stdexcept>

namespace revmc {

namespace {
constexpr double kLog2 = 0.6931471805599453;
}

double log_F(const TransitionCounts& counts, const LatentCounts& k, const Params& params,
             const WeightedGraph& g0, FCache& cache) {
  k.check_support();
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.pairs.size(); ++i) {
    const PairCount& pc = counts.pairs[i];
    double w0 = g0.weight(pc.pair);
    double e = w0 > 0.0 ? w0 : 1.0 - params.beta;
    int n = pc.n - (w0 > 0.0 ? 0 : 1);
    const FTable& ft = cache.table(e, params.beta, n);
    double lf = ft.log_f(n, k.k[i]);
    if (lf == kNegInf) return kNegInf;
    acc += lf;
    if (pc.pair.is_loop()) acc += k.k[i] * kLog2;
  }
  return acc;
}

double log_p_zk(const CanonicalPath& path, const TransitionCounts& counts,
                const LatentCounts& k, const Params& params, const WeightedGraph& g0,
                FCache& cache) {
  const double beta = params.beta, alpha = params.alpha;
  const StateId z1 = path.start();
  const double theta0 = initial_zeta_loop(params, g0);
  LatentStats stats = derived_latent_stats(counts, k);

  double num = log_F(counts, k, params, g0, cache);
  if (num == kNegInf) return kNegInf;
  num += log_rising(theta0, stats.l_prime, alpha * beta);

  for (const auto& [x, lx] : stats.l_x) {
    double gxz = g0.weight(x, StateId::zeta());
    if (x == z1 && g0.strength(z1) == 0.0) {
      num += log_rising(beta, lx - 1, beta);  // leading epsilon cancelled
    } else if (counts.first_entry.count(x)) {
      num += log_rising(beta * (1.0 - alpha), lx - 1, beta);
    } else {
      num += log_rising(gxz, lx, beta);
    }
    if (num == kNegInf) return kNegInf;
  }

  double den = log_rising(theta0 + g0.zeta_edge_total() + beta, stats.l, 2.0 * beta);
  for (const auto& [x, nx] : counts.n_state) {
    if (nx == 0) continue;
    double w0 = g0.strength(x);
    if (x == z1) {
      long m = (nx + 1) / 2;
      den += w0 > 0.0 ? log_rising(w0, m, 2.0) : log_rising(2.0, m - 1, 2.0);
    } else {
      double disc = counts.first_entry.count(x) ? alpha * beta : 0.0;
      den += log_rising(w0 + 1.0 - disc, nx / 2, 2.0);
    }
  }
  if (den == kNegInf) throw std::domain_error("degenerate denominator in path law");
  return num - den;
}

double log_p_zk(const CanonicalPath& path, const LatentCounts& k, const Params& params,
                const WeightedGraph& g0) {
  TransitionCounts counts = compute_counts(path);
  FCache cache;
  return log_p_zk(path, counts, k, params, g0, cache);
}

void for_each_latent(const TransitionCounts& counts, const WeightedGraph& g0,
                     const std::function<void(const LatentCounts&)>& fn,
                     double max_support) {
  LatentCounts k = LatentCounts::zeros(counts, g0);
  if (k.support_size(max_support) > max_support)
    throw std::runtime_error("enumeration infeasible");
  for (;;) {
    fn(k);
    std::size_t i = 0;
    for (; i < k.k.size(); ++i) {
      if (k.k[i] < k.cap[i]) {
        ++k.k[i];
        break;
      }
      k.k[i] = 0;
    }
    if (i == k.k.size()) return;
  }
}

double exact_log_p_z(const CanonicalPath& path, const Params& params,
                     const WeightedGraph& g0, double max_support) {
  TransitionCounts counts = compute_counts(path);
  FCache cache;
  double acc = kNegInf;
  for_each_latent(
      counts, g0,
      [&](const LatentCounts& k) {
        acc = log_add(acc, log_p_zk(path, counts, k, params, g0, cache));
      },
      max_support);
  return acc;
}

// --- enumeration oracle -------------------------------------------------

namespace {

struct WalkEnum {
  const CanonicalPath& path;
  const TransitionCounts& counts;
  const Params& params;
  LatentEnumeration result;
  std::map<StatePair, int> k_acc;

  WalkEnum(const CanonicalPath& p, const TransitionCounts& c, const Params& prm)
      : path(p), counts(c), params(prm) {}

  bool is_discovery(std::size_t i, StateId y) const {
    auto it = counts.first_entry.find(y);
    return it != counts.first_entry.end() && it->second == static_cast<int>(i);
  }

  void record(double prob) {
    if (prob <= 0.0) return;
    std::vector<int> key;
    key.reserve(counts.pairs.size());
    for (const PairCount& pc : counts.pairs) {
      auto it = k_acc.find(pc.pair);
      key.push_back(it == k_acc.end() ? 0 : it->second);
    }
    result.by_k[key] += prob;
    result.total += prob;
  }

  // One latent step; g is copied so that backtracking is implicit.
  void step(std::size_t i, WeightedGraph g, double prob) {
    if (prob == 0.0) return;
    if (i + 1 >= path.length()) {
      record(prob);
      return;
    }
    const double beta = params.beta, alpha = params.alpha;
    StateId x = path.at(i), y = path.at(i + 1);
    StateId zeta = StateId::zeta();
    double w_total = g.strength(x);
    double w_zeta = g.weight(x, zeta);
    // With no weight at x the walk is forced through the hub (the
    // infinitesimal-start convention); a signed total also forces it.
    double leg_zeta, leg_direct;
    double w_direct = g.weight(x, y);
    if (w_total == 0.0) {
      leg_zeta = 1.0;
      leg_direct = 0.0;
    } else {
      leg_zeta = w_zeta / w_total;
      leg_direct = w_direct / w_total;
    }
    double den_zeta = beta + g.zeta_loop() + g.zeta_edge_total();

    if (is_discovery(i, y)) {
      if (leg_zeta != 0.0 && den_zeta > 0.0 && g.zeta_loop() != 0.0) {
        WeightedGraph g2 = g;
        g2.add_weight(x, y, 1.0 - beta);
        g2.add_weight(x, zeta, beta);
        g2.add_weight(y, zeta, (1.0 - alpha) * beta);
        g2.add_zeta_loop(alpha * beta);
        step(i + 1, std::move(g2), prob * leg_zeta * g.zeta_loop() / den_zeta);
      }
      return;
    }
    // (a) direct crossing
    if (leg_direct > 0.0) {
      WeightedGraph g2 = g;
      g2.add_weight(x, y, x == y ? 2.0 : 1.0);
      StatePair p(x, y);
      ++k_acc[p];
      step(i + 1, std::move(g2), prob * leg_direct);
      --k_acc[p];
    }
    // (b) mediated, with the return bonus on a self-transition
    if (leg_zeta != 0.0 && den_zeta > 0.0) {
      double num = g.weight(zeta, y) + (x == y ? beta : 0.0);
      if (num != 0.0) {
        WeightedGraph g2 = g;
        g2.add_weight(x, y, (1.0 - beta) * (x == y ? 2.0 : 1.0));
        g2.add_weight(x, zeta, beta);
        g2.add_weight(y, zeta, beta);
        step(i + 1, std::move(g2), prob * leg_zeta * num / den_zeta);
      }
    }
  }
};

}  // namespace

LatentEnumeration enumerate_latent_walks(const CanonicalPath& path, const Params& params,
                                         const WeightedGraph& g0) {
  TransitionCounts counts = compute_counts(path);
  WalkEnum we(path, counts, params);
  WeightedGraph g = g0;
  g.set_zeta_loop(initial_zeta_loop(params, g0));
  we.step(0, std::move(g), 1.0);
  return we.result;
}

std::vector<CanonicalPath> canonical_paths(int n_transitions, StateId start) {
  std::vector<CanonicalPath> out;
  std::vector<StateId> cur{start};
  std::vector<StateId> distinct{start};
  int species_seen = start.is_species() ? 1 : 0;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    std::vector<StateId> seen = distinct;
    seen.push_back(StateId::species(species_seen + 1));
    for (StateId next : seen) {
      bool fresh = next.is_species() && next.species_label() == species_seen + 1;
      cur.push_back(next);
      if (fresh) {
        ++species_seen;
        distinct.push_back(next);
      }
      rec(remaining - 1);
      if (fresh) {
        --species_seen;
        distinct.pop_back();
      }
      cur.pop_back();
    }
  };
  rec(n_transitions);
  return out;
}

}  // namespace revmc
