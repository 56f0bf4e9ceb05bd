#include "revmc/gibbs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "revmc/logspace.hpp"

namespace revmc {

namespace {
constexpr double kLog2 = 0.6931471805599453;

int species_index(StateId s) { return s.species_label() - 1; }
}  // namespace

GibbsSampler::GibbsSampler(const CanonicalPath& path, const Params& params)
    : params_(params) {
  params_.validate_for_inference();
  counts_ = compute_counts(path);
  for (StateId s : path.distinct())
    if (!s.is_species())
      throw std::invalid_argument("sampler requires a path from the null initial graph");
  n_species_ = path.species_count();
  caps_ = LatentCounts::zeros(counts_);

  d_index_.reserve(counts_.pairs.size());
  for (const PairCount& pc : counts_.pairs)
    d_index_.push_back({species_index(pc.pair.lo), species_index(pc.pair.hi)});

  state_.k = caps_.k;  // zeros
  state_.D.assign(n_species_ + 1, 1.0 / (n_species_ + 1));
  state_.G = 1.0;
}

void GibbsSampler::sample_weights_given_k(CounterRng& rng) {
  LatentStats stats = derived_latent_stats(counts_, latent());
  const double theta = params_.theta, alpha = params_.alpha, beta = params_.beta;
  state_.G = rng.gamma(theta / (2.0 * beta) + stats.l);

  std::vector<double> shapes(n_species_ + 1);
  for (int j = 1; j <= n_species_; ++j) {
    auto it = stats.l_x.find(StateId::species(j));
    int lx = it == stats.l_x.end() ? 0 : it->second;
    shapes[j - 1] = j == 1 ? static_cast<double>(lx) : lx - alpha;
  }
  shapes[n_species_] = theta / beta + (n_species_ - 1) * alpha;
  for (double s : shapes)
    if (!(s > 0.0)) throw std::logic_error("invalid posterior parameter");
  state_.D = rng.dirichlet(shapes);
}

void GibbsSampler::sample_k_given_weights(CounterRng& rng) {
  const double beta = params_.beta;
  for (std::size_t i = 0; i < counts_.pairs.size(); ++i) {
    const PairCount& pc = counts_.pairs[i];
    int cap = caps_.cap[i];
    if (cap == 0) {
      state_.k[i] = 0;
      continue;
    }
    auto [a, b] = d_index_[i];
    double log_med = std::log(2.0 * beta * state_.G * state_.D[a] * state_.D[b]);
    const FTable& ft = cache_.table(1.0 - beta, beta, pc.n - 1);
    std::vector<double> lw(cap + 1);
    for (int k = 0; k <= cap; ++k) {
      lw[k] = ft.log_f(pc.n - 1, k) + (pc.n - k) * log_med;
      if (pc.pair.is_loop()) lw[k] += k * kLog2;
    }
    state_.k[i] = static_cast<int>(rng.discrete_log(lw));
  }
}

void GibbsSampler::sweep(CounterRng& rng) {
  sample_weights_given_k(rng);
  sample_k_given_weights(rng);
}

double GibbsSampler::log_psi() const {
  const double beta = params_.beta;
  double acc = 0.0;
  for (int j = 0; j < n_species_; ++j) acc -= std::log(state_.D[j]);
  FCache cache;
  for (std::size_t i = 0; i < counts_.pairs.size(); ++i) {
    const PairCount& pc = counts_.pairs[i];
    int k = state_.k[i];
    auto [a, b] = d_index_[i];
    const FTable& ft = cache.table(1.0 - beta, beta, pc.n - 1);
    acc += ft.log_f(pc.n - 1, k);
    acc += (pc.n - k) * std::log(2.0 * beta * state_.G * state_.D[a] * state_.D[b]);
    if (pc.pair.is_loop()) acc += k * kLog2;
  }
  return acc;
}

LatentCounts GibbsSampler::latent() const {
  LatentCounts lc;
  lc.k = state_.k;
  lc.cap = caps_.cap;
  return lc;
}

MarginalLikelihood estimate_marginal_likelihood(const CanonicalPath& path,
                                                const Params& params,
                                                const GibbsOptions& opts) {
  Params p = params;
  p.validate_for_inference();
  TransitionCounts counts = compute_counts(path);
  LatentCounts zero = LatentCounts::zeros(counts);
  FCache cache;

  if (p.beta == 1.0) {
    // Every latent count is forced to zero: the value is exact.
    double lp = log_p_zk(path, counts, zero, p, WeightedGraph(), cache);
    return {lp, 0.0, 0};
  }

  double log_support = 0.0;
  for (int cap : zero.cap) log_support += std::log(static_cast<double>(cap + 1));

  GibbsSampler sampler(path, p);
  CounterRng rng(opts.seed, opts.stream);
  for (int i = 0; i < opts.burn_in; ++i) sampler.sweep(rng);

  std::vector<double> neg_log(opts.n_samples);
  for (int i = 0; i < opts.n_samples; ++i) {
    for (int t = 0; t < std::max(1, opts.thin); ++t) sampler.sweep(rng);
    double lp = log_p_zk(path, counts, sampler.latent(), p, WeightedGraph(), cache);
    if (!std::isfinite(lp)) throw std::runtime_error("posterior draw outside support");
    neg_log[i] = -lp;
  }

  MarginalLikelihood out;
  out.n_samples = opts.n_samples;
  out.log_value = log_support - log_mean_exp(neg_log);

  if (opts.bootstrap > 1 && opts.n_samples > 1) {
    CounterRng boot(opts.seed ^ 0xB007B007B007B007ull, opts.stream);
    std::vector<double> reps(opts.bootstrap);
    std::vector<double> sample(neg_log.size());
    for (int b = 0; b < opts.bootstrap; ++b) {
      for (double& v : sample) v = neg_log[boot() % neg_log.size()];
      reps[b] = log_support - log_mean_exp(sample);
    }
    double mean = std::accumulate(reps.begin(), reps.end(), 0.0) / reps.size();
    double ss = 0.0;
    for (double r : reps) ss += (r - mean) * (r - mean);
    out.std_error = std::sqrt(ss / (reps.size() - 1));
  }
  return out;
}

std::vector<FitResult> fit_grid(const CanonicalPath& path,
                                const std::vector<Params>& grid,
                                const GibbsOptions& opts, int threads) {
  if (grid.empty()) throw std::invalid_argument("empty parameter grid");
  for (const Params& p : grid) {
    Params q = p;
    q.validate_for_inference();
  }
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<int>(threads, static_cast<int>(grid.size()));

  std::vector<FitResult> results(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      GibbsOptions o = opts;
      o.stream = opts.stream + i;  // disjoint streams per grid point
      MarginalLikelihood ml = estimate_marginal_likelihood(path, grid[i], o);
      results[i] = {grid[i], ml.log_value, ml.std_error};
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<std::size_t> order(results.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return results[a].log_ml > results[b].log_ml;
  });
  std::vector<FitResult> sorted;
  sorted.reserve(results.size());
  for (std::size_t i : order) sorted.push_back(results[i]);
  return sorted;
}

}  // namespace revmc
