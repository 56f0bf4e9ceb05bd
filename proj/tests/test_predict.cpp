#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>

#include "doctest.h"
#include "revmc/law.hpp"
#include "revmc/predict.hpp"
#include "revmc/scheme.hpp"

using namespace revmc;

namespace {
StateId S(int j) { return StateId::species(j); }
}

TEST_CASE("nearest rank quantiles") {
  std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(nearest_rank(v, 50) == doctest::Approx(5.0));
  CHECK(nearest_rank(v, 10) == doctest::Approx(1.0));
  CHECK(nearest_rank(v, 91) == doctest::Approx(10.0));
  CHECK(nearest_rank(v, 0) == doctest::Approx(1.0));
  CHECK_THROWS(nearest_rank({}, 50));
}

TEST_CASE("zero horizon draw") {
  CanonicalPath z({S(1), S(2)});
  LatentCounts k = LatentCounts::zeros(compute_counts(z));
  PredictiveDraw d = posterior_predictive(z, k, Params{1, 0, 0.5}, 0, 1);
  CHECK(d.future.empty());
  CHECK(d.new_state_count == 0);
  CHECK(d.occupancy.empty());
}

TEST_CASE("occupancy sums to one") {
  CanonicalPath z({S(1), S(2), S(1)});
  TransitionCounts c = compute_counts(z);
  LatentCounts k = LatentCounts::zeros(c);
  for (std::uint64_t stream : {0ull, 1ull, 2ull}) {
    PredictiveDraw d = posterior_predictive(z, k, Params{2, 0.3, 0.6}, 200, 17, stream);
    CHECK(d.future.size() == 200);
    double total = 0;
    for (const auto& [s, f] : d.occupancy) total += f;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.new_state_count >= 0);
  }
}

TEST_CASE("determinism per draw key") {
  CanonicalPath z({S(1), S(2), S(1)});
  LatentCounts k = LatentCounts::zeros(compute_counts(z));
  Params p{2, 0.3, 0.6};
  PredictiveDraw a = posterior_predictive(z, k, p, 50, 9, 4);
  PredictiveDraw b = posterior_predictive(z, k, p, 50, 9, 4);
  CHECK(a.future == b.future);
  PredictiveDraw c = posterior_predictive(z, k, p, 50, 9, 5);
  CHECK(a.future != c.future);
}

TEST_CASE("resumption matches the exact one-step law") {
  // predictive of the resumed scheme vs p(z extended) / p(z) with the
  // latent coordinates marginalized
  for (Params p : {Params{2, 0.3, 0.6}, Params{1, 0.0, 0.97}}) {
    CanonicalPath z({S(1), S(2), S(1)});
    TransitionCounts c = compute_counts(z);
    FCache cache;
    for (StateId next : {S(1), S(2), S(3)}) {
      CanonicalPath z2 = z.extended(next);
      // joint ratio: sum over k2 of p(z2,k2) / sum over k of p(z,k)
      double num = std::exp(exact_log_p_z(z2, p));
      double den = std::exp(exact_log_p_z(z, p));
      // mixture over the posterior of k of the resumed predictive
      double mix = 0.0;
      for_each_latent(c, WeightedGraph(), [&](const LatentCounts& k) {
        double w = std::exp(log_p_zk(z, c, k, p, WeightedGraph(), cache));
        SchemeRun run = resume(z, k, p, WeightedGraph(), 1);
        StepDistribution d = run.predictive();
        double step = next == S(3) ? d.discover : d.total(next);
        mix += w * step;
      });
      CHECK(mix / den == doctest::Approx(num / den).epsilon(1e-8));
    }
  }
}

TEST_CASE("new-species mean matches the urn tail sum") {
  // exchangeable case: discovery probabilities are independent of history
  double theta = 3.0;
  Params p{theta, 0.0, 1.0};
  WeightedGraph g0;
  g0.set_weight(S(1), StateId::zeta(), 1.0);
  CanonicalPath z({S(1), S(2), S(1)});
  LatentCounts k = LatentCounts::zeros(compute_counts(z));

  const int m = 100, draws = 2000;
  double c = theta / 2.0, L = static_cast<double>(z.length());
  double expect = 0.0;
  for (int t = 0; t < m; ++t) expect += c / (c + L + t);

  double mean = 0.0, sq = 0.0;
  for (int r = 0; r < draws; ++r) {
    PredictiveDraw d = posterior_predictive(z, k, p, m, 4242, r, g0);
    mean += d.new_state_count;
    sq += static_cast<double>(d.new_state_count) * d.new_state_count;
  }
  mean /= draws;
  double se = std::sqrt((sq / draws - mean * mean) / draws);
  CHECK(std::fabs(mean - expect) <= 3.0 * se + 1e-9);
}

TEST_CASE("richness summary of a single draw") {
  CanonicalPath z({S(1), S(2), S(1)});
  LatentCounts k = LatentCounts::zeros(compute_counts(z));
  PredictiveDraw d = posterior_predictive(z, k, Params{2, 0.3, 0.6}, 100, 3);
  RichnessSummary s = richness_summary({d}, z, 20);
  CHECK(s.n_draws == 1);
  CHECK(s.histogram.at(d.new_state_count) == 1);
  CHECK(s.mean_new == doctest::Approx(d.new_state_count));
  for (const auto& [p_, v] : s.new_quantiles) CHECK(v == d.new_state_count);
  for (StateId st : s.top_states) {
    double occ = d.occupancy.count(st) ? d.occupancy.at(st) : 0.0;
    for (const auto& [q, v] : s.state_quantiles.at(st)) CHECK(v == doctest::Approx(occ));
  }
}

TEST_CASE("richness summary aggregates and orders") {
  Params p{2, 0.3, 0.6};
  CanonicalPath z({S(1), S(2), S(1), S(3), S(1)});
  LatentCounts k = LatentCounts::zeros(compute_counts(z));
  std::vector<PredictiveDraw> draws;
  for (int r = 0; r < 50; ++r)
    draws.push_back(posterior_predictive(z, k, p, 200, 7, r));
  RichnessSummary s = richness_summary(draws, z, 2);
  CHECK(s.top_states.size() == 2);
  // quantiles monotone; histogram mass equals draw count
  int mass = 0;
  for (const auto& [n, c] : s.histogram) mass += c;
  CHECK(mass == 50);
  int prev = -1;
  for (int q : {10, 25, 50, 75, 90}) {
    CHECK(s.new_quantiles.at(q) >= prev);
    prev = s.new_quantiles.at(q);
  }
  // the start state dominates occupancy here
  CHECK(s.top_states[0] == S(1));
  CHECK_THROWS(richness_summary({}, z, 5));
}

TEST_CASE("validate split report is coherent") {
  Params truth{2, 0.1, 0.6};
  SchemeRun run = simulate(truth, 160, 31);
  CanonicalPath full(run.path());
  std::vector<Params> grid{{1, 0.03, 0.5}, {5, 0.2, 0.8}};
  ValidateOptions opts;
  opts.gibbs.n_samples = 150;
  opts.gibbs.burn_in = 50;
  opts.gibbs.seed = 9;
  opts.draws = 80;
  opts.threads = 2;
  ValidateReport r = validate_split(full, 120, grid, opts);
  CHECK(r.train_transitions == 119);
  CHECK(r.validation_transitions == static_cast<int>(full.length()) - 120);
  CHECK(r.grid.size() == 2);
  CHECK(r.best.log_ml >= r.grid[1].log_ml);
  int mass = 0;
  for (const auto& [n, c] : r.predicted_new_histogram) mass += c;
  CHECK(mass == opts.draws);
  CHECK(r.new_lower <= r.new_upper);
  CHECK(r.states_checked > 0);
  CHECK(r.states_in_band <= r.states_checked);
  CHECK(r.occupancy_coverage ==
        doctest::Approx(static_cast<double>(r.states_in_band) / r.states_checked));
  CHECK_THROWS(validate_split(full, 1, grid, opts));
  CHECK_THROWS(validate_split(full, full.length(), grid, opts));
}

TEST_CASE("validate split covers a well specified model") {
  // small self-consistency calibration: data simulated from a grid point
  int covered = 0;
  const int reps = 4;
  for (int rep = 0; rep < reps; ++rep) {
    Params truth{5, 0.2, 0.5};
    SchemeRun run = simulate(truth, 250, 100 + rep);
    CanonicalPath full(run.path());
    std::vector<Params> grid{{5, 0.2, 0.5}, {1, 0.03, 0.97}};
    ValidateOptions opts;
    opts.gibbs.n_samples = 200;
    opts.gibbs.burn_in = 80;
    opts.gibbs.seed = 17 + rep;
    opts.draws = 150;
    opts.threads = 2;
    ValidateReport r = validate_split(full, 200, grid, opts);
    if (r.new_state_count_covered) ++covered;
  }
  CHECK(covered >= reps - 1);
}
