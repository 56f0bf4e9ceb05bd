#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "revmc/colored.hpp"
#include "revmc/law.hpp"

using namespace revmc;

namespace {

double move_mass(const std::vector<ColoredMove>& moves) {
  double acc = 0.0;
  for (const ColoredMove& m : moves) acc += m.prob;
  return acc;
}

ColoredRun random_run(const Params& p, int steps, std::uint64_t seed) {
  ColoredRun run(p);
  CounterRng rng(seed);
  for (int i = 0; i < steps; ++i) run.step(rng);
  return run;
}

}  // namespace

TEST_CASE("initial law") {
  Params p{2.0, 0.3, 0.7};
  ColoredRun run(p);
  CHECK(run.initial_stay_probability() ==
        doctest::Approx(p.beta * (1 - p.alpha) / (p.beta + p.theta)));
  CHECK_THROWS(run.predictive());
  run.apply_initial(false);
  CHECK(run.vertex_path() == std::vector<int>{1, 2});
  CHECK_THROWS(run.apply_initial(false));
}

TEST_CASE("recross probability after one crossing") {
  Params p{2.0, 0.3, 0.7};
  ColoredRun run(p);
  run.apply_initial(false);  // edge {1,2}, now at 2
  auto moves = run.predictive();
  double recross = 0.0;
  for (const ColoredMove& m : moves)
    if (m.kind == ColoredMove::Recross) recross += m.prob;
  // G = 1 - beta, W = -alpha beta + 1 (one incidence at the far endpoint)
  CHECK(recross == doctest::Approx((1 - p.beta) / (1 - p.alpha * p.beta)));
}

TEST_CASE("predictive normalizes exactly") {
  for (Params p : {Params{2, 0.3, 0.7}, Params{0.5, 0.9, 0.97}, Params{7, 0.0, 0.2}}) {
    for (std::uint64_t seed : {1ull, 2ull}) {
      ColoredRun run(p);
      CounterRng rng(seed);
      for (int i = 0; i < 30; ++i) {
        run.step(rng);
        CHECK(move_mass(run.predictive()) == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("colors stay on one vertex pair") {
  ColoredRun run = random_run(Params{3, 0.4, 0.8}, 200, 9);
  std::set<int> colors;
  std::map<int, std::pair<int, int>> owner;
  for (const ColoredEdge& e : run.edges()) {
    auto it = owner.find(e.color);
    if (it == owner.end())
      owner[e.color] = {e.u, e.v};
    else
      CHECK(it->second == std::make_pair(e.u, e.v));
  }
  CHECK(owner.size() == run.distinct_edges().size());
}

TEST_CASE("step frequencies match the predictive") {
  Params p{2, 0.3, 0.7};
  ColoredRun base = random_run(p, 12, 4);
  auto moves = base.predictive();
  const int draws = 100000;
  std::vector<int> counts(moves.size(), 0);
  std::vector<double> w(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i) w[i] = moves[i].prob;
  for (int r = 0; r < draws; ++r) {
    CounterRng rng(2024, r);
    counts[rng.discrete(w)] += 1;
  }
  double chi2 = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    double e = moves[i].prob * draws;
    if (e < 5) continue;
    chi2 += (counts[i] - e) * (counts[i] - e) / e;
    ++cells;
  }
  CHECK(chi2 < cells + 3.0 * std::sqrt(2.0 * cells) + 8.0);
}

TEST_CASE("sufficient statistics") {
  Params p{2, 0.3, 0.7};
  {
    ColoredRun run(p);
    run.apply_initial(false);
    SufficientStats st = sufficient_stats(run);
    CHECK(st.tau == doctest::Approx(1.0));
    CHECK(st.rho == 2);
    CHECK(st.eta_v.at(1) == 1);
    CHECK(st.eta_v.at(2) == 1);
    CHECK(st.kappa == doctest::Approx(1.5));  // away from start: +1/2
  }
  {
    ColoredRun run(p);
    run.apply_initial(true);  // loop at the start
    SufficientStats st = sufficient_stats(run);
    CHECK(st.eta_v.at(1) == 2);  // loops double the degree
    CHECK(st.s_e.begin()->second == 1);
    CHECK(st.kappa == doctest::Approx(2.0));  // two visits, at the start
  }
  {
    ColoredRun run = random_run(p, 80, 21);
    SufficientStats st = sufficient_stats(run);
    double eta_total = 0;
    for (const auto& [v, e] : st.eta_v) eta_total += e;
    CHECK(st.tau == doctest::Approx(eta_total / 2.0));
  }
}

TEST_CASE("marginal vertex law equals the plain scheme") {
  for (Params p : {Params{2, 0.3, 0.7}, Params{1, 0.0, 0.5}, Params{4, 0.8, 0.9}}) {
    auto colored = colored_vertex_marginal(p, 3);
    WeightedGraph g0;
    g0.set_weight(StateId::species(1), StateId::zeta(), -p.alpha * p.beta);
    g0.set_zeta_loop(p.theta + p.alpha * p.beta);
    double total = 0.0;
    for (const CanonicalPath& z : canonical_paths(3)) {
      LatentEnumeration en = enumerate_latent_walks(z, p, g0);
      std::vector<int> key;
      for (StateId s : z.states()) key.push_back(s.species_label());
      auto it = colored.find(key);
      double got = it == colored.end() ? 0.0 : it->second;
      CHECK(got == doctest::Approx(en.total).epsilon(1e-10));
      total += got;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sufficiency invariances") {
  // probabilities depend only on the stated statistics; bucket random
  // runs by those statistics and require exact within-bucket equality
  Params p{2.5, 0.35, 0.75};
  std::map<std::tuple<double, int, int>, double> recross;       // (kappa, k_e, loop)
  std::map<std::pair<double, int>, double> new_color;           // (kappa, eta_x)
  std::map<std::tuple<double, int, bool>, double> vertex_pick;  // (tau, eta_y, y==x)
  std::map<std::pair<double, int>, double> new_vertex;          // (tau, rho)

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    ColoredRun run = random_run(p, 1 + static_cast<int>(seed % 13), seed);
    if (run.edges().empty()) continue;
    SufficientStats st = sufficient_stats(run);
    int x = run.current_vertex();
    double b_sum = 0.0;
    for (const ColoredMove& m : run.predictive()) {
      switch (m.kind) {
        case ColoredMove::Recross: {
          const ColoredEdge& e = run.distinct_edges()[m.edge_index];
          auto key = std::make_tuple(st.kappa, run.crossings(m.edge_index),
                                     e.is_loop() ? 1 : 0);
          auto [it, fresh] = recross.try_emplace(key, m.prob);
          if (!fresh) CHECK(it->second == doctest::Approx(m.prob).epsilon(1e-12));
          break;
        }
        case ColoredMove::NewColorOldVertex:
        case ColoredMove::NewColorNewVertex:
          b_sum += m.prob;
          break;
      }
    }
    if (b_sum > 0.0) {
      auto nk = std::make_pair(st.kappa, st.eta_v.at(x));
      auto [it, fresh] = new_color.try_emplace(nk, b_sum);
      if (!fresh) CHECK(it->second == doctest::Approx(b_sum).epsilon(1e-12));
      for (const ColoredMove& m : run.predictive()) {
        if (m.kind == ColoredMove::NewColorOldVertex) {
          auto key = std::make_tuple(st.tau, st.eta_v.at(m.vertex), m.vertex == x);
          auto [it2, fresh2] = vertex_pick.try_emplace(key, m.prob / b_sum);
          if (!fresh2)
            CHECK(it2->second == doctest::Approx(m.prob / b_sum).epsilon(1e-12));
        } else if (m.kind == ColoredMove::NewColorNewVertex) {
          auto key = std::make_pair(st.tau, st.rho);
          auto [it2, fresh2] = new_vertex.try_emplace(key, m.prob / b_sum);
          if (!fresh2)
            CHECK(it2->second == doctest::Approx(m.prob / b_sum).epsilon(1e-12));
        }
      }
    }
  }
  CHECK(recross.size() > 3);
  CHECK(new_color.size() > 3);
}

TEST_CASE("recross weight is affine in crossings") {
  Params p{2, 0.2, 0.6};
  ColoredRun run(p);
  run.apply_initial(false);  // edge {1,2} crossed once
  std::vector<double> g{run.edge_weight(0)};
  for (int c = 0; c < 3; ++c) {
    for (const ColoredMove& m : run.predictive())
      if (m.kind == ColoredMove::Recross && m.edge_index == 0) {
        run.apply(m);
        break;
      }
    g.push_back(run.edge_weight(0));
  }
  for (std::size_t i = 1; i < g.size(); ++i)
    CHECK(g[i] - g[i - 1] == doctest::Approx(1.0));
}
