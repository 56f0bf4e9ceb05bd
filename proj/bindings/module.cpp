// Python bindings. Trajectories cross the boundary as lists of string
// labels and are canonicalized on entry; results come back as plain
// dicts and lists so downstream code needs no wrapper types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <thread>

#include "revmc/gibbs.hpp"
#include "revmc/io.hpp"
#include "revmc/law.hpp"
#include "revmc/predict.hpp"
#include "revmc/scheme.hpp"

namespace py = pybind11;
using namespace revmc;

namespace {

CanonicalPath to_path(const std::vector<std::string>& labels) {
  return canonicalize(labels).path;
}

Params make_params(double theta, double alpha, double beta) {
  Params p{theta, alpha, beta};
  p.validate();
  return p;
}

std::vector<Params> make_grid(const std::vector<std::tuple<double, double, double>>& g) {
  std::vector<Params> grid;
  for (const auto& [t, a, b] : g) {
    Params p{t, a, b};
    p.validate_for_inference();
    grid.push_back(p);
  }
  return grid;
}

GibbsOptions make_gibbs(int sweeps, int burn_in, std::uint64_t seed) {
  GibbsOptions o;
  o.n_samples = sweeps;
  o.burn_in = burn_in;
  o.seed = seed;
  return o;
}

LatentCounts to_latent(const TransitionCounts& counts, const std::vector<int>& k) {
  LatentCounts latent = LatentCounts::zeros(counts);
  if (k.size() != latent.k.size())
    throw std::invalid_argument("k needs one entry per transition pair");
  latent.k = k;
  latent.check_support();
  return latent;
}

py::dict fit_row(const FitResult& r) {
  py::dict row;
  row["theta"] = r.params.theta;
  row["alpha"] = r.params.alpha;
  row["beta"] = r.params.beta;
  row["log_p_hat"] = r.log_ml;
  row["se"] = r.std_error;
  return row;
}

std::vector<LatentCounts> posterior_latents(const CanonicalPath& z, const Params& p,
                                            const GibbsOptions& gopts, int n) {
  std::vector<LatentCounts> out;
  out.reserve(n);
  TransitionCounts counts = compute_counts(z);
  if (p.beta == 1.0) {
    for (int i = 0; i < n; ++i) out.push_back(LatentCounts::zeros(counts));
    return out;
  }
  GibbsSampler sampler(z, p);
  CounterRng rng(gopts.seed ^ 0x9E3779B97F4A7C15ull, gopts.stream);
  for (int i = 0; i < gopts.burn_in; ++i) sampler.sweep(rng);
  for (int i = 0; i < n; ++i) {
    sampler.sweep(rng);
    out.push_back(sampler.latent());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_revmc, m) {
  m.doc() = "reinforced random walk scheme: simulation, path law, inference";

  m.def(
      "canonicalize",
      [](const std::vector<std::string>& labels) {
        CanonicalPath z = to_path(labels);
        std::vector<std::string> out;
        for (StateId s : z.states()) out.push_back(s.str());
        return out;
      },
      py::arg("labels"),
      "Order-of-appearance relabeling of a trajectory.");

  m.def(
      "ingest",
      [](const std::string& path, const std::string& format) {
        return ingest(path, format);
      },
      py::arg("path"), py::arg("format") = "auto",
      "Read a trajectory file (one label per line, or csv with a 'state' column).");

  m.def(
      "simulate",
      [](double theta, double alpha, double beta, int steps, std::uint64_t seed,
         std::uint64_t stream) {
        SchemeRun run = simulate(make_params(theta, alpha, beta), steps, seed, stream);
        std::vector<std::string> states;
        for (StateId s : run.path()) states.push_back(s.str());
        py::dict out;
        out["states"] = states;
        out["categories"] =
            std::string(run.categories().begin(), run.categories().end());
        return out;
      },
      py::arg("theta"), py::arg("alpha"), py::arg("beta"), py::arg("steps"),
      py::arg("seed"), py::arg("stream") = 0,
      "Sample a path of the scheme from the default initial graph.");

  m.def(
      "transition_pairs",
      [](const std::vector<std::string>& labels) {
        CanonicalPath z = to_path(labels);
        TransitionCounts counts = compute_counts(z);
        LatentCounts caps = LatentCounts::zeros(counts);
        py::list out;
        for (std::size_t i = 0; i < counts.pairs.size(); ++i) {
          py::dict row;
          row["x"] = counts.pairs[i].pair.lo.str();
          row["y"] = counts.pairs[i].pair.hi.str();
          row["n"] = counts.pairs[i].n;
          row["cap"] = caps.cap[i];
          out.append(row);
        }
        return out;
      },
      py::arg("labels"),
      "Per-pair transition counts and latent direct-count caps.");

  m.def(
      "log_p_z",
      [](const std::vector<std::string>& labels, double theta, double alpha,
         double beta, double max_support) {
        return exact_log_p_z(to_path(labels), make_params(theta, alpha, beta),
                             WeightedGraph(), max_support);
      },
      py::arg("labels"), py::arg("theta"), py::arg("alpha"), py::arg("beta"),
      py::arg("max_support") = 1e6,
      "Exact log path probability by latent-support summation (small paths).");

  m.def(
      "log_p_zk",
      [](const std::vector<std::string>& labels, const std::vector<int>& k,
         double theta, double alpha, double beta) {
        CanonicalPath z = to_path(labels);
        TransitionCounts counts = compute_counts(z);
        FCache cache;
        return log_p_zk(z, counts, to_latent(counts, k),
                        make_params(theta, alpha, beta), WeightedGraph(), cache);
      },
      py::arg("labels"), py::arg("k"), py::arg("theta"), py::arg("alpha"),
      py::arg("beta"),
      "Joint log probability of the path and a latent direct-count vector.");

  m.def(
      "marginal_likelihood",
      [](const std::vector<std::string>& labels, double theta, double alpha,
         double beta, int sweeps, int burn_in, std::uint64_t seed) {
        MarginalLikelihood ml =
            estimate_marginal_likelihood(to_path(labels), make_params(theta, alpha, beta),
                                         make_gibbs(sweeps, burn_in, seed));
        py::dict out;
        out["log_p_hat"] = ml.log_value;
        out["se"] = ml.std_error;
        out["n_samples"] = ml.n_samples;
        return out;
      },
      py::arg("labels"), py::arg("theta"), py::arg("alpha"), py::arg("beta"),
      py::arg("sweeps") = 600, py::arg("burn_in") = 200, py::arg("seed") = 1,
      "Estimated log marginal likelihood with a bootstrap standard error.");

  m.def(
      "fit_grid",
      [](const std::vector<std::string>& labels,
         const std::vector<std::tuple<double, double, double>>& grid, int sweeps,
         int burn_in, std::uint64_t seed, int threads) {
        std::vector<FitResult> results =
            fit_grid(to_path(labels), make_grid(grid), make_gibbs(sweeps, burn_in, seed),
                     threads);
        py::list out;
        for (const FitResult& r : results) out.append(fit_row(r));
        return out;
      },
      py::arg("labels"), py::arg("grid"), py::arg("sweeps") = 600,
      py::arg("burn_in") = 200, py::arg("seed") = 1, py::arg("threads") = 1,
      "Marginal likelihood over (theta, alpha, beta) tuples, best first.");

  m.def(
      "predict",
      [](const std::vector<std::string>& labels, double theta, double alpha,
         double beta, int horizon, int draws, int sweeps, int burn_in,
         std::uint64_t seed, int top_n) {
        CanonicalPath z = to_path(labels);
        Params p = make_params(theta, alpha, beta);
        GibbsOptions gopts = make_gibbs(sweeps, burn_in, seed);
        std::vector<LatentCounts> latents = posterior_latents(z, p, gopts, draws);
        std::vector<PredictiveDraw> sims(draws);
        for (int i = 0; i < draws; ++i)
          sims[i] = posterior_predictive(z, latents[i], p, horizon,
                                         seed + 0x51ED270B7A1FA17ull, i);
        RichnessSummary s = richness_summary(sims, z, top_n);
        py::dict out;
        out["draws"] = s.n_draws;
        out["new_species_mean"] = s.mean_new;
        out["new_species_quantiles"] = s.new_quantiles;
        out["histogram"] = s.histogram;
        out["unseen_mass_quantiles"] = s.unseen_quantiles;
        py::dict boxes;
        for (StateId st : s.top_states)
          boxes[py::str(st.str())] = s.state_quantiles.at(st);
        out["state_occupancy_quantiles"] = boxes;
        return out;
      },
      py::arg("labels"), py::arg("theta"), py::arg("alpha"), py::arg("beta"),
      py::arg("horizon") = 1000, py::arg("draws") = 600, py::arg("sweeps") = 600,
      py::arg("burn_in") = 200, py::arg("seed") = 1, py::arg("top_n") = 20,
      "Posterior-predictive richness and occupancy summaries.");

  m.def(
      "validate",
      [](const std::vector<std::string>& labels, std::size_t split_point,
         const std::vector<std::tuple<double, double, double>>& grid, int draws,
         int sweeps, int burn_in, std::uint64_t seed, int threads) {
        ValidateOptions opts;
        opts.gibbs = make_gibbs(sweeps, burn_in, seed);
        opts.draws = draws;
        opts.threads = threads;
        ValidateReport r = validate_split(to_path(labels), split_point,
                                          make_grid(grid), opts);
        py::dict out;
        out["best"] = fit_row(r.best);
        py::list rows;
        for (const FitResult& f : r.grid) rows.append(fit_row(f));
        out["grid"] = rows;
        out["train_transitions"] = r.train_transitions;
        out["validation_transitions"] = r.validation_transitions;
        out["actual_new_states"] = r.actual_new_states;
        out["new_interval_95"] = py::make_tuple(r.new_lower, r.new_upper);
        out["new_state_count_covered"] = r.new_state_count_covered;
        out["states_checked"] = r.states_checked;
        out["states_in_band"] = r.states_in_band;
        out["occupancy_coverage"] = r.occupancy_coverage;
        return out;
      },
      py::arg("labels"), py::arg("split_point"), py::arg("grid"),
      py::arg("draws") = 600, py::arg("sweeps") = 600, py::arg("burn_in") = 200,
      py::arg("seed") = 1, py::arg("threads") = 1,
      "Train on a prefix, fit the grid, score the held-out suffix.");

  m.def(
      "log_f",
      [](double e, double beta, int n, int k) {
        FTable t(e, beta, n);
        return t.log_f(n, k);
      },
      py::arg("e"), py::arg("beta"), py::arg("n"), py::arg("k"),
      "log f_{e,beta}(n, k) via the stable two-term recursion.");

  m.def("f_closed", &f_closed, py::arg("e"), py::arg("beta"), py::arg("n"),
        py::arg("k"), "f_{e,beta}(n, k) via the generalized factorial array.");

  m.def("f_bruteforce", &f_bruteforce, py::arg("e"), py::arg("beta"), py::arg("n"),
        py::arg("k"), "f_{e,beta}(n, k) by subset enumeration (n <= 22).");
}
