#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revmc/gibbs.hpp"
#include "revmc/io.hpp"
#include "revmc/law.hpp"
#include "revmc/params.hpp"
#include "revmc/path.hpp"
#include "revmc/predict.hpp"
#include "revmc/scheme.hpp"

using json = nlohmann::ordered_json;
using namespace revmc;

namespace {

constexpr int kSchemaVersion = 1;

// Input problems exit with 3; config problems with 2; anything else
// numerical with 4.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> load_labels(const std::string& path, const std::string& format) {
  try {
    return ingest(path, format);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
}

CanonicalPath load_path(const std::string& path, const std::string& format,
                        bool log_stats = true) {
  std::vector<std::string> labels = load_labels(path, format);
  IngestStats st = ingest_stats(labels);
  if (log_stats)
    std::cerr << "ingested " << st.n_states << " states, " << st.n_transitions
              << " transitions, " << st.distinct << " distinct, " << st.singletons
              << " singletons\n";
  return canonicalize(labels).path;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const json& config, const std::string& input_path) {
  json m;
  m["schema_version"] = kSchemaVersion;
  m["subcommand"] = subcommand;
  m["config"] = config;
  if (!input_path.empty()) {
    m["input"] = input_path;
    m["input_hash"] = content_hash(input_path);
  }
  write_text(out_path + ".manifest.json", m.dump(2) + "\n");
}

json params_json(const Params& p) {
  return json{{"theta", p.theta}, {"alpha", p.alpha}, {"beta", p.beta}};
}

std::vector<Params> make_grid(const std::vector<double>& thetas,
                              const std::vector<double>& alphas,
                              const std::vector<double>& betas) {
  std::vector<Params> grid;
  for (double t : thetas)
    for (double a : alphas)
      for (double b : betas) {
        Params p{t, a, b};
        p.validate_for_inference();
        grid.push_back(p);
      }
  return grid;
}

json fit_report_json(const std::vector<FitResult>& results) {
  double best = results.front().log_ml;
  json rows = json::array();
  for (const FitResult& r : results) {
    json row = params_json(r.params);
    row["log_p_hat"] = r.log_ml;
    row["se"] = r.std_error;
    row["shifted"] = r.log_ml - best;
    rows.push_back(row);
  }
  json out;
  out["schema_version"] = kSchemaVersion;
  out["grid"] = rows;
  out["argmax"] = params_json(results.front().params);
  out["argmax_log_p_hat"] = best;
  return out;
}

std::string csv_stem(const std::string& out_path) {
  auto dot = out_path.rfind(".json");
  return dot == std::string::npos ? out_path : out_path.substr(0, dot);
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
    for (int t = 0; t < std::max(1, gopts.thin); ++t) sampler.sweep(rng);
    out.push_back(sampler.latent());
  }
  return out;
}

int run_simulate(const Params& params, int steps, std::uint64_t seed,
                 const std::string& out_path) {
  SchemeRun run = simulate(params, steps, seed);
  std::string csv = "step,state,category\n0," + run.path()[0].str() + ",\n";
  for (std::size_t i = 1; i < run.path().size(); ++i)
    csv += std::to_string(i) + "," + run.path()[i].str() + "," +
           run.categories()[i - 1] + "\n";
  write_text(out_path, csv);
  json config = params_json(params);
  config["steps"] = steps;
  config["seed"] = seed;
  write_manifest(out_path, "simulate", config, "");
  return 0;
}

int run_law(const std::string& trajectory, const std::string& format,
            const Params& params, const std::string& k_path, double max_support,
            const std::string& out_path, std::uint64_t seed) {
  (void)seed;
  CanonicalPath z = load_path(trajectory, format);
  json out;
  out["schema_version"] = kSchemaVersion;
  out["n_transitions"] = z.transitions();
  if (!k_path.empty()) {
    json kj;
    try {
      kj = json::parse(read_file(k_path));
    } catch (const std::exception& e) {
      throw DataError(e.what());
    }
    TransitionCounts counts = compute_counts(z);
    LatentCounts k = LatentCounts::zeros(counts);
    if (!kj.contains("k") || !kj["k"].is_array() ||
        kj["k"].size() != counts.pairs.size())
      throw DataError("latent counts file must hold a 'k' array, one entry per pair");
    for (std::size_t i = 0; i < counts.pairs.size(); ++i) k.k[i] = kj["k"][i];
    k.check_support();
    FCache cache;
    out["log_p_zk"] = log_p_zk(z, counts, k, params, WeightedGraph(), cache);
  } else {
    out["log_p_z"] = exact_log_p_z(z, params, WeightedGraph(), max_support);
  }
  std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    write_text(out_path, text);
    json config = params_json(params);
    config["k_file"] = k_path;
    write_manifest(out_path, "law", config, trajectory);
  }
  return 0;
}

int run_fit(const std::string& trajectory, const std::string& format,
            const std::vector<double>& thetas, const std::vector<double>& alphas,
            const std::vector<double>& betas, const GibbsOptions& gopts, int threads,
            const std::string& out_path) {
  CanonicalPath z = load_path(trajectory, format);
  std::vector<Params> grid = make_grid(thetas, alphas, betas);
  std::vector<FitResult> results = fit_grid(z, grid, gopts, threads);
  json out = fit_report_json(results);
  std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    write_text(out_path, text);
    json config;
    config["theta_grid"] = thetas;
    config["alpha_grid"] = alphas;
    config["beta_grid"] = betas;
    config["sweeps"] = gopts.n_samples;
    config["burn_in"] = gopts.burn_in;
    config["thin"] = gopts.thin;
    config["seed"] = gopts.seed;
    write_manifest(out_path, "fit", config, trajectory);
  }
  return 0;
}

int run_predict(const std::string& trajectory, const std::string& format,
                const Params& params, int horizon, int n_draws, int top_n,
                const GibbsOptions& gopts, int threads, const std::string& out_path) {
  CanonicalPath z = load_path(trajectory, format);
  std::vector<LatentCounts> latents = posterior_latents(z, params, gopts, n_draws);

  std::vector<PredictiveDraw> draws(n_draws);
  int workers = threads <= 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min(workers, n_draws);
  auto work = [&](int t) {
    for (int i = t; i < n_draws; i += workers)
      draws[i] = posterior_predictive(z, latents[i], params, horizon,
                                      gopts.seed + 0x51ED270B7A1FA17ull, i);
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  RichnessSummary s = richness_summary(draws, z, top_n);

  json out;
  out["schema_version"] = kSchemaVersion;
  out["params"] = params_json(params);
  out["horizon"] = horizon;
  out["draws"] = s.n_draws;
  out["new_species_mean"] = s.mean_new;
  json q;
  for (const auto& [p, v] : s.new_quantiles) q[std::to_string(p)] = v;
  out["new_species_quantiles"] = q;
  json uq;
  for (const auto& [p, v] : s.unseen_quantiles) uq[std::to_string(p)] = v;
  out["unseen_mass_quantiles"] = uq;
  std::string text = out.dump(2) + "\n";
  std::cout << text;

  if (!out_path.empty()) {
    write_text(out_path, text);
    std::string hist = "new_species,draws\n";
    for (const auto& [n, c] : s.histogram)
      hist += std::to_string(n) + "," + std::to_string(c) + "\n";
    write_text(csv_stem(out_path) + "_histogram.csv", hist);
    std::string states = "state,q10,q25,q50,q75,q90\n";
    for (StateId st : s.top_states) {
      const auto& box = s.state_quantiles.at(st);
      states += st.str();
      for (int p : {10, 25, 50, 75, 90}) states += "," + std::to_string(box.at(p));
      states += "\n";
    }
    write_text(csv_stem(out_path) + "_states.csv", states);
    json config = params_json(params);
    config["horizon"] = horizon;
    config["draws"] = n_draws;
    config["top_n"] = top_n;
    config["seed"] = gopts.seed;
    write_manifest(out_path, "predict", config, trajectory);
  }
  return 0;
}

int run_validate(const std::string& trajectory, const std::string& format, double split,
                 const std::vector<double>& thetas, const std::vector<double>& alphas,
                 const std::vector<double>& betas, const ValidateOptions& vopts,
                 const std::string& out_path) {
  CanonicalPath z = load_path(trajectory, format);
  std::size_t split_point =
      split < 1.0 ? static_cast<std::size_t>(split * static_cast<double>(z.length()))
                  : static_cast<std::size_t>(split);
  std::vector<Params> grid = make_grid(thetas, alphas, betas);
  ValidateReport r = validate_split(z, split_point, grid, vopts);

  json out;
  out["schema_version"] = kSchemaVersion;
  out["split_point"] = split_point;
  out["train_transitions"] = r.train_transitions;
  out["validation_transitions"] = r.validation_transitions;
  out["fit"] = fit_report_json(r.grid);
  out["actual_new_states"] = r.actual_new_states;
  json hist;
  for (const auto& [n, c] : r.predicted_new_histogram) hist[std::to_string(n)] = c;
  out["predicted_new_histogram"] = hist;
  out["new_interval_95"] = json::array({r.new_lower, r.new_upper});
  out["new_state_count_covered"] = r.new_state_count_covered;
  out["states_checked"] = r.states_checked;
  out["states_in_band"] = r.states_in_band;
  out["occupancy_coverage"] = r.occupancy_coverage;
  std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    write_text(out_path, text);
    json config;
    config["split"] = split;
    config["theta_grid"] = thetas;
    config["alpha_grid"] = alphas;
    config["beta_grid"] = betas;
    config["draws"] = vopts.draws;
    config["seed"] = vopts.gibbs.seed;
    write_manifest(out_path, "validate", config, trajectory);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reinforced random walk toolkit: simulation, path law, inference"};
  app.require_subcommand(1);

  Params params;
  std::string trajectory, out_path, k_path, format = "auto";
  int steps = 100, horizon = 1000, n_draws = 600, top_n = 20;
  int sweeps = 600, burn_in = 200, thin = 1, threads = 0;
  std::uint64_t seed = 0;
  double max_support = 1e6, split = 0.8;
  std::vector<double> theta_grid{1, 5, 10, 25, 50, 100, 300, 400, 500};
  std::vector<double> alpha_grid{0.03, 0.2, 0.5, 0.8, 0.97};
  std::vector<double> beta_grid{0.03, 0.2, 0.5, 0.8, 0.97};

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--theta", params.theta, "hub self-loop seed weight");
    cmd->add_option("--alpha", params.alpha, "discovery discount in [0,1)");
    cmd->add_option("--beta", params.beta, "hub mediation strength in [0,1]");
  };
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--trajectory", trajectory, "input state sequence")->required();
    cmd->add_option("--format", format, "input format: lines, csv or auto");
  };
  auto add_grids = [&](CLI::App* cmd) {
    cmd->add_option("--theta-grid", theta_grid, "theta grid values");
    cmd->add_option("--alpha-grid", alpha_grid, "alpha grid values");
    cmd->add_option("--beta-grid", beta_grid, "beta grid values");
    cmd->add_option("--sweeps", sweeps, "recorded posterior sweeps per grid point");
    cmd->add_option("--burn-in", burn_in, "discarded sweeps");
    cmd->add_option("--thin", thin, "sweeps between recorded draws");
  };
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker threads; 0 = all cores")
        ->envname("REVMC_THREADS");
  };

  CLI::App* sim = app.add_subcommand("simulate", "sample a path from the scheme");
  add_params(sim);
  sim->add_option("--steps", steps, "number of transitions")->required();
  sim->add_option("--seed", seed, "rng seed");
  sim->add_option("--out", out_path, "output csv")->required();

  CLI::App* law = app.add_subcommand("law", "evaluate the path law");
  add_params(law);
  add_input(law);
  law->add_option("--k", k_path, "json file with a 'k' array of latent counts");
  law->add_option("--max-support", max_support, "exact-sum support limit");
  law->add_option("--out", out_path, "output json");

  CLI::App* fit = app.add_subcommand("fit", "grid marginal-likelihood estimation");
  add_input(fit);
  add_grids(fit);
  add_threads(fit);
  fit->add_option("--seed", seed, "rng seed");
  fit->add_option("--out", out_path, "output json");

  CLI::App* pred = app.add_subcommand("predict", "posterior-predictive summaries");
  add_params(pred);
  add_input(pred);
  add_threads(pred);
  pred->add_option("--horizon", horizon, "future transitions per draw");
  pred->add_option("--draws", n_draws, "number of predictive draws");
  pred->add_option("--top-n", top_n, "states with occupancy boxes");
  pred->add_option("--sweeps", sweeps, "gibbs sweeps before drawing");
  pred->add_option("--burn-in", burn_in, "discarded sweeps");
  pred->add_option("--seed", seed, "rng seed");
  pred->add_option("--out", out_path, "output json (csv tables alongside)");

  CLI::App* val = app.add_subcommand("validate", "train/validation protocol");
  add_input(val);
  add_grids(val);
  add_threads(val);
  val->add_option("--split", split, "training states: fraction (<1) or count");
  val->add_option("--draws", n_draws, "number of predictive draws");
  val->add_option("--seed", seed, "rng seed");
  val->add_option("--out", out_path, "output json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  GibbsOptions gopts;
  gopts.n_samples = sweeps;
  gopts.burn_in = burn_in;
  gopts.thin = thin;
  gopts.seed = seed;

  try {
    params.validate();
    if (sim->parsed()) return run_simulate(params, steps, seed, out_path);
    if (law->parsed())
      return run_law(trajectory, format, params, k_path, max_support, out_path, seed);
    if (fit->parsed())
      return run_fit(trajectory, format, theta_grid, alpha_grid, beta_grid, gopts,
                     threads, out_path);
    if (pred->parsed())
      return run_predict(trajectory, format, params, horizon, n_draws, top_n, gopts,
                         threads, out_path);
    if (val->parsed()) {
      ValidateOptions vopts;
      vopts.gibbs = gopts;
      vopts.draws = n_draws;
      vopts.threads = threads;
      return run_validate(trajectory, format, split, theta_grid, alpha_grid, beta_grid,
                          vopts, out_path);
    }
  } catch (const DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
