#include "qsearch/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>

#include "qsearch/counting.hpp"
#include "qsearch/database.hpp"
#include "qsearch/efficiency.hpp"
#include "qsearch/error.hpp"
#include "qsearch/full_simulator.hpp"
#include "qsearch/io.hpp"
#include "qsearch/phase_estimation.hpp"
#include "qsearch/reduced_dynamics.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/state_prep.hpp"

namespace qsearch::cli {

using nlohmann::json;

namespace {

bool wants_json(OutputFormat f) { return f != OutputFormat::kCsv; }
bool wants_csv(OutputFormat f) { return f != OutputFormat::kJson; }

std::ofstream open_output(const RunConfig& config, const std::string& name) {
  const auto path = config.output_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write output file '" + path.string() + "'");
  return out;
}

void write_json(const RunConfig& config, const std::string& name, const json& doc) {
  open_output(config, name) << doc.dump(2) << '\n';
}

json run_header(const RunConfig& config) {
  return json{{"schema_version", kSchemaVersion},
              {"command", to_string(config.command)},
              {"seed", config.seed},
              {"rng", std::string(CounterRng::kAlgorithm)}};
}

SearchScenario load(const RunConfig& config) {
  if (config.scenario_path.empty()) {
    throw ValidationError(std::string(to_string(config.command)) + " requires --scenario");
  }
  SearchScenario s = load_scenario(config.scenario_path);
  if (config.energy) s = s.with_energy(*config.energy);
  return s;
}

void warn_renormalized(const SearchScenario& s, std::ostream& err) {
  if (s.weights_renormalized()) err << "warning: information-set weights rescaled to sum to 1\n";
}

void simulate(const RunConfig& config, std::uint64_t seed, std::ostream& err) {
  const SearchScenario s = load(config);
  warn_renormalized(s, err);
  const StatePrep prep = weighted_superposition(s);
  const double t = optimal_time(prep.y, s.energy());
  const SuccessDistribution dist = success_distribution(prep, s.energy(), t);

  if (wants_csv(config.format)) {
    const auto traj = trajectory(prep.y, s.energy());
    auto out = open_output(config, "trajectory.csv");
    write_trajectory_csv(out, traj);
    auto sd = open_output(config, "success_distribution.csv");
    write_success_distribution_csv(sd, dist, s);
  }
  if (wants_json(config.format)) {
    CounterRng rng(seed);
    std::map<std::size_t, std::size_t> hist;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < config.n_samples; ++i) {
      const std::size_t item = sample_measurement(dist.probability, rng);
      ++hist[item];
      hits += static_cast<std::size_t>(oracle_eval(s, item));
    }
    json measured = json::object();
    for (const auto& [item, n] : hist) measured[std::to_string(item)] = n;

    json doc = run_header(config);
    doc["scenario"] = scenario_to_json(s);
    doc["weights_renormalized"] = s.weights_renormalized();
    doc["state_prep"] = to_json(prep);
    doc["confidence"] = to_json(classify_confidence(s));
    doc["optimal_time"] = t;
    doc["success_distribution"] = to_json(dist);
    doc["measurements"] = {{"shots", config.n_samples}, {"oracle_hits", hits}, {"item_counts", measured}};
    write_json(config, "simulate.json", doc);
  }
}

void verify(const RunConfig& config, std::ostream& err) {
  const SearchScenario s = load(config);
  warn_renormalized(s, err);
  const StatePrep prep = weighted_superposition(s);
  const VerificationReport r = verify_reduction(s, prep, config.grid_points);
  if (wants_json(config.format)) {
    json doc = run_header(config);
    doc["report"] = to_json(r);
    write_json(config, "verify.json", doc);
  }
  if (wants_csv(config.format)) {
    auto out = open_output(config, "verify.csv");
    out.precision(17);
    out << "n_items,y,optimal_time,grid_points,subspace_residual,reduced_deviation,energy_drift,norm_drift,"
           "outside_support_max,spectrum_error\n"
        << r.n_items << ',' << r.y << ',' << r.optimal_time << ',' << r.grid_points << ',' << r.subspace_residual
        << ',' << r.reduced_deviation << ',' << r.energy_drift << ',' << r.norm_drift << ','
        << r.outside_support_max << ',' << r.spectrum_error << '\n';
  }
}

void estimate(const RunConfig& config, std::uint64_t seed, std::ostream& err) {
  const SearchScenario s = load(config);
  warn_renormalized(s, err);
  const StatePrep prep = weighted_superposition(s);
  const CounterRng root(seed);
  const auto samples = sample_phase_register(prep.y, config.m_size, config.n_samples, root.split("register").key());
  const auto verifier = make_oracle_verifier(s, prep, kDefaultVerificationShots, root.split("verify").key());
  const PhaseEstimate est = estimate_y(samples, config.m_size, verifier);
  const PhaseDistribution dist = measurement_distribution(prep.y, config.m_size);

  if (wants_json(config.format)) {
    const std::vector<std::size_t> windows{2, 3, 5, 10};
    json doc = run_header(config);
    doc["estimate"] = to_json(est);
    doc["y_prepared"] = prep.y;
    doc["y_error"] = circle_distance(est.y_hat, prep.y);
    doc["within_resolution"] = circle_distance(est.y_hat, prep.y) <= est.resolution + 1e-12;
    doc["optimal_time_estimate"] = optimal_time(est.y_hat, s.energy());
    doc["tail_bounds"] = to_json(tail_bound_report(prep.y, config.m_size, windows));
    doc["qft_gate_count"] = qft_gate_count(config.m_size);
    write_json(config, "estimate.json", doc);
  }
  if (wants_csv(config.format)) {
    auto out = open_output(config, "phase_distribution.csv");
    write_phase_distribution_csv(out, dist);
  }
}

void count(const RunConfig& config, std::uint64_t seed, std::ostream& err) {
  const SearchScenario s = load(config);
  if (!pairwise_disjoint(s.info_sets())) err << "note: overlapping sets replaced by their disjoint version\n";
  CountingOptions opt;
  opt.m_size = config.m_size;
  opt.n_samples = config.n_samples;
  opt.seed = seed;
  const CountResult r = count_targets(s, opt);
  if (wants_json(config.format)) {
    json doc = run_header(config);
    doc["result"] = to_json(r);
    doc["true_count"] = s.target_count();
    write_json(config, "count.json", doc);
  }
  if (wants_csv(config.format)) {
    auto out = open_output(config, "count_histogram.csv");
    out << "k,count\n";
    for (std::size_t k = 0; k < r.estimate.histogram.size(); ++k) out << k << ',' << r.estimate.histogram[k] << '\n';
  }
}

void sweep(const RunConfig& config, std::uint64_t seed, std::ostream& err) {
  const SweepSettings& sw = config.sweep;
  if (sw.points < 2) throw ValidationError("sweep: --points must be at least 2");
  if (!(sw.alpha_min > 0.0 && sw.alpha_min < sw.alpha_max && sw.alpha_max < 1.0)) {
    throw ValidationError("sweep: need 0 < --alpha-min < --alpha-max < 1");
  }
  const double energy = config.energy.value_or(1.0);
  std::vector<double> grid(sw.points);
  for (std::size_t i = 0; i < sw.points; ++i) {
    grid[i] = sw.alpha_min + (sw.alpha_max - sw.alpha_min) * static_cast<double>(i) / static_cast<double>(sw.points - 1);
  }
  const auto curve = misplaced_confidence_curve(sw.l, sw.n1, sw.n2, sw.n12, grid, energy);

  if (wants_csv(config.format)) {
    auto out = open_output(config, "sweep.csv");
    write_misplaced_curve_csv(out, curve);
  }
  if (!wants_json(config.format)) return;

  json points = json::array();
  for (const auto& p : curve) points.push_back({{"alpha2", p.alpha2}, {"nu", p.nu}, {"y", p.y}, {"T", p.time}});

  json reports = json::array();
  json nu_checks = json::array();
  std::size_t failures = 0;
  auto add = [&](const SearchScenario& s, const std::string& id) {
    const StatePrep prep = weighted_superposition(s);
    const bool disjoint = pairwise_disjoint(s.info_sets());
    if (classify_confidence(s).kind == Confidence::kBasic) {
      const BoundReport r = disjoint ? check_disjoint(s, prep, id) : check_basic_confidence(s, prep, id);
      failures += r.satisfied ? 0 : 1;
      reports.push_back(to_json(r));
    }
    json nu = to_json(check_nu_bounds(s, prep));
    failures += nu.at("satisfied").get<bool>() ? 0 : 1;
    nu["scenario_id"] = id;
    nu_checks.push_back(std::move(nu));
  };
  if (!config.scenario_path.empty()) add(load(config), config.scenario_path.filename().string());
  if (sw.suite_count > 0) {
    SuiteOptions opt;
    opt.energy = energy;
    for (SuiteMode mode : {SuiteMode::kBasic, SuiteMode::kDisjoint}) {
      const auto suite = random_scenario_suite(seed, sw.suite_count, mode, opt);
      for (std::size_t i = 0; i < suite.size(); ++i) add(suite[i], std::string(to_string(mode)) + "-" + std::to_string(i));
    }
  }
  if (failures > 0) err << "warning: " << failures << " bound check(s) not satisfied\n";

  json doc = run_header(config);
  doc["instance"] = {{"l", sw.l}, {"n1", sw.n1}, {"n2", sw.n2}, {"n12", sw.n12}, {"energy", energy}};
  doc["curve"] = std::move(points);
  doc["bound_reports"] = std::move(reports);
  doc["nu_bounds"] = std::move(nu_checks);
  write_json(config, "sweep.json", doc);
}

void compare(const RunConfig& config, std::ostream& err) {
  const SearchScenario s = load(config);
  warn_renormalized(s, err);
  const ComparisonReport r = compare_structured_unstructured(s);
  if (wants_json(config.format)) {
    json doc = run_header(config);
    doc["report"] = to_json(r);
    write_json(config, "compare.json", doc);
  }
  if (wants_csv(config.format)) {
    auto out = open_output(config, "compare.csv");
    out.precision(17);
    out << "y_structured,y_unstructured,T_structured,T_unstructured,speedup,time_ratio,confidence\n"
        << r.y_structured << ',' << r.y_unstructured << ',' << r.t_structured << ',' << r.t_unstructured << ','
        << r.speedup << ',' << r.time_ratio << ',' << to_string(r.confidence.kind) << '\n';
  }
}

}  // namespace

const char* to_string(Command command) noexcept {
  switch (command) {
    case Command::kSimulate: return "simulate";
    case Command::kVerify: return "verify";
    case Command::kEstimate: return "estimate";
    case Command::kCount: return "count";
    case Command::kSweep: return "sweep";
    case Command::kCompare: return "compare";
  }
  return "unknown";
}

void validate(const RunConfig& config) {
  if (!is_power_of_two(config.m_size)) {
    throw ValidationError("--m-size " + std::to_string(config.m_size) + " must be a power of two, at least 2");
  }
  if (config.n_samples < 1) throw ValidationError("--samples must be at least 1");
  if (config.grid_points < 2) throw ValidationError("--grid-points must be at least 2");
  if (config.energy && !(*config.energy > 0.0 && std::isfinite(*config.energy))) {
    throw ValidationError("--energy must be positive and finite");
  }
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    validate(config);
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw ValidationError("cannot create output directory '" + config.output_dir.string() + "'");

    const std::uint64_t seed = derive_seed(config.seed, to_string(config.command));
    switch (config.command) {
      case Command::kSimulate: simulate(config, seed, err); break;
      case Command::kVerify: verify(config, err); break;
      case Command::kEstimate: estimate(config, seed, err); break;
      case Command::kCount: count(config, seed, err); break;
      case Command::kSweep: sweep(config, seed, err); break;
      case Command::kCompare: compare(config, err); break;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Weighted multi-object quantum search simulator", "qsearch"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags given on the command line win");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig config;
  std::string format = "both";
  double energy = 0.0;

  app.add_option("--scenario", config.scenario_path, "Scenario JSON file");
  app.add_option("--m-size", config.m_size, "Phase register size M (power of two)")->capture_default_str();
  app.add_option("--samples", config.n_samples, "Register readouts or measurement shots")->capture_default_str();
  app.add_option("--seed", config.seed, "Top-level seed")->capture_default_str();
  app.add_option("--out", config.output_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->capture_default_str();
  auto* energy_opt = app.add_option("--energy", energy, "Override the Hamiltonian energy scale E");
  app.add_option("--grid-points", config.grid_points, "verify: time grid size over [0, 2T]")->capture_default_str();

  const std::map<std::string, Command> commands{
      {"simulate", Command::kSimulate}, {"verify", Command::kVerify}, {"estimate", Command::kEstimate},
      {"count", Command::kCount},       {"sweep", Command::kSweep},   {"compare", Command::kCompare}};
  const std::map<std::string, std::string> help{
      {"simulate", "Evolve to the optimal time; trajectory and success distribution"},
      {"verify", "Check the two-dimensional reduction against the full simulator"},
      {"estimate", "Phase-estimate the overlap y"},
      {"count", "Estimate the number of targets"},
      {"sweep", "Misplaced-confidence curve and bound reports"},
      {"compare", "Structured vs unstructured search time"}};
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->callback([&config, cmd = cmd] { config.command = cmd; });
    if (cmd == Command::kSweep) {
      auto& sw = config.sweep;
      sub->add_option("--l", sw.l, "Number of targets")->capture_default_str();
      sub->add_option("--n1", sw.n1, "Size of the set holding the targets")->capture_default_str();
      sub->add_option("--n2", sw.n2, "Size of the misplaced set")->capture_default_str();
      sub->add_option("--n12", sw.n12, "Size of the intersection")->capture_default_str();
      sub->add_option("--alpha-min", sw.alpha_min, "Smallest weight on the misplaced set")->capture_default_str();
      sub->add_option("--alpha-max", sw.alpha_max, "Largest weight on the misplaced set")->capture_default_str();
      sub->add_option("--points", sw.points, "Grid points")->capture_default_str();
      sub->add_option("--suite-count", sw.suite_count, "Random scenarios per bound family")->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  config.format = format == "json" ? OutputFormat::kJson : format == "csv" ? OutputFormat::kCsv : OutputFormat::kBoth;
  if (energy_opt->count() > 0) config.energy = energy;
  return run(config, std::cerr);
}

}  // namespace qsearch::cli
