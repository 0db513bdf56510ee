#include "fidsim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fidsim/closed_form.hpp"
#include "fidsim/dense.hpp"
#include "fidsim/free_fermion.hpp"

namespace fidsim::cli {

namespace {

using nlohmann::json;

const char* command_name(Command c) {
  switch (c) {
    case Command::analytic: return "analytic";
    case Command::fermion: return "fermion";
    case Command::oracle: return "oracle";
    case Command::thermal: return "thermal";
    case Command::compare: return "compare";
    case Command::moments: return "moments";
    case Command::fit: return "fit";
  }
  return "?";
}

// Column table plus provenance metadata, renderable as CSV or JSON.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta_text;
  json meta_json = json::object();
  std::vector<std::pair<std::string, const std::vector<double>*>> columns;

  void add_meta(const std::string& key, const std::string& value) {
    meta_text.emplace_back(key, value);
    meta_json[key] = value;
  }
  void add_meta(const std::string& key, double value) {
    meta_text.emplace_back(key, format_g17(value));
    meta_json[key] = value;
  }
  void add_meta(const std::string& key, int value) {
    meta_text.emplace_back(key, std::to_string(value));
    meta_json[key] = value;
  }
};

std::string render_csv(const Table& table) {
  std::ostringstream out;
  out << "# fidsim " << kVersion << "\n";
  for (const auto& [key, value] : table.meta_text) out << "# " << key << "=" << value << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c].first;
  out << "\n";
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().second->size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << (c ? "," : "") << format_g17((*table.columns[c].second)[r]);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const Table& table) {
  json j;
  j["meta"] = table.meta_json;
  j["meta"]["tool"] = "fidsim";
  j["meta"]["version"] = kVersion;
  for (const auto& [name, values] : table.columns) j[name] = *values;
  return j.dump(2) + "\n";
}

void write_artifact(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file: " + path);
  file << payload;
  file.flush();
  if (!file) throw IoError("failed writing output file: " + path);
}

void add_chain_meta(Table& table, const RunConfig& config) {
  table.add_meta("command", command_name(config.command));
  table.add_meta("n_spins", config.n_spins);
  table.add_meta("coupling_per_s", config.coupling);
}

void add_grid_meta(Table& table, const RunConfig& config) {
  table.add_meta("t_max_s", config.t_max);
  table.add_meta("points", config.points);
}

void emit_table(const RunConfig& config, const Table& table) {
  const std::string payload =
      config.format == OutputFormat::csv ? render_csv(table) : render_json(table);
  write_artifact(config.out_path, payload);
}

void emit_series(const RunConfig& config, const FidSeries& series, Table table) {
  table.add_meta("normalization", series.normalization == Normalization::raw
                                      ? "raw"
                                      : "unit_at_zero");
  table.add_meta("amplitude_at_zero", series.amplitude_at_zero);
  table.columns = {{"t", &series.times}, {"value", &series.values}};
  emit_table(config, table);
}

void run_analytic(const RunConfig& config) {
  const ChainSpec chain = make_chain(config.n_spins, config.coupling);
  const TimeGrid grid = grid_from_span(config.t_max, config.points);
  Table table;
  add_chain_meta(table, config);
  add_grid_meta(table, config);
  emit_series(config, fid_infinite(chain, grid), std::move(table));
}

void run_fermion(const RunConfig& config) {
  const ChainSpec chain = make_chain(config.n_spins, config.coupling);
  const TimeGrid grid = grid_from_span(config.t_max, config.points);
  Table table;
  add_chain_meta(table, config);
  add_grid_meta(table, config);
  const FidSeries series =
      config.raw ? fid_free_fermion_raw(chain, grid) : fid_free_fermion(chain, grid);
  emit_series(config, series, std::move(table));
}

void run_oracle(const RunConfig& config) {
  const ChainSpec chain = make_chain(config.n_spins, config.coupling);
  const TimeGrid grid = grid_from_span(config.t_max, config.points);
  Table table;
  add_chain_meta(table, config);
  add_grid_meta(table, config);
  FidSeries series = fid_oracle(chain, grid);
  if (!config.raw) series = normalized(std::move(series));
  emit_series(config, series, std::move(table));
}

void run_thermal(const RunConfig& config) {
  const ChainSpec chain = make_chain(config.n_spins, config.coupling);
  const TimeGrid grid = grid_from_span(config.t_max, config.points);
  if (!config.beta) throw ValidationError("beta", "thermal requires --beta or --larmor with --temperature");
  const ThermalSpec thermal(*config.beta);
  Table table;
  add_chain_meta(table, config);
  add_grid_meta(table, config);
  table.add_meta("beta", thermal.beta());
  table.add_meta("closed_form_amplitude", thermal_amplitude(chain, thermal));
  FidSeries series = thermal_fid_oracle(chain, thermal, grid);
  if (!config.raw) series = normalized(std::move(series));
  emit_series(config, series, std::move(table));
}

void run_compare(const RunConfig& config) {
  const ChainSpec chain = make_chain(config.n_spins, config.coupling);
  const TimeGrid grid = grid_from_span(config.t_max, config.points);

  const FidSeries oracle = normalized(fid_oracle(chain, grid));
  const FidSeries fermion = fid_free_fermion(chain, grid);
  const FidSeries closed =
      fid_closed_finite_normalized(chain, grid, ClosedFormVariant::cosine_closed);
  const FidSeries j0 = fid_infinite(chain, grid);

  auto max_abs_diff = [&](const FidSeries& other) {
    double worst = 0.0;
    for (std::size_t i = 0; i < oracle.values.size(); ++i)
      worst = std::max(worst, std::abs(oracle.values[i] - other.values[i]));
    return worst;
  };

  Table table;
  add_chain_meta(table, config);
  add_grid_meta(table, config);
  table.add_meta("max_abs_diff_fermion", max_abs_diff(fermion));
  table.add_meta("max_abs_diff_closed_finite", max_abs_diff(closed));
  table.add_meta("max_abs_diff_j0", max_abs_diff(j0));
  table.columns = {{"t", &oracle.times},
                   {"oracle", &oracle.values},
                   {"fermion", &fermion.values},
                   {"closed_finite", &closed.values},
                   {"j0", &j0.values}};
  emit_table(config, table);
}

void run_moments(const RunConfig& config) {
  const ChainSpec chain = make_chain(config.n_spins, config.coupling);
  const SecondMoment moment = second_moment(chain);

  if (config.format == OutputFormat::csv) {
    std::ostringstream out;
    out << "# fidsim " << kVersion << "\n";
    out << "# command=moments\n";
    out << "# n_spins=" << config.n_spins << "\n";
    out << "# coupling_per_s=" << format_g17(config.coupling) << "\n";
    out << "# m2_finite_n: derived, oracle-checked\n";
    out << "name,value\n";
    out << "m2_thermodynamic," << format_g17(moment.thermodynamic) << "\n";
    out << "m2_finite_n," << format_g17(moment.finite_n) << "\n";
    write_artifact(config.out_path, out.str());
    return;
  }
  json j;
  j["meta"] = {{"tool", "fidsim"},
               {"version", kVersion},
               {"command", "moments"},
               {"n_spins", config.n_spins},
               {"coupling_per_s", config.coupling}};
  j["m2_thermodynamic"] = moment.thermodynamic;
  j["m2_finite_n"] = moment.finite_n;
  j["m2_finite_n_provenance"] = "derived, oracle-checked";
  write_artifact(config.out_path, j.dump(2) + "\n");
}

std::vector<ExperimentRecord> synthesize_records(const RunConfig& config) {
  static constexpr double kTausMicroseconds[] = {0.8, 0.82, 0.84, 0.88, 1.0};
  static constexpr int kMaxCycles = 64;
  if (!(config.true_d > 0.0)) throw ValidationError("true_d", "must be > 0");
  if (config.noise_sigma < 0.0) throw ValidationError("noise_sigma", "must be >= 0");

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<ExperimentRecord> records;
  records.reserve(std::size(kTausMicroseconds) * kMaxCycles);
  for (const double tau_us : kTausMicroseconds) {
    const double tau = tau_us * 1e-6;
    for (int cycles = 1; cycles <= kMaxCycles; ++cycles) {
      const double t = cycles * config.cycle.cycle_duration_in_tau * tau;
      const double clean = config.amplitude * bessel_j(0, 2.0 * config.true_d * t);
      const double value = clean + config.noise_sigma * config.amplitude * gauss(rng);
      records.push_back(ExperimentRecord{tau, cycles, value});
    }
  }
  return records;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records,
                           const RunConfig& config) {
  std::ostringstream out;
  out << "# fidsim " << kVersion << "\n";
  out << "# synthetic multi-pulse intensity data\n";
  out << "# true_d_per_s=" << format_g17(config.true_d)
      << " amplitude=" << format_g17(config.amplitude)
      << " noise_sigma=" << format_g17(config.noise_sigma) << " seed=" << config.seed
      << "\n";
  out << "# cycle_duration_in_tau=" << format_g17(config.cycle.cycle_duration_in_tau) << "\n";
  out << "tau_us,cycles,intensity\n";
  for (const ExperimentRecord& r : records)
    out << format_g17(r.tau * 1e6) << "," << r.cycles << "," << format_g17(r.intensity)
        << "\n";
  return out.str();
}

void run_fit(const RunConfig& config) {
  if (config.format == OutputFormat::csv)
    throw ValidationError("output", "fit emits json only");
  const PulseCycleSpec cycle =
      make_cycle_spec(config.cycle.pulses_per_cycle, config.cycle.cycle_duration_in_tau);

  std::vector<ExperimentRecord> records;
  std::string source;
  if (config.synthetic) {
    if (!config.input_path.empty())
      throw ValidationError("input", "pass either a data CSV path or --synthetic, not both");
    records = synthesize_records(config);
    source = "synthetic";
  } else {
    if (config.input_path.empty())
      throw ValidationError("input", "pass a data CSV path or --synthetic");
    std::ifstream file(config.input_path, std::ios::binary);
    if (!file) throw IoError("cannot open input file: " + config.input_path);
    records = ingest_records(file);
    source = config.input_path;
  }
  if (!config.emit_data_path.empty())
    write_artifact(config.emit_data_path, records_to_csv(records, config));

  const std::vector<TimedPoint> points = map_time(records, cycle);
  const FitResult result = fit_fid(points, config.d_min, config.d_max);

  json j;
  j["meta"] = {{"tool", "fidsim"},
               {"version", kVersion},
               {"command", "fit"},
               {"source", source},
               {"pulses_per_cycle", cycle.pulses_per_cycle},
               {"cycle_duration_in_tau", cycle.cycle_duration_in_tau}};
  if (config.synthetic) {
    j["meta"]["true_d_per_s"] = config.true_d;
    j["meta"]["noise_sigma"] = config.noise_sigma;
    j["meta"]["seed"] = config.seed;
  }
  j["d_per_s"] = result.d_estimate;
  j["amplitude"] = result.amplitude;
  j["rms_residual"] = result.rms_residual;
  j["n_points"] = result.n_points;
  j["search_lo"] = result.d_search_lo;
  j["search_hi"] = result.d_search_hi;
  write_artifact(config.out_path, j.dump(2) + "\n");
}

int report_error(std::ostream& err, int exit_code, const std::string& type,
                 const std::string& field, const std::string& message) {
  json j;
  j["error"] = {{"exit_code", exit_code}, {"type", type}, {"message", message}};
  if (!field.empty()) j["error"]["field"] = field;
  err << j.dump() << "\n";
  return exit_code;
}

}  // namespace

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void dispatch(const RunConfig& config) {
  switch (config.command) {
    case Command::analytic: run_analytic(config); return;
    case Command::fermion: run_fermion(config); return;
    case Command::oracle: run_oracle(config); return;
    case Command::thermal: run_thermal(config); return;
    case Command::compare: run_compare(config); return;
    case Command::moments: run_moments(config); return;
    case Command::fit: run_fit(config); return;
  }
  throw ValidationError("command", "unknown command");
}

int run(const std::vector<std::string>& args, std::ostream& err) {
  RunConfig config;
  CLI::App app{"FID engines for a dipolar-coupled spin-1/2 chain", "fid"};
  app.require_subcommand(1);

  std::string format;
  double larmor = 0.0, temperature = 0.0;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", format, "output format (default csv; json for moments and fit)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.out_path, "output path (default stdout)");
  };
  auto add_chain = [&](CLI::App* sub, bool n_required) {
    auto* n = sub->add_option("--n-spins", config.n_spins, "number of spins N");
    if (n_required) n->required();
    sub->add_option("--coupling", config.coupling, "coupling D in rad/s")->required();
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--t-max", config.t_max, "last sample time in seconds")->required();
    sub->add_option("--points", config.points, "number of samples from t = 0");
  };

  CLI::App* analytic = app.add_subcommand("analytic", "J_0(2Dt) FID (N -> infinity limit)");
  add_chain(analytic, false);
  add_grid(analytic);
  add_output(analytic);

  CLI::App* fermion = app.add_subcommand("fermion", "exact finite-N FID via the fermionic mode sum");
  add_chain(fermion, true);
  add_grid(fermion);
  fermion->add_flag("--raw", config.raw, "emit the unnormalized series");
  add_output(fermion);

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force dense FID (N <= 12)");
  add_chain(oracle, true);
  add_grid(oracle);
  oracle->add_flag("--raw", config.raw, "emit the unnormalized series");
  add_output(oracle);

  CLI::App* thermal = app.add_subcommand("thermal", "dense thermal-equilibrium FID (N <= 12)");
  add_chain(thermal, true);
  add_grid(thermal);
  thermal->add_flag("--raw", config.raw, "emit the unnormalized series");
  auto* beta_opt = thermal->add_option("--beta", "inverse-temperature parameter");
  thermal->add_option("--larmor", larmor, "Larmor frequency in rad/s");
  thermal->add_option("--temperature", temperature, "temperature in K");
  add_output(thermal);

  CLI::App* compare = app.add_subcommand("compare", "all engines side by side (N <= 12)");
  add_chain(compare, true);
  add_grid(compare);
  add_output(compare);

  CLI::App* moments = app.add_subcommand("moments", "second moment of the line shape");
  add_chain(moments, true);
  add_output(moments);

  CLI::App* fit = app.add_subcommand("fit", "fit A J_0(2Dt) to multi-pulse intensity data");
  fit->add_option("input", config.input_path, "CSV with header tau_us,cycles,intensity");
  fit->add_option("--d-min", config.d_min, "search interval lower end, rad/s")->required();
  fit->add_option("--d-max", config.d_max, "search interval upper end, rad/s")->required();
  fit->add_option("--cycle-multiplier", config.cycle.cycle_duration_in_tau,
                  "cycle duration as a multiple of tau");
  fit->add_option("--pulses-per-cycle", config.cycle.pulses_per_cycle, "pulses in one cycle");
  fit->add_flag("--synthetic", config.synthetic, "generate the dataset instead of reading one");
  fit->add_option("--true-d", config.true_d, "synthetic: true D in rad/s");
  fit->add_option("--amplitude", config.amplitude, "synthetic: signal amplitude");
  fit->add_option("--noise-sigma", config.noise_sigma,
                  "synthetic: Gaussian noise level as a fraction of the amplitude");
  fit->add_option("--seed", config.seed, "synthetic: RNG seed");
  fit->add_option("--emit-data", config.emit_data_path, "also write the ingested/generated CSV here");
  add_output(fit);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("fid");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (app.got_subcommand(analytic)) config.command = Command::analytic;
    else if (app.got_subcommand(fermion)) config.command = Command::fermion;
    else if (app.got_subcommand(oracle)) config.command = Command::oracle;
    else if (app.got_subcommand(thermal)) config.command = Command::thermal;
    else if (app.got_subcommand(compare)) config.command = Command::compare;
    else if (app.got_subcommand(moments)) config.command = Command::moments;
    else config.command = Command::fit;

    if (format.empty())
      format = (config.command == Command::moments || config.command == Command::fit)
                   ? "json"
                   : "csv";
    config.format = (format == "json") ? OutputFormat::json : OutputFormat::csv;

    if (config.command == Command::thermal) {
      if (beta_opt->count() > 0) {
        config.beta = beta_opt->as<double>();
      } else if (thermal->count("--larmor") > 0 || thermal->count("--temperature") > 0) {
        if (thermal->count("--larmor") == 0 || thermal->count("--temperature") == 0)
          throw ValidationError("beta", "--larmor and --temperature must be given together");
        config.beta = beta_from_physical(larmor, temperature).beta();
      } else {
        throw ValidationError("beta", "thermal requires --beta or --larmor with --temperature");
      }
    }

    dispatch(config);
    return 0;
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return report_error(err, 2, "validation", "", e.what());
  } catch (const ValidationError& e) {
    return report_error(err, 2, "validation", e.field(), e.what());
  } catch (const ComputeGuardError& e) {
    return report_error(err, 3, "compute_guard", "", e.what());
  } catch (const IoError& e) {
    return report_error(err, 4, "io", "", e.what());
  } catch (const std::exception& e) {
    return report_error(err, 1, "internal", "", e.what());
  }
}

int run(int argc, const char* const* argv, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, err);
}

}  // namespace fidsim::cli
