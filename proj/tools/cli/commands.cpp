#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/config.hpp"
#include "cli/series_io.hpp"

namespace cohdyn::cli {

namespace {

using nlohmann::json;

// Flags shared by every subcommand. Anything set on the command line
// overrides the config file.
struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string form;
  std::optional<double> t_max;
  std::optional<int> points;
  std::optional<std::string> mask;
  std::optional<std::string> state;
  std::optional<double> lambda;
  std::optional<double> delta;
  unsigned threads = 0;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "Experiment config file (key = value)");
    app.add_option("--out", out_path, "Output path (default: stdout)");
    app.add_option("--form", form, "h(t) variant: standard | paper-verbatim");
    app.add_option("--t-max", t_max, "Sweep length in units of 1/gamma0");
    app.add_option("--points", points, "Number of grid points");
    app.add_option("--mask", mask, "Coupled qubits, e.g. 1,2 (or none / all)");
    app.add_option("--state", state, "Named state or amplitude file");
    app.add_option("--lambda", lambda, "Spectral width in units of gamma0");
    app.add_option("--delta", delta, "Detuning in units of gamma0");
    app.add_option("--threads", threads, "Worker threads for sweeps (0: all cores)");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (!form.empty()) c.h_form = parse_hform(form);
    if (t_max) c.t_max = *t_max;
    if (points) c.n_points = *points;
    if (mask) c.mask = parse_mask(*mask);
    if (state) {
      c.state = *state;
      c.base_dir.clear();
    }
    if (lambda) c.lambda = *lambda;
    if (delta) c.delta = *delta;
    return c;
  }
};

std::vector<std::string> output_paths(const CommonFlags& flags, const ExperimentConfig& config) {
  if (!flags.out_path.empty()) return {flags.out_path};
  return config.outputs;
}

// Writes `text` to every path, or to `out` when there are none.
void emit(const std::string& text, const std::vector<std::string>& paths, std::ostream& out) {
  if (paths.empty()) {
    out << text;
    return;
  }
  for (const auto& p : paths) {
    std::ofstream file(p, std::ios::binary);
    if (!file) throw IoError("cannot open output file " + p);
    file << text;
    if (!file) throw IoError("failed writing " + p);
  }
}

void emit_json(const json& j, const std::vector<std::string>& paths, std::ostream& out) {
  emit(j.dump(2) + "\n", paths, out);
}

TimeSeries run_sweep(const ExperimentConfig& config, unsigned threads) {
  const ResolvedState s = resolve_state(config);
  SweepOptions options;
  options.t_max = config.t_max;
  options.n_points = config.n_points;
  options.form = config.h_form;
  options.threads = threads;
  return sweep(s.state, bath_params(config), coupling_mask(config, s.state.n_qubits()), options, s.label);
}

json fit_to_json(Field field, const DecayFit& fit) {
  return json{{"field", field_name(field)},
              {"method", fit_method_name(fit.method)},
              {"rate", fit.rate},
              {"intercept", fit.intercept},
              {"window", {fit.t_lo, fit.t_hi}},
              {"r_squared", fit.r_squared},
              {"n_samples", fit.n_samples}};
}

std::vector<Field> parse_fields(const std::string& text) {
  std::vector<Field> fields;
  std::istringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    const auto f = parse_field(name);
    if (!f) throw ValidationError("unknown field '" + name + "'");
    fields.push_back(*f);
  }
  if (fields.empty()) throw ValidationError("no field selected");
  return fields;
}

// Time axis and one column, either from a fresh sweep or from a CSV written by
// `simulate`.
struct Samples {
  std::vector<double> t;
  std::vector<double> y;
};

Samples samples_from_csv(const SeriesTable& table, Field field) {
  Samples s{table.column("t"), table.column(field_name(field))};
  for (double v : s.y) {
    if (std::isnan(v)) throw ValidationError("CSV column " + std::string(field_name(field)) + " has empty cells");
  }
  return s;
}

SeriesTable load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV input " + path);
  return read_series_csv(in);
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("--window expects 'lo,hi'");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ValidationError("--window expects two numbers 'lo,hi'");
  }
}

json tuple_to_json(const CoherenceTuple& t) {
  return json{{"c1", t.c1},   {"c2", t.c2},   {"c3", t.c3},     {"c12", t.c12},
              {"c13", t.c13}, {"c23", t.c23}, {"c123", t.c123}, {"residual", t.residual}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence dynamics of qubits in Lorentzian amplitude-damping reservoirs", "cohdyn"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* simulate = app.add_subcommand("simulate", "Sweep a state and write the CSV time series");
  flags.attach(*simulate);

  auto* fit = app.add_subcommand("fit", "Fit exponential decay rates to a sweep");
  flags.attach(*fit);
  std::string fit_fields = "C_total";
  std::string fit_method = "semilog";
  std::string fit_window;
  std::string fit_input;
  fit->add_option("--field", fit_fields, "Column(s) to fit, comma separated");
  fit->add_option("--method", fit_method, "semilog | envelope");
  fit->add_option("--window", fit_window, "Semilog window 'lo,hi' (default: whole series)");
  fit->add_option("--input", fit_input, "Fit an existing CSV instead of sweeping");

  auto* revivals = app.add_subcommand("revivals", "Detect coherence death and revival events");
  flags.attach(*revivals);
  std::string revival_field = "C_total";
  double revival_eps = 1e-3;
  std::string revival_input;
  revivals->add_option("--field", revival_field, "Column to scan");
  revivals->add_option("--eps", revival_eps, "Death threshold in bits (revival at 10x)");
  revivals->add_option("--input", revival_input, "Scan an existing CSV instead of sweeping");

  auto* tuple = app.add_subcommand("tuple", "Seven-component coherence distribution");
  flags.attach(*tuple);
  std::string tuple_mode = "direct";
  double tuple_time = 0.0;
  tuple->add_option("--mode", tuple_mode, "direct | probe");
  tuple->add_option("--time", tuple_time, "Evaluate after evolving to this gamma0 t");

  auto* mono = app.add_subcommand("monogamy", "Track the sign of the monogamy of coherence");
  flags.attach(*mono);
  double mono_tol = 1e-6;
  int mono_random = 0;
  std::uint64_t mono_seed = 1;
  mono->add_option("--tol", mono_tol, "|M| below this is sign-neutral");
  mono->add_option("--random-states", mono_random,
                   "Instead of the config state, sweep this many random pure states");
  mono->add_option("--seed", mono_seed, "First seed for --random-states");

  auto* oracle = app.add_subcommand("oracle-check", "Compare closed-form h(t) with the ODE oracle");
  flags.attach(*oracle);

  std::vector<char*> argv;
  std::vector<std::string> storage(args.begin(), args.end());
  if (storage.empty()) storage.emplace_back("cohdyn");
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const ExperimentConfig config = flags.resolve();
    const auto paths = output_paths(flags, config);

    if (simulate->parsed()) {
      const TimeSeries series = run_sweep(config, flags.threads);
      std::ostringstream csv;
      write_series_csv(csv, series);
      emit(csv.str(), paths, out);
    } else if (fit->parsed()) {
      const auto method = parse_fit_method(fit_method);
      if (!method) throw ValidationError("--method must be 'semilog' or 'envelope'");
      const auto fields = parse_fields(fit_fields);
      std::optional<SeriesTable> table;
      std::optional<TimeSeries> series;
      if (!fit_input.empty()) {
        table = load_csv(fit_input);
      } else {
        series = run_sweep(config, flags.threads);
      }
      json fits = json::array();
      for (Field f : fields) {
        Samples s = table ? samples_from_csv(*table, f) : Samples{series->times, series->values(f)};
        DecayFit result;
        if (*method == FitMethod::Envelope) {
          result = fit_envelope(s.t, s.y);
        } else {
          auto [lo, hi] = fit_window.empty() ? std::pair{s.t.front(), s.t.back()} : parse_window(fit_window);
          result = fit_semilog(s.t, s.y, lo, hi);
        }
        fits.push_back(fit_to_json(f, result));
      }
      emit_json(fits.size() == 1 ? fits.front() : json{{"fits", fits}}, paths, out);
    } else if (revivals->parsed()) {
      const auto field = parse_field(revival_field);
      if (!field) throw ValidationError("unknown field '" + revival_field + "'");
      Samples s;
      if (!revival_input.empty()) {
        s = samples_from_csv(load_csv(revival_input), *field);
      } else {
        const TimeSeries series = run_sweep(config, flags.threads);
        s = {series.times, series.values(*field)};
      }
      json events = json::array();
      for (const auto& e : detect_revivals(s.t, s.y, revival_eps)) {
        events.push_back({{"death_time", e.death_time},
                          {"revival_time", e.revival_time},
                          {"peak_after", e.peak_after}});
      }
      emit_json({{"field", field_name(*field)}, {"eps", revival_eps}, {"count", events.size()},
                 {"events", events}},
                paths, out);
    } else if (tuple->parsed()) {
      if (tuple_mode != "direct" && tuple_mode != "probe") {
        throw ValidationError("--mode must be 'direct' or 'probe'");
      }
      const ResolvedState s = resolve_state(config);
      DensityMatrix rho = density_of(s.state);
      Complex h{1.0, 0.0};
      if (tuple_time != 0.0) {
        if (tuple_time < 0.0) throw ValidationError("--time must be >= 0");
        h = h_closed(tuple_time, bath_params(config), config.h_form);
        rho = apply_channels(rho, coupling_mask(config, s.state.n_qubits()), h);
      }
      json j{{"state", s.label}, {"mode", tuple_mode}, {"time", tuple_time}};
      if (tuple_mode == "direct") {
        j.update(tuple_to_json(tuple_direct(rho)));
      } else {
        const ProbeReconstruction rec = reconstruct_from_probes(rho);
        j.update(tuple_to_json(rec.tuple));
        j["observations"] = rec.observations;
      }
      j["total"] = total_coherence(rho);
      emit_json(j, paths, out);
    } else if (mono->parsed()) {
      SweepOptions options{config.t_max, config.n_points, config.h_form, flags.threads};
      const BathParams params = bath_params(config);
      auto summarize = [&](const TimeSeries& series) {
        const auto m = series.values(Field::Monogamy);
        const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
        return json{{"classification", monogamy_sign_name(monogamy_sign(m, mono_tol))},
                    {"m_initial", m.front()},
                    {"m_final", m.back()},
                    {"m_min", *lo},
                    {"m_max", *hi}};
      };
      if (mono_random > 0) {
        json counterexamples = json::array();
        for (int k = 0; k < mono_random; ++k) {
          const std::uint64_t seed = mono_seed + static_cast<std::uint64_t>(k);
          const PureState psi = random_pure_state(3, seed);
          const TimeSeries series = sweep(psi, params, coupling_mask(config, 3), options, "random");
          json summary = summarize(series);
          if (summary["classification"] == "mixed") {
            json amps = json::array();
            for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) amps.push_back({psi[i].real(), psi[i].imag()});
            summary["seed"] = seed;
            summary["amplitudes"] = amps;
            counterexamples.push_back(summary);
          }
        }
        emit_json({{"random_states", mono_random}, {"first_seed", mono_seed}, {"tol", mono_tol},
                   {"lambda", params.lambda}, {"delta", params.delta},
                   {"mixed_count", counterexamples.size()}, {"counterexamples", counterexamples}},
                  paths, out);
      } else {
        const TimeSeries series = run_sweep(config, flags.threads);
        json j = summarize(series);
        j["state"] = series.state_name;
        j["tol"] = mono_tol;
        emit_json(j, paths, out);
      }
    } else if (oracle->parsed()) {
      const BathParams params = bath_params(config);
      if (!(config.t_max > 0.0) || config.n_points < 2) {
        throw ValidationError("oracle-check needs t_max > 0 and n_points >= 2");
      }
      std::vector<double> grid(static_cast<std::size_t>(config.n_points));
      for (std::size_t k = 0; k < grid.size(); ++k) {
        grid[k] = config.t_max * static_cast<double>(k) / static_cast<double>(grid.size() - 1);
      }
      const auto numeric = h_oracle(params, grid);
      double err_standard = 0.0;
      double err_verbatim = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        err_standard = std::max(err_standard, std::abs(numeric[k] - h_closed(grid[k], params, HForm::Standard)));
        err_verbatim = std::max(err_verbatim, std::abs(numeric[k] - h_closed(grid[k], params, HForm::PaperVerbatim)));
      }
      emit_json({{"lambda", params.lambda}, {"delta", params.delta}, {"gamma0", params.gamma0},
                 {"t_max", config.t_max}, {"n_points", config.n_points},
                 {"regime", regime_name(regime(params))},
                 {"max_abs_err_standard", err_standard}, {"max_abs_err_verbatim", err_verbatim}},
                paths, out);
    }
  } catch (const IoError& e) {
    err << "cohdyn: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "cohdyn: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ModelViolation& e) {
    err << "cohdyn: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "cohdyn: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace cohdyn::cli
