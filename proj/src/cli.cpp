#include "zenosq/scan.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>

namespace zenosq {

namespace {

constexpr double kPi = std::numbers::pi;

AxisSpec default_axis(const std::string& name) {
  if (name == "theta" || name == "alpha" || name == "delta") {
    return {name, 0.0, kPi, 101};
  }
  if (name == "phi") {
    return {name, 0.0, 2.0 * kPi, 201};
  }
  if (name == "beta" || name == "chi") {
    return {name, -kPi / 2.0, 3.0 * kPi / 2.0, 201};
  }
  throw std::invalid_argument("unknown axis name: " + name);
}

std::string axis_partner(const std::string& name) {
  if (name == "theta") return "phi";
  if (name == "phi") return "theta";
  if (name == "alpha") return "beta";
  if (name == "beta") return "alpha";
  if (name == "delta") return "chi";
  if (name == "chi") return "delta";
  throw std::invalid_argument("unknown axis name: " + name);
}

// --grid syntax: name:lo:hi:count
AxisSpec parse_axis(const std::string& text) {
  AxisSpec axis;
  size_t pos = 0;
  std::array<std::string, 4> parts;
  for (int k = 0; k < 4; ++k) {
    const size_t next = text.find(':', pos);
    if (k < 3 && next == std::string::npos) {
      throw std::invalid_argument("bad --grid value '" + text +
                                  "', expected name:lo:hi:count");
    }
    parts[k] = text.substr(pos, next == std::string::npos ? next : next - pos);
    pos = next + 1;
    if (k == 3 && next != std::string::npos) {
      throw std::invalid_argument("bad --grid value '" + text +
                                  "', expected name:lo:hi:count");
    }
  }
  axis.name = parts[0];
  try {
    size_t used = 0;
    axis.lo = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    axis.hi = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    axis.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad --grid value '" + text +
                                "', expected name:lo:hi:count");
  }
  return axis;
}

SweepMode mode_from_string_or_throw(const std::string& name) {
  if (name == "selective") return SweepMode::selective;
  if (name == "nonselective") return SweepMode::nonselective;
  if (name == "analytic_selective") return SweepMode::analytic_selective;
  if (name == "analytic_nonselective") return SweepMode::analytic_nonselective;
  if (name == "analytic_stationary") return SweepMode::analytic_stationary;
  throw std::invalid_argument("unknown --mode: " + name);
}

// Accepts both dash and underscore spellings of the analytic modes.
SweepMode parse_mode(std::string name) {
  for (char& c : name) {
    if (c == '-') c = '_';
  }
  return mode_from_string_or_throw(name);
}

int resolve_jobs(int jobs_flag) {
  if (jobs_flag > 0) return jobs_flag;
  if (jobs_flag < 0) {
    throw std::invalid_argument("--jobs must be positive");
  }
  const char* env = std::getenv("ZENO_SIM_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long parsed = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || parsed < 1 || parsed > 1024) {
    throw std::invalid_argument(std::string("invalid ZENO_SIM_JOBS value: ") +
                                env);
  }
  return static_cast<int>(parsed);
}

EmitFormat parse_format(const std::string& name) {
  if (name == "csv") return EmitFormat::csv;
  if (name == "json") return EmitFormat::json;
  if (name == "gnuplot") return EmitFormat::gnuplot_script;
  throw std::invalid_argument("unknown --format: " + name +
                              " (expected csv, json, or gnuplot)");
}

struct ScanOptions {
  double big_n = 1.0;
  double eta = 0.0;
  double gamma = 1.0;
  double total_time = 10.0;
  long n = 1000;
  std::string mode = "nonselective";
  int initial_index = 0;
  int jobs = 0;
  std::string output;
  std::string format = "csv";
  std::vector<std::string> grids;
};

void add_bath_options(CLI::App* cmd, ScanOptions& opts) {
  cmd->add_option("--big-n", opts.big_n, "squeezing photon number N")
      ->capture_default_str();
  cmd->add_option("--eta", opts.eta, "squeezing phase (radians)")
      ->capture_default_str();
  cmd->add_option("--gamma", opts.gamma, "decay rate")
      ->capture_default_str();
}

void add_schedule_options(CLI::App* cmd, ScanOptions& opts) {
  cmd->add_option("--total-time", opts.total_time,
                  "gamma-scaled duration (gamma t)")
      ->capture_default_str();
  cmd->add_option("--n", opts.n, "number of measurements")
      ->capture_default_str();
  cmd->add_option("--mode", opts.mode,
                  "selective | nonselective | analytic-selective | "
                  "analytic-nonselective | analytic-stationary")
      ->capture_default_str();
}

void add_scan_options(CLI::App* cmd, ScanOptions& opts) {
  add_bath_options(cmd, opts);
  add_schedule_options(cmd, opts);
  cmd->add_option("--grid", opts.grids,
                  "swept axis as name:lo:hi:count (repeat for the second "
                  "axis; defaults cover the full angle ranges)");
  cmd->add_option("--initial-index", opts.initial_index,
                  "index of the initial basis state")
      ->capture_default_str();
  cmd->add_option("--output", opts.output,
                  "output file (default: stdout; required for gnuplot)");
  cmd->add_option("--format", opts.format, "csv | json | gnuplot")
      ->capture_default_str();
  cmd->add_option("--jobs", opts.jobs,
                  "worker threads (default: ZENO_SIM_JOBS or 1)");
}

SweepSpec build_scan_spec(const ScanOptions& opts, System system,
                          const std::map<std::string, double>& fixed_flags) {
  SweepSpec spec;
  spec.system = system;
  spec.mode = parse_mode(opts.mode);
  spec.bath = BathParams{opts.gamma, opts.big_n, opts.eta};
  spec.schedule =
      ZenoSchedule{opts.total_time, opts.n,
                   spec.mode == SweepMode::selective ? Mode::selective
                                                     : Mode::nonselective};
  spec.initial_index = opts.initial_index;

  if (opts.grids.size() > 2) {
    throw std::invalid_argument("--grid may be given at most twice");
  }
  if (opts.grids.empty()) {
    const std::string first = system == System::one_qubit ? "theta" : "alpha";
    spec.axes = {default_axis(first), default_axis(axis_partner(first))};
  } else if (opts.grids.size() == 1) {
    const AxisSpec axis = parse_axis(opts.grids[0]);
    spec.axes = {axis, default_axis(axis_partner(axis.name))};
  } else {
    spec.axes = {parse_axis(opts.grids[0]), parse_axis(opts.grids[1])};
  }

  if (system == System::two_qubit) {
    // Unswept angles fall back to the figure conventions alpha = delta = pi/2,
    // beta = chi = 0; explicit flags override, and flagging a swept angle is
    // rejected by SweepSpec::validate.
    const std::map<std::string, double> defaults{
        {"alpha", kPi / 2.0}, {"beta", 0.0}, {"delta", kPi / 2.0}, {"chi", 0.0}};
    for (const auto& [name, fallback] : defaults) {
      const bool swept =
          spec.axes[0].name == name || spec.axes[1].name == name;
      const auto flagged = fixed_flags.find(name);
      if (flagged != fixed_flags.end()) {
        spec.fixed[name] = flagged->second;
      } else if (!swept) {
        spec.fixed[name] = fallback;
      }
    }
  }
  return spec;
}

void emit_result(const GridResult& result, const ScanOptions& opts) {
  const EmitFormat format = parse_format(opts.format);
  if (opts.output.empty()) {
    if (format == EmitFormat::gnuplot_script) {
      throw std::invalid_argument("--format gnuplot requires --output");
    }
    std::cout << (format == EmitFormat::csv ? to_csv(result)
                                            : to_json(result));
    return;
  }
  emit(result, format, opts.output);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Zeno dynamics of one or two qubits in a broadband squeezed "
               "vacuum reservoir: survival-probability maps, point queries, "
               "Zeno/anti-Zeno directions, and decoherence-free states"};
  app.require_subcommand(1);

  ScanOptions scan1q_opts, scan2q_opts, point_opts;
  std::map<std::string, double> scan2q_fixed;
  double point_theta = 0.0, point_phi = 0.0;
  double point_alpha = kPi / 2.0, point_beta = 0.0;
  double point_delta = kPi / 2.0, point_chi = 0.0;

  CLI::App* scan1q = app.add_subcommand(
      "scan1q", "sweep the single-qubit measurement direction (theta, phi)");
  add_scan_options(scan1q, scan1q_opts);

  CLI::App* scan2q = app.add_subcommand(
      "scan2q", "sweep two of the two-qubit basis angles (alpha, beta, delta, chi)");
  add_scan_options(scan2q, scan2q_opts);
  std::map<std::string, double> scan2q_flag_values{
      {"alpha", 0.0}, {"beta", 0.0}, {"delta", 0.0}, {"chi", 0.0}};
  std::map<std::string, CLI::Option*> scan2q_flag_opts;
  for (auto& [name, value] : scan2q_flag_values) {
    scan2q_flag_opts[name] = scan2q->add_option(
        "--" + name, value, "fixed value of " + name + " when not swept");
  }

  CLI::App* point = app.add_subcommand(
      "point", "survival probability at a single measurement configuration");
  add_bath_options(point, point_opts);
  add_schedule_options(point, point_opts);
  point->add_option("--initial-index", point_opts.initial_index,
                    "index of the initial basis state")
      ->capture_default_str();
  CLI::Option* theta_opt = point->add_option("--theta", point_theta,
                                             "single-qubit polar angle");
  CLI::Option* phi_opt = point->add_option("--phi", point_phi,
                                           "single-qubit azimuthal angle");
  CLI::Option* alpha_opt =
      point->add_option("--alpha", point_alpha, "two-qubit angle alpha");
  CLI::Option* beta_opt =
      point->add_option("--beta", point_beta, "two-qubit angle beta");
  CLI::Option* delta_opt =
      point->add_option("--delta", point_delta, "two-qubit angle delta");
  CLI::Option* chi_opt =
      point->add_option("--chi", point_chi, "two-qubit angle chi");

  ScanOptions zeno_opts, dfzs_opts;
  CLI::App* zeno_cmd = app.add_subcommand(
      "zeno-points", "the two Zeno and two anti-Zeno measurement directions");
  add_bath_options(zeno_cmd, zeno_opts);
  CLI::App* dfzs_cmd = app.add_subcommand(
      "dfzs", "the two decoherence-free states of the collective bath");
  add_bath_options(dfzs_cmd, dfzs_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(scan1q)) {
      const SweepSpec spec = build_scan_spec(scan1q_opts, System::one_qubit, {});
      const GridResult result =
          run_sweep(spec, resolve_jobs(scan1q_opts.jobs));
      emit_result(result, scan1q_opts);
      return 0;
    }
    if (app.got_subcommand(scan2q)) {
      for (const auto& [name, opt] : scan2q_flag_opts) {
        if (opt->count() > 0) {
          scan2q_fixed[name] = scan2q_flag_values[name];
        }
      }
      const SweepSpec spec =
          build_scan_spec(scan2q_opts, System::two_qubit, scan2q_fixed);
      const GridResult result =
          run_sweep(spec, resolve_jobs(scan2q_opts.jobs));
      emit_result(result, scan2q_opts);
      return 0;
    }
    if (app.got_subcommand(point)) {
      const bool has_1q = theta_opt->count() > 0 || phi_opt->count() > 0;
      const bool has_2q = alpha_opt->count() > 0 || beta_opt->count() > 0 ||
                          delta_opt->count() > 0 || chi_opt->count() > 0;
      if (has_1q == has_2q) {
        throw std::invalid_argument(
            "point needs either single-qubit angles (--theta/--phi) or "
            "two-qubit angles (--alpha/--beta/--delta/--chi), not both");
      }
      // A degenerate 2-sample sweep reuses the exact sweep evaluation path.
      SweepSpec spec;
      spec.system = has_1q ? System::one_qubit : System::two_qubit;
      spec.mode = parse_mode(point_opts.mode);
      spec.bath = BathParams{point_opts.gamma, point_opts.big_n, point_opts.eta};
      spec.schedule =
          ZenoSchedule{point_opts.total_time, point_opts.n,
                       spec.mode == SweepMode::selective ? Mode::selective
                                                         : Mode::nonselective};
      spec.initial_index = point_opts.initial_index;
      if (has_1q) {
        spec.axes = {AxisSpec{"theta", point_theta, point_theta, 2},
                     AxisSpec{"phi", point_phi, point_phi, 2}};
      } else {
        spec.axes = {AxisSpec{"alpha", point_alpha, point_alpha, 2},
                     AxisSpec{"beta", point_beta, point_beta, 2}};
        spec.fixed = {{"delta", point_delta}, {"chi", point_chi}};
      }
      const GridResult result = run_sweep(spec, 1);
      std::printf("%.17g\n", std::min(1.0, std::max(0.0, result.values[0])));
      return 0;
    }
    if (app.got_subcommand(zeno_cmd)) {
      const BathParams params{zeno_opts.gamma, zeno_opts.big_n, zeno_opts.eta};
      for (const ZenoPoint& p : zeno_points(params)) {
        std::printf("%-9s theta=%.17g phi=%.17g\n",
                    p.kind == ZenoPoint::Kind::zeno ? "zeno" : "anti-zeno",
                    p.theta_z, p.phi_z);
      }
      return 0;
    }
    if (app.got_subcommand(dfzs_cmd)) {
      const BathParams params{dfzs_opts.gamma, dfzs_opts.big_n, dfzs_opts.eta};
      const auto [pair_state, singlet] = dfzs_states(params);
      const auto print_state = [](const char* label, const PureState& psi) {
        std::printf("%s", label);
        static const char* kets[4] = {"|00>", "|01>", "|10>", "|11>"};
        for (int i = 0; i < 4; ++i) {
          const Complex a = psi.amplitudes()(i);
          std::printf(" %s (%.17g%+.17gi)", kets[i], a.real(), a.imag());
        }
        std::printf("\n");
      };
      print_state("dark_pair   ", pair_state);
      print_state("dark_singlet", singlet);
      return 0;
    }
    throw std::logic_error("no subcommand dispatched");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace zenosq
