#include "zenosq/scan.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <thread>

#ifndef ZENOSQ_VERSION
#define ZENOSQ_VERSION "0.0.0"
#endif

namespace zenosq {

namespace {

constexpr double kPi = std::numbers::pi;

const std::set<std::string>& axis_names(System system) {
  static const std::set<std::string> one{"theta", "phi"};
  static const std::set<std::string> two{"alpha", "beta", "delta", "chi"};
  return system == System::one_qubit ? one : two;
}

std::string system_name(System system) {
  return system == System::one_qubit ? "one_qubit" : "two_qubit";
}

std::string mode_name(SweepMode mode) {
  switch (mode) {
    case SweepMode::selective: return "selective";
    case SweepMode::nonselective: return "nonselective";
    case SweepMode::analytic_selective: return "analytic_selective";
    case SweepMode::analytic_nonselective: return "analytic_nonselective";
    case SweepMode::analytic_stationary: return "analytic_stationary";
  }
  throw std::logic_error("unreachable sweep mode");
}

System system_from_name(const std::string& name) {
  if (name == "one_qubit") return System::one_qubit;
  if (name == "two_qubit") return System::two_qubit;
  throw std::invalid_argument("unknown system name: " + name);
}

SweepMode mode_from_name(const std::string& name) {
  if (name == "selective") return SweepMode::selective;
  if (name == "nonselective") return SweepMode::nonselective;
  if (name == "analytic_selective") return SweepMode::analytic_selective;
  if (name == "analytic_nonselective") return SweepMode::analytic_nonselective;
  if (name == "analytic_stationary") return SweepMode::analytic_stationary;
  throw std::invalid_argument("unknown sweep mode: " + name);
}

bool is_numeric(SweepMode mode) {
  return mode == SweepMode::selective || mode == SweepMode::nonselective;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// All four two-qubit angles for one grid node, swept values merged over the
// fixed ones.
struct AngleSet {
  std::map<std::string, double> values;
  double at(const std::string& name) const { return values.at(name); }
};

AngleSet angles_at(const SweepSpec& spec, int i, int j) {
  AngleSet a;
  a.values = spec.fixed;
  a.values[spec.axes[0].name] = spec.axes[0].value(i);
  a.values[spec.axes[1].name] = spec.axes[1].value(j);
  return a;
}

// The survival functions are defined for the first basis state; other initial
// indices are handled by the angle substitution that maps basis state k onto
// the first state of a shifted basis (psi2(theta, phi) = psi1(pi - theta,
// pi + phi); Psi2(alpha, beta) = Psi1(alpha + pi, beta), likewise Psi4/Psi3).
double analytic_value(const SweepSpec& spec, const AngleSet& a) {
  const double t = spec.schedule.total_time;
  if (spec.system == System::one_qubit) {
    double theta = a.at("theta");
    double phi = a.at("phi");
    if (spec.initial_index == 1) {
      theta = kPi - theta;
      phi = kPi + phi;
    }
    const BlochDirection dir{theta, phi};
    switch (spec.mode) {
      case SweepMode::analytic_selective:
        return survival_selective_limit(spec.bath, dir, t);
      case SweepMode::analytic_nonselective:
        return survival_nonselective_limit(spec.bath, dir, t);
      case SweepMode::analytic_stationary:
        return survival_nonselective_stationary(spec.bath, dir);
      default:
        throw std::logic_error("analytic_value called for a numeric mode");
    }
  }
  // Two qubits: only the selective Zeno limit e^{Q t} has a closed form.
  double q = 0.0;
  switch (spec.initial_index) {
    case 0: q = q1(spec.bath, a.at("alpha"), a.at("beta")); break;
    case 1: q = q1(spec.bath, a.at("alpha") + kPi, a.at("beta")); break;
    case 2: q = q3(spec.bath, a.at("delta"), a.at("chi")); break;
    case 3: q = q3(spec.bath, a.at("delta") + kPi, a.at("chi")); break;
    default: throw std::logic_error("initial index checked in validate");
  }
  return std::exp(q / spec.bath.gamma * t);
}

double numeric_value(const SweepSpec& spec, const Matrix& propagator,
                     const AngleSet& a) {
  MeasurementBasis basis =
      spec.system == System::one_qubit
          ? bloch_basis(BlochDirection{a.at("theta"), a.at("phi")})
          : two_qubit_basis(TwoQubitBasisParams{a.at("alpha"), a.at("beta"),
                                                a.at("delta"), a.at("chi")});
  if (spec.mode == SweepMode::selective) {
    return survival_selective(propagator, basis, spec.initial_index,
                              spec.schedule)
        .probability;
  }
  return survival_nonselective(propagator, basis, spec.initial_index,
                               spec.schedule)
      .probability;
}

}  // namespace

void SweepSpec::validate() const {
  bath.validate();
  schedule.validate();
  const auto& known = axis_names(system);
  if (axes[0].name == axes[1].name) {
    throw std::invalid_argument("the two swept axes must differ");
  }
  std::set<std::string> covered;
  for (const AxisSpec& axis : axes) {
    if (!known.count(axis.name)) {
      throw std::invalid_argument("unknown axis name '" + axis.name +
                                  "' for system " + system_name(system));
    }
    if (axis.count < 2) {
      throw std::invalid_argument("axis '" + axis.name +
                                  "' needs at least 2 samples");
    }
    if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi)) {
      throw std::invalid_argument("axis '" + axis.name + "' range is not finite");
    }
    if (fixed.count(axis.name)) {
      throw std::invalid_argument("axis '" + axis.name +
                                  "' is both swept and fixed");
    }
    covered.insert(axis.name);
  }
  for (const auto& [name, value] : fixed) {
    if (!known.count(name)) {
      throw std::invalid_argument("unknown fixed angle '" + name +
                                  "' for system " + system_name(system));
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("fixed angle '" + name + "' is not finite");
    }
    covered.insert(name);
  }
  if (covered.size() != known.size()) {
    throw std::invalid_argument(
        "swept plus fixed angles must cover the full angle set");
  }
  const int dim = system == System::one_qubit ? 2 : 4;
  if (initial_index < 0 || initial_index >= dim) {
    throw std::invalid_argument("initial index out of range");
  }
  if (system == System::two_qubit &&
      (mode == SweepMode::analytic_nonselective ||
       mode == SweepMode::analytic_stationary)) {
    throw std::invalid_argument(
        "analytic non-selective results exist only for the single-qubit system");
  }
}

std::string tool_version() { return ZENOSQ_VERSION; }

GridResult run_sweep(const SweepSpec& spec, int jobs) {
  spec.validate();
  const int rows = spec.axes[0].count;
  const int cols = spec.axes[1].count;

  Matrix propagator;
  if (is_numeric(spec.mode)) {
    const Liouvillian liouville = spec.system == System::one_qubit
                                      ? build_single_qubit(spec.bath)
                                      : build_two_qubit(spec.bath);
    propagator = step_propagator(liouville, spec.schedule.tau());
  }

  GridResult result{spec, std::vector<double>(
                              static_cast<size_t>(rows) * cols, 0.0),
                    tool_version()};

  const auto eval_rows = [&](int row_begin, int row_end,
                             std::exception_ptr& error) noexcept {
    try {
      for (int i = row_begin; i < row_end; ++i) {
        for (int j = 0; j < cols; ++j) {
          const AngleSet a = angles_at(spec, i, j);
          const double v = is_numeric(spec.mode)
                               ? numeric_value(spec, propagator, a)
                               : analytic_value(spec, a);
          result.values[static_cast<size_t>(i) * cols + j] = v;
        }
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  const int workers = std::max(1, std::min(jobs, rows));
  if (workers == 1) {
    std::exception_ptr error;
    eval_rows(0, rows, error);
    if (error) std::rethrow_exception(error);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int begin = rows * w / workers;
      const int end = rows * (w + 1) / workers;
      pool.emplace_back(eval_rows, begin, end, std::ref(errors[w]));
    }
    for (auto& t : pool) t.join();
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  for (double v : result.values) {
    if (!std::isfinite(v) || v < -1e-9 || v > 1.0 + 1e-9) {
      throw std::logic_error("sweep produced a survival value outside [0,1]: " +
                             format_double(v));
    }
  }
  return result;
}

std::string to_csv(const GridResult& result) {
  std::string out = "axis1,axis2,survival\n";
  const int rows = result.spec.axes[0].count;
  const int cols = result.spec.axes[1].count;
  out.reserve(out.size() + static_cast<size_t>(rows) * cols * 60);
  for (int i = 0; i < rows; ++i) {
    const std::string a1 = format_double(result.spec.axes[0].value(i));
    for (int j = 0; j < cols; ++j) {
      out += a1;
      out += ',';
      out += format_double(result.spec.axes[1].value(j));
      out += ',';
      out += format_double(clamp01(result.value(i, j)));
      out += '\n';
    }
  }
  return out;
}

std::string to_json(const GridResult& result) {
  nlohmann::json j;
  j["spec"]["system"] = system_name(result.spec.system);
  j["spec"]["mode"] = mode_name(result.spec.mode);
  j["spec"]["bath"] = {{"gamma", result.spec.bath.gamma},
                       {"N", result.spec.bath.N},
                       {"eta", result.spec.bath.eta}};
  j["spec"]["schedule"] = {{"total_time", result.spec.schedule.total_time},
                           {"n", result.spec.schedule.n}};
  j["spec"]["axes"] = nlohmann::json::array();
  for (const AxisSpec& axis : result.spec.axes) {
    j["spec"]["axes"].push_back({{"name", axis.name},
                                 {"lo", axis.lo},
                                 {"hi", axis.hi},
                                 {"count", axis.count}});
  }
  j["spec"]["fixed"] = nlohmann::json::object();
  for (const auto& [name, value] : result.spec.fixed) {
    j["spec"]["fixed"][name] = value;
  }
  j["spec"]["initial_index"] = result.spec.initial_index;
  j["values"] = nlohmann::json::array();
  for (double v : result.values) {
    j["values"].push_back(clamp01(v));
  }
  j["tool_version"] = result.tool_version;
  return j.dump(2) + "\n";
}

GridResult grid_from_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  GridResult result;
  const auto& spec = j.at("spec");
  result.spec.system = system_from_name(spec.at("system").get<std::string>());
  result.spec.mode = mode_from_name(spec.at("mode").get<std::string>());
  result.spec.bath.gamma = spec.at("bath").at("gamma").get<double>();
  result.spec.bath.N = spec.at("bath").at("N").get<double>();
  result.spec.bath.eta = spec.at("bath").at("eta").get<double>();
  result.spec.schedule.total_time =
      spec.at("schedule").at("total_time").get<double>();
  result.spec.schedule.n = spec.at("schedule").at("n").get<long>();
  result.spec.schedule.mode = result.spec.mode == SweepMode::selective
                                  ? Mode::selective
                                  : Mode::nonselective;
  const auto& axes = spec.at("axes");
  for (size_t k = 0; k < 2; ++k) {
    result.spec.axes[k].name = axes.at(k).at("name").get<std::string>();
    result.spec.axes[k].lo = axes.at(k).at("lo").get<double>();
    result.spec.axes[k].hi = axes.at(k).at("hi").get<double>();
    result.spec.axes[k].count = axes.at(k).at("count").get<int>();
  }
  for (const auto& [name, value] : spec.at("fixed").items()) {
    result.spec.fixed[name] = value.get<double>();
  }
  result.spec.initial_index = spec.at("initial_index").get<int>();
  result.values = j.at("values").get<std::vector<double>>();
  result.tool_version = j.at("tool_version").get<std::string>();
  return result;
}

std::string to_gnuplot(const GridResult& result, const std::string& csv_name) {
  const std::string stem = std::filesystem::path(csv_name).stem().string();
  std::string out;
  out += "# survival-probability heatmap; renders the CSV written alongside\n";
  out += "set datafile separator ','\n";
  out += "set terminal pngcairo size 900,700\n";
  out += "set output '" + stem + ".png'\n";
  out += "set xlabel '" + result.spec.axes[1].name + "'\n";
  out += "set ylabel '" + result.spec.axes[0].name + "'\n";
  out += "set cbrange [0:1]\n";
  out += "set cblabel 'survival probability'\n";
  out += "set title '" + mode_name(result.spec.mode) + " survival, " +
         system_name(result.spec.system) + "'\n";
  out += "plot '" + csv_name +
         "' skip 1 using 2:1:3 with image notitle\n";
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  stream << content;
  if (!stream) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace

void emit(const GridResult& result, EmitFormat format, const std::string& path) {
  switch (format) {
    case EmitFormat::csv:
      write_file(path, to_csv(result));
      return;
    case EmitFormat::json:
      write_file(path, to_json(result));
      return;
    case EmitFormat::gnuplot_script: {
      std::filesystem::path csv_path(path);
      csv_path.replace_extension(".csv");
      write_file(csv_path.string(), to_csv(result));
      write_file(path, to_gnuplot(result, csv_path.filename().string()));
      return;
    }
  }
  throw std::logic_error("unreachable emit format");
}

}  // namespace zenosq
