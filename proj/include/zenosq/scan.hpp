#pragma once

// Sweep engine and persistence: evaluates a survival function over a 2-D
// angle grid, emits CSV / JSON / gnuplot-script files, and backs the
// command-line tool.

#include "zenosq/analytic.hpp"
#include "zenosq/liouvillian.hpp"
#include "zenosq/measurement.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace zenosq {

enum class System { one_qubit, two_qubit };

enum class SweepMode {
  selective,
  nonselective,
  analytic_selective,
  analytic_nonselective,
  analytic_stationary,
};

// One swept angle: `count` samples evenly spaced from lo to hi inclusive.
struct AxisSpec {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;

  double value(int k) const {
    return lo + (hi - lo) * static_cast<double>(k) /
                    static_cast<double>(count - 1);
  }
};

struct SweepSpec {
  System system = System::one_qubit;
  SweepMode mode = SweepMode::nonselective;
  BathParams bath;
  ZenoSchedule schedule;
  std::array<AxisSpec, 2> axes;
  // Remaining basis angles (two-qubit sweeps fix two of alpha/beta/delta/chi).
  std::map<std::string, double> fixed;
  int initial_index = 0;

  // Throws std::invalid_argument on unknown axis names, axes overlapping the
  // fixed angles, sample counts < 2, bad schedule, or an analytic mode that
  // has no closed form (analytic non-selective results exist only for the
  // single-qubit system).
  void validate() const;
};

struct GridResult {
  SweepSpec spec;
  // Row-major: axes[0] indexes rows, axes[1] indexes columns.
  std::vector<double> values;
  std::string tool_version;

  double value(int row, int col) const {
    return values[static_cast<size_t>(row) *
                      static_cast<size_t>(spec.axes[1].count) +
                  static_cast<size_t>(col)];
  }
};

std::string tool_version();

// Evaluates the selected survival function at every grid node. Deterministic
// for a given spec; nodes are distributed over `jobs` threads (results are
// independent of the thread count).
GridResult run_sweep(const SweepSpec& spec, int jobs = 1);

enum class EmitFormat { csv, json, gnuplot_script };

// Serialized forms. Survival values are clamped to [0, 1] here — and only
// here; in-memory values stay raw so tests can see integrator noise.
std::string to_csv(const GridResult& result);
std::string to_json(const GridResult& result);
// A plain-text gnuplot script that renders the CSV as a heatmap.
std::string to_gnuplot(const GridResult& result, const std::string& csv_name);

// Inverse of to_json; values are recovered bit-exactly.
GridResult grid_from_json(const std::string& json_text);

// Writes the chosen format to `path`. The gnuplot format also writes the CSV
// the script references, next to the script (same stem, .csv extension).
// Throws std::runtime_error naming the path on I/O failure.
void emit(const GridResult& result, EmitFormat format, const std::string& path);

// The command-line entry point (subcommands scan1q, scan2q, point,
// zeno-points, dfzs). Returns the process exit code: 0 on success, 2 on
// usage errors, 1 on runtime failures.
int run_cli(int argc, const char* const* argv);

}  // namespace zenosq
