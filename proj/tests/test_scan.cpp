#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zenosq/scan.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace zenosq;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

SweepSpec base_1q() {
  SweepSpec spec;
  spec.system = System::one_qubit;
  spec.mode = SweepMode::nonselective;
  spec.bath = {1.0, 1.0, 0.0};
  spec.schedule = {10.0, 50, Mode::nonselective};
  spec.axes = {AxisSpec{"theta", 0.0, kPi, 5},
               AxisSpec{"phi", 0.0, 2.0 * kPi, 9}};
  spec.initial_index = 0;
  return spec;
}

SweepSpec base_2q() {
  SweepSpec spec;
  spec.system = System::two_qubit;
  spec.mode = SweepMode::selective;
  spec.bath = {1.0, 1.0, 0.0};
  spec.schedule = {10.0, 100, Mode::selective};
  spec.axes = {AxisSpec{"alpha", 0.0, kPi, 5},
               AxisSpec{"beta", -kPi / 2.0, 3.0 * kPi / 2.0, 9}};
  spec.fixed = {{"delta", kPi / 2.0}, {"chi", 0.0}};
  spec.initial_index = 0;
  return spec;
}

// A 2 x 2 grid pinned to a single angle pair: the sweep path evaluated at
// exactly one point.
SweepSpec pinned_1q(SweepMode mode, double theta, double phi, int index = 0) {
  SweepSpec spec = base_1q();
  spec.mode = mode;
  spec.schedule.mode =
      mode == SweepMode::selective ? Mode::selective : Mode::nonselective;
  spec.axes = {AxisSpec{"theta", theta, theta, 2},
               AxisSpec{"phi", phi, phi, 2}};
  spec.initial_index = index;
  spec.schedule.n = 1000;
  return spec;
}

SweepSpec pinned_2q(SweepMode mode, double alpha, double beta, int index = 0) {
  SweepSpec spec = base_2q();
  spec.mode = mode;
  spec.schedule.mode =
      mode == SweepMode::selective ? Mode::selective : Mode::nonselective;
  spec.axes = {AxisSpec{"alpha", alpha, alpha, 2},
               AxisSpec{"beta", beta, beta, 2}};
  spec.initial_index = index;
  spec.schedule.n = 1000;
  return spec;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

std::string slurp(const fs::path& path) {
  std::ifstream stream(path, std::ios::binary);
  REQUIRE(stream.good());
  std::ostringstream out;
  out << stream.rdbuf();
  return out.str();
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("a degenerate grid reproduces the pointwise survival exactly") {
  const SweepSpec spec = pinned_1q(SweepMode::nonselective, 1.1, 0.7);
  const GridResult grid = run_sweep(spec);
  REQUIRE(grid.values.size() == 4);

  const Liouvillian l = build_single_qubit(spec.bath);
  const double direct =
      survival_nonselective(l, bloch_basis({1.1, 0.7}), 0, spec.schedule)
          .probability;
  for (double v : grid.values) {
    CHECK(v == direct);
  }
}

TEST_CASE("sweep specification validation") {
  CHECK_NOTHROW(base_1q().validate());
  CHECK_NOTHROW(base_2q().validate());

  SweepSpec unknown = base_1q();
  unknown.axes[0].name = "zeta";
  CHECK_THROWS_AS(unknown.validate(), std::invalid_argument);

  SweepSpec wrong_system = base_1q();
  wrong_system.axes[0].name = "alpha";
  CHECK_THROWS_AS(wrong_system.validate(), std::invalid_argument);

  SweepSpec duplicate = base_1q();
  duplicate.axes[1].name = "theta";
  CHECK_THROWS_AS(duplicate.validate(), std::invalid_argument);

  SweepSpec single_sample = base_1q();
  single_sample.axes[0].count = 1;
  CHECK_THROWS_AS(single_sample.validate(), std::invalid_argument);

  SweepSpec bad_range = base_1q();
  bad_range.axes[1].hi = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bad_range.validate(), std::invalid_argument);

  SweepSpec bad_schedule = base_1q();
  bad_schedule.schedule.n = 0;
  CHECK_THROWS_AS(bad_schedule.validate(), std::invalid_argument);

  SweepSpec overlap = base_1q();
  overlap.fixed = {{"theta", 0.3}};
  CHECK_THROWS_AS(overlap.validate(), std::invalid_argument);

  SweepSpec incomplete = base_2q();
  incomplete.fixed.erase("chi");
  CHECK_THROWS_AS(incomplete.validate(), std::invalid_argument);

  SweepSpec bad_fixed_name = base_2q();
  bad_fixed_name.fixed.erase("chi");
  bad_fixed_name.fixed["theta"] = 0.0;
  CHECK_THROWS_AS(bad_fixed_name.validate(), std::invalid_argument);

  SweepSpec bad_fixed_value = base_2q();
  bad_fixed_value.fixed["chi"] = std::nan("");
  CHECK_THROWS_AS(bad_fixed_value.validate(), std::invalid_argument);

  SweepSpec bad_index = base_1q();
  bad_index.initial_index = 2;
  CHECK_THROWS_AS(bad_index.validate(), std::invalid_argument);
  bad_index.initial_index = -1;
  CHECK_THROWS_AS(bad_index.validate(), std::invalid_argument);

  SweepSpec no_closed_form = base_2q();
  no_closed_form.mode = SweepMode::analytic_nonselective;
  CHECK_THROWS_AS(no_closed_form.validate(), std::invalid_argument);
  no_closed_form.mode = SweepMode::analytic_stationary;
  CHECK_THROWS_AS(no_closed_form.validate(), std::invalid_argument);
  // The selective Zeno limit does have a two-qubit closed form.
  no_closed_form.mode = SweepMode::analytic_selective;
  CHECK_NOTHROW(no_closed_form.validate());
}

TEST_CASE("analytic selective sweep peaks at the Zeno direction") {
  SweepSpec spec = base_1q();
  spec.mode = SweepMode::analytic_selective;
  spec.axes = {AxisSpec{"theta", 0.0, kPi, 41},
               AxisSpec{"phi", 0.0, 2.0 * kPi, 81}};
  const GridResult grid = run_sweep(spec);
  double max_value = 0.0;
  for (double v : grid.values) {
    CHECK(v <= 1.0 + 1e-12);
    CHECK(v >= 0.0);
    max_value = std::max(max_value, v);
  }
  CHECK(max_value > 0.99);
}

TEST_CASE("numeric non-selective sweep tracks the limit law") {
  SweepSpec spec = base_1q();
  spec.axes = {AxisSpec{"theta", 0.0, kPi, 21},
               AxisSpec{"phi", 0.0, 2.0 * kPi, 41}};
  spec.schedule.n = 1000;
  const GridResult numeric = run_sweep(spec);

  spec.mode = SweepMode::analytic_nonselective;
  const GridResult analytic = run_sweep(spec);

  double worst = 0.0;
  for (size_t k = 0; k < numeric.values.size(); ++k) {
    worst = std::max(worst, std::abs(numeric.values[k] - analytic.values[k]));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("selective and non-selective sweeps coincide at n = 1") {
  SweepSpec spec = base_1q();
  spec.schedule.n = 1;
  spec.mode = SweepMode::selective;
  spec.schedule.mode = Mode::selective;
  const GridResult sel = run_sweep(spec);
  spec.mode = SweepMode::nonselective;
  spec.schedule.mode = Mode::nonselective;
  const GridResult non = run_sweep(spec);
  CHECK(sel.values == non.values);
  CHECK(to_csv(sel) == to_csv(non));
}

TEST_CASE("results are independent of the thread count") {
  SweepSpec spec = base_1q();
  spec.axes[0].count = 9;
  spec.axes[1].count = 7;
  spec.schedule.n = 20;
  const GridResult serial = run_sweep(spec, 1);
  const GridResult threaded = run_sweep(spec, 4);
  const GridResult oversubscribed = run_sweep(spec, 64);
  CHECK(serial.values == threaded.values);
  CHECK(serial.values == oversubscribed.values);

  const GridResult again = run_sweep(spec, 4);
  CHECK(to_csv(threaded) == to_csv(again));
  CHECK(to_json(threaded) == to_json(again));
}

TEST_CASE("CSV shape, header, and round-trip parsing") {
  SweepSpec spec = base_1q();
  spec.axes = {AxisSpec{"theta", 0.25, 1.75, 2},
               AxisSpec{"phi", 0.5, 2.5, 2}};
  spec.schedule.n = 10;
  const GridResult grid = run_sweep(spec);
  const std::string csv = to_csv(grid);

  CHECK(csv.find('\r') == std::string::npos);
  REQUIRE(!csv.empty());
  CHECK(csv.back() == '\n');

  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "axis1,axis2,survival");

  int row = 0, col = 0;
  for (size_t k = 1; k < lines.size(); ++k) {
    const char* cursor = lines[k].c_str();
    char* end = nullptr;
    const double a1 = std::strtod(cursor, &end);
    REQUIRE(*end == ',');
    const double a2 = std::strtod(end + 1, &end);
    REQUIRE(*end == ',');
    const double v = std::strtod(end + 1, &end);
    CHECK(*end == '\0');
    CHECK(a1 == spec.axes[0].value(row));
    CHECK(a2 == spec.axes[1].value(col));
    const double raw = grid.value(row, col);
    CHECK(v == std::min(1.0, std::max(0.0, raw)));
    if (++col == spec.axes[1].count) {
      col = 0;
      ++row;
    }
  }
}

TEST_CASE("JSON serialization round-trips bit-exactly") {
  SweepSpec spec = base_2q();
  spec.schedule.n = 25;
  const GridResult grid = run_sweep(spec);
  const std::string json_text = to_json(grid);

  const GridResult round = grid_from_json(json_text);
  CHECK(round.spec.system == grid.spec.system);
  CHECK(round.spec.mode == grid.spec.mode);
  CHECK(round.spec.bath.gamma == grid.spec.bath.gamma);
  CHECK(round.spec.bath.N == grid.spec.bath.N);
  CHECK(round.spec.bath.eta == grid.spec.bath.eta);
  CHECK(round.spec.schedule.total_time == grid.spec.schedule.total_time);
  CHECK(round.spec.schedule.n == grid.spec.schedule.n);
  CHECK(round.spec.initial_index == grid.spec.initial_index);
  CHECK(round.spec.fixed == grid.spec.fixed);
  for (int k = 0; k < 2; ++k) {
    CHECK(round.spec.axes[k].name == grid.spec.axes[k].name);
    CHECK(round.spec.axes[k].lo == grid.spec.axes[k].lo);
    CHECK(round.spec.axes[k].hi == grid.spec.axes[k].hi);
    CHECK(round.spec.axes[k].count == grid.spec.axes[k].count);
  }
  CHECK(round.tool_version == grid.tool_version);
  REQUIRE(round.values.size() == grid.values.size());
  for (size_t k = 0; k < grid.values.size(); ++k) {
    const double clamped = std::min(1.0, std::max(0.0, grid.values[k]));
    CHECK(round.values[k] == clamped);
  }
  // Serializing the parsed result reproduces the document byte for byte.
  CHECK(to_json(round) == json_text);
}

TEST_CASE("gnuplot script references the data and labels the axes") {
  const GridResult grid = run_sweep(base_1q());
  const std::string script = to_gnuplot(grid, "survival_map.csv");
  CHECK(script.find("survival_map.csv") != std::string::npos);
  CHECK(script.find("using 2:1:3") != std::string::npos);
  CHECK(script.find("skip 1") != std::string::npos);
  CHECK(script.find("set xlabel 'phi'") != std::string::npos);
  CHECK(script.find("set ylabel 'theta'") != std::string::npos);
  CHECK(script.find("set cbrange [0:1]") != std::string::npos);
  CHECK(script.find("set output 'survival_map.png'") != std::string::npos);
}

TEST_CASE("emit writes the requested files") {
  const fs::path dir = fresh_dir("zenosq_scan_emit");
  const GridResult grid = run_sweep(base_1q());

  SUBCASE("csv") {
    const fs::path path = dir / "grid.csv";
    emit(grid, EmitFormat::csv, path.string());
    CHECK(slurp(path) == to_csv(grid));
  }
  SUBCASE("json") {
    const fs::path path = dir / "grid.json";
    emit(grid, EmitFormat::json, path.string());
    CHECK(slurp(path) == to_json(grid));
    CHECK(grid_from_json(slurp(path)).values.size() == grid.values.size());
  }
  SUBCASE("gnuplot writes the script plus its data file") {
    const fs::path path = dir / "plot.gp";
    emit(grid, EmitFormat::gnuplot_script, path.string());
    REQUIRE(fs::exists(path));
    REQUIRE(fs::exists(dir / "plot.csv"));
    const std::string script = slurp(path);
    CHECK(script.find("'plot.csv'") != std::string::npos);
    CHECK(slurp(dir / "plot.csv") == to_csv(grid));
  }
  SUBCASE("failure names the path") {
    const std::string bad = (dir / "missing" / "grid.csv").string();
    try {
      emit(grid, EmitFormat::csv, bad);
      FAIL("expected a write error");
    } catch (const std::runtime_error& error) {
      CHECK(std::string(error.what()).find(bad) != std::string::npos);
    }
  }
}

TEST_CASE("initial-index substitution maps onto the shifted first state") {
  SUBCASE("single qubit, analytic") {
    const double theta = 0.9, phi = 0.4;
    const GridResult flipped = run_sweep(
        pinned_1q(SweepMode::analytic_selective, theta, phi, 1));
    const GridResult mapped = run_sweep(pinned_1q(
        SweepMode::analytic_selective, kPi - theta, kPi + phi, 0));
    CHECK(std::abs(flipped.values[0] - mapped.values[0]) < 1e-12);
  }
  SUBCASE("single qubit, numeric") {
    const double theta = 0.9, phi = 0.4;
    const GridResult flipped =
        run_sweep(pinned_1q(SweepMode::selective, theta, phi, 1));
    const GridResult mapped = run_sweep(
        pinned_1q(SweepMode::selective, kPi - theta, kPi + phi, 0));
    CHECK(std::abs(flipped.values[0] - mapped.values[0]) < 1e-12);
  }
  SUBCASE("the second state has its own frozen direction") {
    // psi2(theta, phi) is the Zeno state when (pi - theta, pi + phi) hits the
    // Zeno direction.
    const double theta_z = std::acos(-(3.0 - 2.0 * std::sqrt(2.0)));
    const double theta = kPi - theta_z;
    const double phi = kPi / 2.0 - kPi;  // phi_z - pi
    const GridResult numeric =
        run_sweep(pinned_1q(SweepMode::selective, theta, phi, 1));
    CHECK(numeric.values[0] > 0.99);
    const GridResult analytic =
        run_sweep(pinned_1q(SweepMode::analytic_selective, theta, phi, 1));
    CHECK(std::abs(analytic.values[0] - 1.0) < 1e-12);
  }
  SUBCASE("two qubits, second pair state") {
    // Psi2(alpha, beta) = Psi1(alpha + pi, beta): its Zeno direction sits at
    // alpha = arccos(1/3), beta = pi for the unit-occupation bath.
    const double alpha = std::acos(1.0 / 3.0);
    const double beta = kPi;
    const GridResult numeric =
        run_sweep(pinned_2q(SweepMode::selective, alpha, beta, 1));
    CHECK(numeric.values[0] > 0.99);
    const GridResult analytic =
        run_sweep(pinned_2q(SweepMode::analytic_selective, alpha, beta, 1));
    CHECK(std::abs(analytic.values[0] - 1.0) < 1e-12);
    // Away from it the survival decays, matching exp(q1(alpha + pi, beta) t).
    const GridResult off =
        run_sweep(pinned_2q(SweepMode::analytic_selective, 1.0, 0.5, 1));
    const double q = q1({1.0, 1.0, 0.0}, 1.0 + kPi, 0.5);
    CHECK(std::abs(off.values[0] - std::exp(q * 10.0)) < 1e-12);
  }
  SUBCASE("two qubits, unpaired-sector states") {
    SweepSpec spec = base_2q();
    spec.mode = SweepMode::analytic_selective;
    spec.axes = {AxisSpec{"delta", 1.2, 1.2, 2}, AxisSpec{"chi", 0.3, 0.3, 2}};
    spec.fixed = {{"alpha", kPi / 2.0}, {"beta", 0.0}};
    spec.initial_index = 2;
    const double expect2 = std::exp(q3({1.0, 1.0, 0.0}, 1.2, 0.3) * 10.0);
    CHECK(std::abs(run_sweep(spec).values[0] - expect2) < 1e-12);
    spec.initial_index = 3;
    const double expect3 =
        std::exp(q3({1.0, 1.0, 0.0}, 1.2 + kPi, 0.3) * 10.0);
    CHECK(std::abs(run_sweep(spec).values[0] - expect3) < 1e-12);
  }
}

TEST_CASE("tool version is embedded in results") {
  CHECK(!tool_version().empty());
  const GridResult grid = run_sweep(base_1q());
  CHECK(grid.tool_version == tool_version());
  CHECK(to_json(grid).find(tool_version()) != std::string::npos);
}
