#pragma once

// Projective-measurement machinery and the finite-n Zeno iteration.
//
// Selective mode: runs are post-selected on finding the initial state at every
// intermediate measurement, so the per-step survival s is constant and the
// n-step survival is s^n.
// Non-selective mode: every outcome is kept; each measurement dephases the
// state in the measurement basis, rho -> sum_i P_i rho P_i, and the full
// density matrix is iterated.

#include "zenosq/liouvillian.hpp"
#include "zenosq/qmath.hpp"

#include <optional>
#include <vector>

namespace zenosq {

// Measured Bloch direction for a single qubit. theta is clamped to [0, pi];
// phi is reduced modulo 2*pi for storage.
struct BlochDirection {
  double theta = 0.0;
  double phi = 0.0;
  BlochDirection(double theta_in, double phi_in);
};

// Angles of the two-qubit measurement basis
//   psi1 =  cos(alpha/2)|00> + sin(alpha/2) e^{i beta}|11>
//   psi2 = -sin(alpha/2)|00> + cos(alpha/2) e^{i beta}|11>
//   psi3 =  cos(delta/2)|01> + sin(delta/2) e^{i chi }|10>
//   psi4 = -sin(delta/2)|01> + cos(delta/2) e^{i chi }|10>.
// alpha and delta are clamped to [0, pi]; beta and chi are reduced to
// [-pi/2, 3*pi/2).
struct TwoQubitBasisParams {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double chi = 0.0;
  TwoQubitBasisParams(double alpha_in, double beta_in, double delta_in,
                      double chi_in);
};

// An orthonormal, complete set of rank-1 projectors given by its states.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(std::vector<PureState> states);
  int dim() const { return states_.empty() ? 0 : states_[0].dim(); }
  int size() const { return static_cast<int>(states_.size()); }
  const PureState& state(int i) const;
  // Superoperator of rho -> sum_i P_i rho P_i on vectorized states.
  Matrix projector_superop() const;

 private:
  std::vector<PureState> states_;
};

MeasurementBasis bloch_basis(const BlochDirection& dir);
MeasurementBasis two_qubit_basis(const TwoQubitBasisParams& p);

enum class Mode { selective, nonselective };

// Measurement schedule: n projective measurements spread over the (gamma-
// scaled, dimensionless) duration total_time, separated by tau = total_time/n.
struct ZenoSchedule {
  double total_time = 10.0;
  long n = 1000;
  Mode mode = Mode::nonselective;

  double tau() const { return total_time / static_cast<double>(n); }
  // Throws std::invalid_argument unless total_time > 0 and n >= 1.
  void validate() const;
};

struct SurvivalResult {
  // Raw survival probability; may carry O(1e-15) rounding outside [0, 1].
  double probability = 0.0;
  // Survival after each of the n measurements (filled on request).
  std::vector<double> per_step;
  DensityMatrix final_state;

  // Value clamped to [0, 1] for reporting.
  double clamped() const {
    return std::min(1.0, std::max(0.0, probability));
  }
};

// One-measurement dephasing map rho -> sum_i P_i rho P_i.
DensityMatrix nonselective_project(const MeasurementBasis& basis,
                                   const DensityMatrix& rho);

// The step propagator for one gamma-scaled step gamma_tau (i.e. the physical
// step gamma_tau / gamma). Computing it once and reusing it across grid
// points is the main sweep optimization; the generator does not depend on
// the measurement angles.
Matrix step_propagator(const Liouvillian& liouville, double gamma_tau);

// Survival after n selective measurements: s^n with the single-step survival
// s = <psi| e^{L tau}{|psi><psi|} |psi> computed once. s^n is evaluated in
// log space; a nonpositive s yields exactly 0.
SurvivalResult survival_selective(const Liouvillian& liouville,
                                  const MeasurementBasis& basis,
                                  int initial_index, const ZenoSchedule& sched,
                                  bool record_per_step = false);
SurvivalResult survival_selective(const Matrix& propagator,
                                  const MeasurementBasis& basis,
                                  int initial_index, const ZenoSchedule& sched,
                                  bool record_per_step = false);

// Survival after n non-selective measurements: the full density matrix is
// propagated through (P^ e^{L tau})^n and the probability of the initial
// state read off at the final step. After each step the state is
// re-Hermitized and trace-renormalized if rounding drift exceeds 1e-12;
// drift beyond 1e-8 is an error, not a correction.
SurvivalResult survival_nonselective(const Liouvillian& liouville,
                                     const MeasurementBasis& basis,
                                     int initial_index,
                                     const ZenoSchedule& sched,
                                     bool record_per_step = false);
SurvivalResult survival_nonselective(const Matrix& propagator,
                                     const MeasurementBasis& basis,
                                     int initial_index,
                                     const ZenoSchedule& sched,
                                     bool record_per_step = false);

}  // namespace zenosq
