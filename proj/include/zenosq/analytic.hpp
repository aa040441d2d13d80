#pragma once

// Closed-form results for the measured qubit(s): Zeno-limit survival rates and
// probabilities, stationary values, Zeno / anti-Zeno measurement directions,
// two-qubit Zeno conditions, decoherence-free states, and the closed-system
// baseline. These expressions are the oracle layer the simulator is verified
// against.

#include "zenosq/liouvillian.hpp"
#include "zenosq/measurement.hpp"
#include "zenosq/qmath.hpp"

#include <utility>
#include <vector>

namespace zenosq {

// Rate-equation pair of the measured direction. In the frequent-measurement
// limit the initial-state population p obeys dp/dt = c1 p + c2 (1 - p):
// c1 drains the measured state, c2 feeds it from its orthogonal partner.
// Selective survival decays as e^{c1 t}; c1 <= 0 and c2 - c1 > 0 everywhere.
struct ZenoRates {
  double c1 = 0.0;
  double c2 = 0.0;
};

// c1(theta, phi) = -gamma/2 [(N + 1/2)(1 + cos^2 theta) + cos theta
//                            + M sin^2 theta cos(2 phi + eta)]
double c1(const BathParams& params, const BlochDirection& dir);

// c2(theta, phi) = +gamma/2 [(N + 1/2)(1 + cos^2 theta) - cos theta
//                            + M sin^2 theta cos(2 phi + eta)]
double c2(const BathParams& params, const BlochDirection& dir);

ZenoRates zeno_rates(const BathParams& params, const BlochDirection& dir);

// Zeno-limit selective survival e^{c1 t}; t is the gamma-scaled time.
double survival_selective_limit(const BathParams& params,
                                const BlochDirection& dir, double total_time);

// Zeno-limit non-selective survival
//   P(t) = c2/(c2 - c1) - c1/(c2 - c1) e^{-(c2 - c1) t};
// exactly 1 at t = 0. t is the gamma-scaled time.
double survival_nonselective_limit(const BathParams& params,
                                   const BlochDirection& dir,
                                   double total_time);

// Long-time limit of the above: c2/(c2 - c1), in [0, 1].
double survival_nonselective_stationary(const BathParams& params,
                                        const BlochDirection& dir);

// A measurement direction where the Zeno-limit survival is exactly 1 (c1 = 0,
// kind zeno) or the stationary non-selective survival is exactly 0 (c2 = 0,
// kind anti_zeno).
struct ZenoPoint {
  enum class Kind { zeno, anti_zeno };
  double theta_z = 0.0;
  double phi_z = 0.0;
  Kind kind = Kind::zeno;
};

// The two Zeno directions, cos(theta_z) = (N - M)/(N + M) = -1/(2(N + M + 1/2))
// with phi_z = (pi - eta)/2 and phi_z + pi, followed by the two anti-Zeno
// directions at the image points (pi - theta_z, pi + phi_z). Angles are
// reported as principal values theta in [0, pi], phi in [-pi/2, 3 pi/2).
std::vector<ZenoPoint> zeno_points(const BathParams& params);

// Two-qubit Zeno-condition values: the generator sandwich in the initial
// basis state, zero exactly at the Zeno point.
//
// For initial state psi1(alpha, beta):
//   Q(alpha, beta) = -gamma [2N + 1 + cos(alpha) - 2 M sin(alpha) cos(beta + eta)],
// maximal (= 0) at beta = -eta, alpha = arccos[-1/(2N+1)].
double q1(const BathParams& params, double alpha, double beta);

// For initial state psi3(delta, chi):
//   Q3(delta, chi) = -gamma (2N + 1) [sin(delta) cos(chi) + 1],
// zero iff sin(delta) cos(chi) = -1, i.e. (delta, chi) = (pi/2, pi).
double q3(const BathParams& params, double delta, double chi);

// The two decoherence-free states of the collective bath:
//   (sqrt(N)|00> + sqrt(N+1) e^{-i eta}|11>) / sqrt(2N + 1)
// (the normalized form of (N|00> + M e^{-i eta}|11>)/sqrt(N^2 + M^2), well
// defined down to N = 0) and the singlet (|01> - |10>)/sqrt(2). Both are
// exact kernel elements of the two-qubit generator.
std::pair<PureState, PureState> dfzs_states(const BathParams& params);

// Closed-system baseline (hbar = 1): decay-rate constant of the short-time
// expansion, epsilon = <H^2> - <H>^2 >= 0.
struct ClosedSystemRate {
  double epsilon = 0.0;
};

ClosedSystemRate closed_system_epsilon(const Matrix& hamiltonian,
                                       const PureState& psi);

// Survival after n measurements over time t under unitary evolution:
// (1 - epsilon (t/n)^2)^n, floored at 0.
double closed_system_survival(const ClosedSystemRate& rate, long n, double t);

}  // namespace zenosq
