#pragma once

// Squeezed-bath Lindblad generators: the single-qubit generator for a qubit in
// a broadband squeezed vacuum, and the collective two-qubit generator for two
// qubits sharing the same reservoir. Both are represented as superoperator
// matrices acting on column-stacked density matrices.

#include "zenosq/qmath.hpp"

namespace zenosq {

// Reservoir parameters. N = sinh^2(r) is the effective photon number of the
// squeezing, eta its phase, gamma the decay rate. M = sqrt(N(N+1)) is the
// squeezing correlation magnitude and is always derived, never stored.
struct BathParams {
  double gamma = 1.0;
  double N = 1.0;
  double eta = 0.0;

  double M() const { return std::sqrt(N * (N + 1.0)); }
  // Throws std::invalid_argument unless gamma > 0, N >= 0, all finite.
  void validate() const;
};

// A Lindblad generator as a dim^2 x dim^2 matrix on vectorized states.
struct Liouvillian {
  int dim = 2;  // system dimension (2 or 4)
  Matrix matrix;
  BathParams params;

  // devectorize(matrix * vectorize(rho)): the generator applied to a state.
  Matrix apply(const Matrix& rho) const;
};

// Single-qubit generator in Lindblad form, gamma/2 (2 L rho L+ - rho L+L - L+L rho)
// with jump operator L = sqrt(N+1) sigma_minus - sqrt(N) e^{i eta} sigma_plus.
Liouvillian build_single_qubit(const BathParams& params);

// The same generator assembled term by term from its expanded form:
//   gamma/2 (N+1) (2 s- rho s+ - s+s- rho - rho s+s-)
// + gamma/2  N    (2 s+ rho s- - s-s+ rho - rho s-s+)
// - gamma   M e^{ i eta} s+ rho s+
// - gamma   M e^{-i eta} s- rho s-.
// Algebraically identical to build_single_qubit; kept as an independent
// construction so the two routes can be checked against each other.
Liouvillian build_single_qubit_expanded(const BathParams& params);

// Collective two-qubit generator with S± = sigma±^1 + sigma±^2:
//   gamma/2 (N+1) (2 S- rho S+ - S+S- rho - rho S+S-)
// + gamma/2  N    (2 S+ rho S- - S-S+ rho - rho S-S+)
// - gamma/2 M e^{ i eta} (2 S+ rho S+ - S+S+ rho - rho S+S+)
// - gamma/2 M e^{-i eta} (2 S- rho S- - S-S- rho - rho S-S-).
Liouvillian build_two_qubit(const BathParams& params);

}  // namespace zenosq
