#include "zenosq/liouvillian.hpp"

#include <cmath>

namespace zenosq {

namespace {

// Superoperator of the Lindblad dissipator block 2 A rho B - BA rho - rho BA.
Matrix dissipator(const Matrix& a, const Matrix& b) {
  const Matrix ident = identity(static_cast<int>(a.rows()));
  return 2.0 * superop_sandwich(a, b) - superop_sandwich(ident, b * a) -
         superop_sandwich(b * a, ident);
}

// Trace preservation is structural: the trace row of the superoperator must
// vanish. A violation indicates a construction bug, hence logic_error.
void check_trace_row(const Matrix& superop, int dim) {
  const Vector trace_row = vectorize(identity(dim));
  const double residual =
      (trace_row.adjoint() * superop).cwiseAbs().maxCoeff();
  if (residual > 1e-12) {
    throw std::logic_error("generator is not trace-preserving: residual " +
                           std::to_string(residual));
  }
}

}  // namespace

void BathParams::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(N) || !std::isfinite(eta)) {
    throw std::invalid_argument("bath parameters must be finite");
  }
  if (gamma <= 0.0) {
    throw std::invalid_argument("gamma must be positive");
  }
  if (N < 0.0) {
    throw std::invalid_argument("N must be nonnegative");
  }
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  return devectorize(matrix * vectorize(rho));
}

Liouvillian build_single_qubit(const BathParams& params) {
  params.validate();
  const Complex phase = std::exp(Complex{0.0, params.eta});
  const Matrix jump = std::sqrt(params.N + 1.0) * sigma_minus() -
                      std::sqrt(params.N) * phase * sigma_plus();
  Liouvillian l;
  l.dim = 2;
  l.params = params;
  l.matrix = (params.gamma / 2.0) * dissipator(jump, jump.adjoint());
  check_trace_row(l.matrix, l.dim);
  return l;
}

Liouvillian build_single_qubit_expanded(const BathParams& params) {
  params.validate();
  const double g = params.gamma;
  const double n = params.N;
  const double m = params.M();
  const Complex phase = std::exp(Complex{0.0, params.eta});
  const Matrix sm = sigma_minus();
  const Matrix sp = sigma_plus();

  Liouvillian l;
  l.dim = 2;
  l.params = params;
  l.matrix = (g / 2.0) * (n + 1.0) * dissipator(sm, sp) +
             (g / 2.0) * n * dissipator(sp, sm) -
             g * m * phase * superop_sandwich(sp, sp) -
             g * m * std::conj(phase) * superop_sandwich(sm, sm);
  check_trace_row(l.matrix, l.dim);
  return l;
}

Liouvillian build_two_qubit(const BathParams& params) {
  params.validate();
  const double g = params.gamma;
  const double n = params.N;
  const double m = params.M();
  const Complex phase = std::exp(Complex{0.0, params.eta});
  const Matrix one = identity(2);
  const Matrix cm = kron(sigma_minus(), one) + kron(one, sigma_minus());
  const Matrix cp = kron(sigma_plus(), one) + kron(one, sigma_plus());

  Liouvillian l;
  l.dim = 4;
  l.params = params;
  l.matrix = (g / 2.0) * (n + 1.0) * dissipator(cm, cp) +
             (g / 2.0) * n * dissipator(cp, cm) -
             (g / 2.0) * m * phase * dissipator(cp, cp) -
             (g / 2.0) * m * std::conj(phase) * dissipator(cm, cm);
  check_trace_row(l.matrix, l.dim);
  return l;
}

}  // namespace zenosq
