#pragma once

// Dense complex matrix substrate: vectorization of density matrices,
// superoperator construction, and a matrix exponential. Everything here is
// dimension-agnostic but in practice runs at dim 2 or 4 (superoperators 4 or 16).

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace zenosq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// --- elementary operators -------------------------------------------------

// Convention: |0> = (1,0)^T is the UP (excited) state, |1> the ground state.
// sigma_minus = |1><0| lowers, sigma_plus = |0><1| raises.
Matrix identity(int dim);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();
Matrix sigma_minus();

// Kronecker product, used to lift single-qubit operators to two qubits and to
// build superoperators. Basis order for two qubits: |00>, |01>, |10>, |11>.
Matrix kron(const Matrix& a, const Matrix& b);

// --- states ----------------------------------------------------------------

// Unit-norm complex state vector of dimension 2 or 4.
class PureState {
 public:
  explicit PureState(Vector amplitudes);
  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  // |psi><psi|
  Matrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  Vector amps_;
};

// Hermitian, unit-trace, nonnegative-diagonal matrix of dimension 2 or 4.
// Validation tolerances: hermiticity and trace within 1e-10, diagonal
// entries real with imaginary part / negativity below 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho);
  static DensityMatrix from_pure(const PureState& psi);
  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }

 private:
  Matrix rho_;
};

// --- vectorization ----------------------------------------------------------

// Column stacking: element (i,j) of rho maps to index j*dim + i, so that
// vec(A rho B) = (B^T kron A) vec(rho). Round-trips exactly with devectorize.
Vector vectorize(const Matrix& rho);
Matrix devectorize(const Vector& v);

// The superoperator of rho -> A rho B as a dim^2 x dim^2 matrix (B^T kron A).
Matrix superop_sandwich(const Matrix& a, const Matrix& b);

// --- matrix exponential ------------------------------------------------------

// exp(s*m) by scaling-and-squaring with a degree-13 diagonal Pade approximant;
// near machine precision at these dimensions. exp(0*m) is the exact identity.
// Throws std::invalid_argument on non-finite input.
Matrix matrix_exponential(const Matrix& m, double s);

}  // namespace zenosq
