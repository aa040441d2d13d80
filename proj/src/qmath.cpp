#include "zenosq/qmath.hpp"

#include <cmath>

namespace zenosq {

namespace {
constexpr Complex kI{0.0, 1.0};

void require_state_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("state dimension must be 2 or 4, got " +
                                std::to_string(dim));
  }
}
}  // namespace

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;  // |0><1|
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;  // |1><0|
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  require_state_dim(static_cast<int>(amps_.size()));
  if (!amps_.allFinite()) {
    throw std::invalid_argument("pure state has non-finite amplitudes");
  }
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("pure state is not normalized: |norm - 1| = " +
                                std::to_string(std::abs(norm - 1.0)));
  }
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  require_state_dim(static_cast<int>(rho_.rows()));
  if (!rho_.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  const double herm_drift = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_drift > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian: drift " +
                                std::to_string(herm_drift));
  }
  const double trace_drift = std::abs(rho_.trace() - Complex{1.0, 0.0});
  if (trace_drift > 1e-10) {
    throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                std::to_string(trace_drift));
  }
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
    if (rho_(i, i).real() < -1e-10 || std::abs(rho_(i, i).imag()) > 1e-10) {
      throw std::invalid_argument("density matrix diagonal entry " +
                                  std::to_string(i) +
                                  " is not real nonnegative");
    }
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

Vector vectorize(const Matrix& rho) {
  // Eigen stores column-major, so the raw buffer already is the column stack.
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix devectorize(const Vector& v) {
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(v.size()))));
  if (dim * dim != v.size()) {
    throw std::invalid_argument("vector length is not a perfect square");
  }
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix superop_sandwich(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument("superop_sandwich needs square matrices of equal dimension");
  }
  return kron(b.transpose(), a);
}

Matrix matrix_exponential(const Matrix& m, double s) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix exponential needs a square matrix");
  }
  if (!m.allFinite() || !std::isfinite(s)) {
    throw std::invalid_argument("matrix exponential got non-finite input");
  }
  const Eigen::Index dim = m.rows();
  Matrix a = s * m;
  // 1-norm (max column sum) drives the scaling choice.
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) {
    return Matrix::Identity(dim, dim);  // exp(0) exactly
  }

  // Degree-13 diagonal Pade coefficients.
  static const double b[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double kTheta13 = 5.371920351148152;

  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    a /= std::pow(2.0, squarings);
  }

  const Matrix ident = Matrix::Identity(dim, dim);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
           b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * ident;
  Matrix f = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    f = f * f;
  }
  return f;
}

}  // namespace zenosq
