#include "zenosq/measurement.hpp"

#include <cmath>
#include <numbers>

namespace zenosq {

namespace {

constexpr double kPi = std::numbers::pi;

double reduce_into(double angle, double lo, double period) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("angle must be finite");
  }
  double reduced = std::fmod(angle - lo, period);
  if (reduced < 0.0) reduced += period;
  return reduced + lo;
}

double clamp_polar(double angle) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("angle must be finite");
  }
  return std::min(kPi, std::max(0.0, angle));
}

// Survival of |psi> under one application of the vectorized step w = E v:
// Re <psi| devectorize(w) |psi>. Selective and non-selective modes share this
// so that their n = 1 results agree bit for bit. Allocation-free: the column
// stack is read in place.
double step_survival(const Matrix& propagator, const Vector& v,
                     const Vector& psi, Vector& scratch) {
  scratch.noalias() = propagator * v;
  const auto dim = psi.size();
  Complex bra_rho_ket{0.0, 0.0};
  for (Eigen::Index j = 0; j < dim; ++j) {
    Complex column{0.0, 0.0};
    for (Eigen::Index i = 0; i < dim; ++i) {
      column += std::conj(psi(i)) * scratch(j * dim + i);
    }
    bra_rho_ket += column * psi(j);
  }
  return bra_rho_ket.real();
}

void check_index(const MeasurementBasis& basis, int initial_index) {
  if (initial_index < 0 || initial_index >= basis.size()) {
    throw std::invalid_argument("initial state index " +
                                std::to_string(initial_index) +
                                " out of range for basis of size " +
                                std::to_string(basis.size()));
  }
}

void check_dims(const Liouvillian& liouville, const MeasurementBasis& basis) {
  if (liouville.dim != basis.dim()) {
    throw std::invalid_argument("generator dimension " +
                                std::to_string(liouville.dim) +
                                " does not match basis dimension " +
                                std::to_string(basis.dim()));
  }
}

}  // namespace

BlochDirection::BlochDirection(double theta_in, double phi_in)
    : theta(clamp_polar(theta_in)), phi(reduce_into(phi_in, 0.0, 2.0 * kPi)) {}

TwoQubitBasisParams::TwoQubitBasisParams(double alpha_in, double beta_in,
                                         double delta_in, double chi_in)
    : alpha(clamp_polar(alpha_in)),
      beta(reduce_into(beta_in, -kPi / 2.0, 2.0 * kPi)),
      delta(clamp_polar(delta_in)),
      chi(reduce_into(chi_in, -kPi / 2.0, 2.0 * kPi)) {}

MeasurementBasis::MeasurementBasis(std::vector<PureState> states)
    : states_(std::move(states)) {
  if (states_.empty()) {
    throw std::invalid_argument("measurement basis needs at least one state");
  }
  const int dim = states_[0].dim();
  if (static_cast<int>(states_.size()) != dim) {
    throw std::invalid_argument("measurement basis must have dim states");
  }
  Matrix completeness = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (states_[i].dim() != dim) {
      throw std::invalid_argument("measurement basis states differ in dimension");
    }
    completeness += states_[i].projector();
    for (int j = 0; j < i; ++j) {
      const Complex overlap =
          states_[i].amplitudes().dot(states_[j].amplitudes());
      if (std::abs(overlap) > 1e-12) {
        throw std::invalid_argument("measurement basis is not orthogonal");
      }
    }
  }
  if ((completeness - identity(dim)).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("measurement basis is not complete");
  }
}

const PureState& MeasurementBasis::state(int i) const {
  if (i < 0 || i >= size()) {
    throw std::invalid_argument("basis state index out of range");
  }
  return states_[static_cast<size_t>(i)];
}

Matrix MeasurementBasis::projector_superop() const {
  const int d2 = dim() * dim();
  Matrix superop = Matrix::Zero(d2, d2);
  for (const PureState& psi : states_) {
    const Matrix p = psi.projector();
    superop += superop_sandwich(p, p);
  }
  return superop;
}

MeasurementBasis bloch_basis(const BlochDirection& dir) {
  const double half = dir.theta / 2.0;
  const Complex phase = std::exp(Complex{0.0, dir.phi});
  Vector up(2), down(2);
  up << std::cos(half), std::sin(half) * phase;
  down << -std::sin(half), std::cos(half) * phase;
  std::vector<PureState> states;
  states.emplace_back(std::move(up));
  states.emplace_back(std::move(down));
  return MeasurementBasis(std::move(states));
}

MeasurementBasis two_qubit_basis(const TwoQubitBasisParams& p) {
  const double ha = p.alpha / 2.0;
  const double hd = p.delta / 2.0;
  const Complex eb = std::exp(Complex{0.0, p.beta});
  const Complex ec = std::exp(Complex{0.0, p.chi});
  // Basis order |00>, |01>, |10>, |11>.
  Vector s1 = Vector::Zero(4), s2 = Vector::Zero(4);
  Vector s3 = Vector::Zero(4), s4 = Vector::Zero(4);
  s1(0) = std::cos(ha);
  s1(3) = std::sin(ha) * eb;
  s2(0) = -std::sin(ha);
  s2(3) = std::cos(ha) * eb;
  s3(1) = std::cos(hd);
  s3(2) = std::sin(hd) * ec;
  s4(1) = -std::sin(hd);
  s4(2) = std::cos(hd) * ec;
  std::vector<PureState> states;
  states.emplace_back(std::move(s1));
  states.emplace_back(std::move(s2));
  states.emplace_back(std::move(s3));
  states.emplace_back(std::move(s4));
  return MeasurementBasis(std::move(states));
}

void ZenoSchedule::validate() const {
  if (!std::isfinite(total_time) || total_time <= 0.0) {
    throw std::invalid_argument("total_time must be positive");
  }
  if (n < 1) {
    throw std::invalid_argument("measurement count n must be at least 1");
  }
}

DensityMatrix nonselective_project(const MeasurementBasis& basis,
                                   const DensityMatrix& rho) {
  if (basis.dim() != rho.dim()) {
    throw std::invalid_argument("basis and state dimensions do not match");
  }
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < basis.size(); ++i) {
    const Matrix p = basis.state(i).projector();
    out += p * rho.matrix() * p;
  }
  return DensityMatrix(std::move(out));
}

Matrix step_propagator(const Liouvillian& liouville, double gamma_tau) {
  // Schedule times are gamma-scaled; the generator matrix carries gamma
  // explicitly, so the physical step is gamma_tau / gamma.
  return matrix_exponential(liouville.matrix, gamma_tau / liouville.params.gamma);
}

SurvivalResult survival_selective(const Liouvillian& liouville,
                                  const MeasurementBasis& basis,
                                  int initial_index, const ZenoSchedule& sched,
                                  bool record_per_step) {
  check_dims(liouville, basis);
  return survival_selective(step_propagator(liouville, sched.tau()), basis,
                            initial_index, sched, record_per_step);
}

SurvivalResult survival_selective(const Matrix& propagator,
                                  const MeasurementBasis& basis,
                                  int initial_index, const ZenoSchedule& sched,
                                  bool record_per_step) {
  sched.validate();
  check_index(basis, initial_index);
  const Vector& psi = basis.state(initial_index).amplitudes();
  const Vector v0 = vectorize(basis.state(initial_index).projector());
  Vector scratch(v0.size());
  const double s = step_survival(propagator, v0, psi, scratch);

  // Post-selection re-prepares |psi> each step, so the n-step survival is
  // s^n, evaluated in log space to keep deep decays exact.
  const auto power = [s](long k) {
    if (k == 1) return s;
    if (s <= 0.0) return 0.0;
    return std::exp(static_cast<double>(k) * std::log(s));
  };

  SurvivalResult result{power(sched.n), {},
                        DensityMatrix(basis.state(initial_index).projector())};
  if (record_per_step) {
    result.per_step.reserve(static_cast<size_t>(sched.n));
    for (long k = 1; k <= sched.n; ++k) {
      result.per_step.push_back(power(k));
    }
  }
  return result;
}

SurvivalResult survival_nonselective(const Liouvillian& liouville,
                                     const MeasurementBasis& basis,
                                     int initial_index,
                                     const ZenoSchedule& sched,
                                     bool record_per_step) {
  check_dims(liouville, basis);
  return survival_nonselective(step_propagator(liouville, sched.tau()), basis,
                               initial_index, sched, record_per_step);
}

SurvivalResult survival_nonselective(const Matrix& propagator,
                                     const MeasurementBasis& basis,
                                     int initial_index,
                                     const ZenoSchedule& sched,
                                     bool record_per_step) {
  sched.validate();
  check_index(basis, initial_index);
  const Vector& psi = basis.state(initial_index).amplitudes();
  const Matrix dephase = basis.projector_superop();

  Vector v = vectorize(basis.state(initial_index).projector());
  Vector scratch(v.size());
  SurvivalResult result{0.0, {}, DensityMatrix(basis.state(initial_index).projector())};
  if (record_per_step) {
    result.per_step.reserve(static_cast<size_t>(sched.n));
  }

  double survival = 0.0;
  for (long k = 1; k <= sched.n; ++k) {
    // The probability read-off commutes with the dephasing, so taking it
    // before the projector keeps n = 1 identical to the selective path.
    survival = step_survival(propagator, v, psi, scratch);
    if (record_per_step) {
      result.per_step.push_back(survival);
    }
    v.noalias() = dephase * scratch;

    const Eigen::Map<const Matrix> rho(v.data(), basis.dim(), basis.dim());
    double herm_drift = 0.0;
    Complex trace{0.0, 0.0};
    for (int i = 0; i < basis.dim(); ++i) {
      trace += rho(i, i);
      for (int j = 0; j <= i; ++j) {
        herm_drift =
            std::max(herm_drift, std::abs(rho(i, j) - std::conj(rho(j, i))));
      }
    }
    const double trace_drift = std::abs(trace - Complex{1.0, 0.0});
    if (herm_drift > 1e-8 || trace_drift > 1e-8) {
      throw std::runtime_error(
          "state drifted beyond 1e-8 during non-selective iteration");
    }
    if (herm_drift > 1e-12 || trace_drift > 1e-12) {
      Matrix fixed = (rho + rho.adjoint()) / 2.0;
      fixed /= fixed.trace().real();
      v = vectorize(fixed);
    }
  }

  result.probability = survival;
  result.final_state = DensityMatrix(devectorize(v));
  return result;
}

}  // namespace zenosq
