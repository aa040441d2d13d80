#include "zenosq/analytic.hpp"

#include <cmath>
#include <numbers>

namespace zenosq {

namespace {

constexpr double kPi = std::numbers::pi;

double reduce_principal(double phi) {
  // Principal azimuthal range [-pi/2, 3 pi/2).
  double reduced = std::fmod(phi + kPi / 2.0, 2.0 * kPi);
  if (reduced < 0.0) reduced += 2.0 * kPi;
  return reduced - kPi / 2.0;
}

}  // namespace

double c1(const BathParams& params, const BlochDirection& dir) {
  params.validate();
  const double c = std::cos(dir.theta);
  const double s2 = std::sin(dir.theta) * std::sin(dir.theta);
  return -params.gamma / 2.0 *
         ((params.N + 0.5) * (1.0 + c * c) + c +
          params.M() * s2 * std::cos(2.0 * dir.phi + params.eta));
}

double c2(const BathParams& params, const BlochDirection& dir) {
  params.validate();
  const double c = std::cos(dir.theta);
  const double s2 = std::sin(dir.theta) * std::sin(dir.theta);
  return params.gamma / 2.0 *
         ((params.N + 0.5) * (1.0 + c * c) - c +
          params.M() * s2 * std::cos(2.0 * dir.phi + params.eta));
}

ZenoRates zeno_rates(const BathParams& params, const BlochDirection& dir) {
  return {c1(params, dir), c2(params, dir)};
}

double survival_selective_limit(const BathParams& params,
                                const BlochDirection& dir, double total_time) {
  // total_time is gamma-scaled, so the exponent uses the dimensionless rate.
  return std::exp(c1(params, dir) / params.gamma * total_time);
}

double survival_nonselective_limit(const BathParams& params,
                                   const BlochDirection& dir,
                                   double total_time) {
  const ZenoRates r = zeno_rates(params, dir);
  const double gap = r.c2 - r.c1;
  // Written over the common denominator so that t = 0 gives exactly 1; the
  // exponent converts the gamma-scaled time back to a plain rate * time.
  return (r.c2 - r.c1 * std::exp(-gap / params.gamma * total_time)) / gap;
}

double survival_nonselective_stationary(const BathParams& params,
                                        const BlochDirection& dir) {
  const ZenoRates r = zeno_rates(params, dir);
  return r.c2 / (r.c2 - r.c1);
}

std::vector<ZenoPoint> zeno_points(const BathParams& params) {
  params.validate();
  // (N - M)/(N + M) rewritten as -1/(2(N + M + 1/2)), which stays well
  // defined in the N -> 0 limit (where it tends to -1).
  const double cos_theta = -1.0 / (2.0 * (params.N + params.M() + 0.5));
  const double theta_z = std::acos(cos_theta);
  const double phi_z = (kPi - params.eta) / 2.0;

  std::vector<ZenoPoint> points;
  points.push_back(
      {theta_z, reduce_principal(phi_z), ZenoPoint::Kind::zeno});
  points.push_back(
      {theta_z, reduce_principal(phi_z + kPi), ZenoPoint::Kind::zeno});
  points.push_back({kPi - theta_z, reduce_principal(phi_z + kPi),
                    ZenoPoint::Kind::anti_zeno});
  points.push_back({kPi - theta_z, reduce_principal(phi_z + 2.0 * kPi),
                    ZenoPoint::Kind::anti_zeno});

  for (const ZenoPoint& p : points) {
    const BlochDirection dir{p.theta_z, p.phi_z};
    const double defining = p.kind == ZenoPoint::Kind::zeno
                                ? c1(params, dir)
                                : c2(params, dir);
    if (std::abs(defining / params.gamma) > 1e-12) {
      throw std::logic_error("zeno point does not satisfy its defining condition");
    }
  }
  return points;
}

double q1(const BathParams& params, double alpha, double beta) {
  params.validate();
  return -params.gamma *
         (2.0 * params.N + 1.0 + std::cos(alpha) -
          2.0 * params.M() * std::sin(alpha) * std::cos(beta + params.eta));
}

double q3(const BathParams& params, double delta, double chi) {
  params.validate();
  return -params.gamma * (2.0 * params.N + 1.0) *
         (std::sin(delta) * std::cos(chi) + 1.0);
}

std::pair<PureState, PureState> dfzs_states(const BathParams& params) {
  params.validate();
  const double norm = std::sqrt(2.0 * params.N + 1.0);
  const Complex phase = std::exp(Complex{0.0, -params.eta});
  Vector bright = Vector::Zero(4);
  bright(0) = std::sqrt(params.N) / norm;
  bright(3) = std::sqrt(params.N + 1.0) * phase / norm;
  Vector singlet = Vector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  return {PureState(std::move(bright)), PureState(std::move(singlet))};
}

ClosedSystemRate closed_system_epsilon(const Matrix& hamiltonian,
                                       const PureState& psi) {
  if (hamiltonian.rows() != 2 || hamiltonian.cols() != 2 || psi.dim() != 2) {
    throw std::invalid_argument("closed-system baseline is for one qubit");
  }
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  }
  const Vector& a = psi.amplitudes();
  const double mean = (a.adjoint() * hamiltonian * a)(0, 0).real();
  const double mean_sq =
      (a.adjoint() * hamiltonian * hamiltonian * a)(0, 0).real();
  // A variance; tiny negative rounding is clamped away.
  return {std::max(0.0, mean_sq - mean * mean)};
}

double closed_system_survival(const ClosedSystemRate& rate, long n, double t) {
  if (rate.epsilon < 0.0 || !std::isfinite(rate.epsilon)) {
    throw std::invalid_argument("epsilon must be finite and nonnegative");
  }
  if (n < 1 || !std::isfinite(t)) {
    throw std::invalid_argument("need n >= 1 and finite t");
  }
  const double step = t / static_cast<double>(n);
  const double base = 1.0 - rate.epsilon * step * step;
  if (base <= 0.0) return 0.0;
  return std::pow(base, static_cast<double>(n));
}

}  // namespace zenosq
