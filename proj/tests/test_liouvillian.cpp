#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "zenosq/liouvillian.hpp"

#include <numbers>
#include <random>

using namespace zenosq;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double upper_population(const Liouvillian& l, double t) {
  Matrix excited = Matrix::Zero(2, 2);
  excited(0, 0) = 1.0;
  const Matrix evolved =
      devectorize(matrix_exponential(l.matrix, t) * vectorize(excited));
  return evolved(0, 0).real();
}

}  // namespace

TEST_CASE("bath parameter validation and the derived M") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> n_dist(0.0, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    const BathParams params{1.0, n_dist(rng), 0.0};
    CHECK(std::abs(params.M() * params.M() - params.N * (params.N + 1.0)) <
          1e-12);
  }
  CHECK_THROWS_AS(BathParams({0.0, 1.0, 0.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(BathParams({-1.0, 1.0, 0.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(BathParams({1.0, -0.1, 0.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(BathParams({1.0, std::nan(""), 0.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_single_qubit({1.0, -1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_two_qubit({0.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("unsqueezed bath reduces to amplitude damping") {
  for (double gamma : {1.0, 2.5}) {
    const Liouvillian l = build_single_qubit({gamma, 0.0, 0.0});
    CHECK(max_abs(l.matrix - oracles::amplitude_damping_superop(gamma)) <
          1e-12);
  }
  const Liouvillian l = build_single_qubit({1.0, 0.0, 0.0});
  for (double t : {0.1, 0.5, 2.0}) {
    CHECK(std::abs(upper_population(l, t) - std::exp(-t)) < 1e-10);
  }
}

TEST_CASE("excited population follows the two-level rate equation") {
  const Liouvillian l = build_single_qubit({1.0, 1.0, 0.0});
  for (double t : {0.05, 0.3, 1.0, 4.0}) {
    const double expected = (1.0 + 2.0 * std::exp(-3.0 * t)) / 3.0;
    CHECK(std::abs(upper_population(l, t) - expected) < 1e-10);
    CHECK(std::abs(oracles::rate_equation_upper(1.0, t) - expected) < 1e-15);
  }
}

TEST_CASE("Lindblad-form and expanded constructions are identical") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> n_dist(0.0, 3.0);
  std::uniform_real_distribution<double> eta_dist(0.0, 2.0 * kPi);
  for (double gamma : {1.0, 2.3}) {
    for (int rep = 0; rep < 15; ++rep) {
      const BathParams params{gamma, n_dist(rng), eta_dist(rng)};
      const Liouvillian lindblad = build_single_qubit(params);
      const Liouvillian expanded = build_single_qubit_expanded(params);
      CHECK(max_abs(lindblad.matrix - expanded.matrix) < 1e-12);
    }
  }
}

TEST_CASE("generators preserve trace and hermiticity") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> n_dist(0.0, 3.0);
  std::uniform_real_distribution<double> eta_dist(0.0, 2.0 * kPi);
  for (int rep = 0; rep < 10; ++rep) {
    const BathParams params{1.0, n_dist(rng), eta_dist(rng)};
    for (const Liouvillian& l :
         {build_single_qubit(params), build_two_qubit(params)}) {
      // The trace functional annihilates the generator from the left.
      const Vector trace_row = vectorize(identity(l.dim));
      CHECK((trace_row.adjoint() * l.matrix).cwiseAbs().maxCoeff() < 1e-12);
      // Hermitian inputs map to Hermitian outputs.
      const Matrix rho = oracles::random_density(l.dim, rng);
      const Matrix image = l.apply(rho);
      CHECK(max_abs(image - image.adjoint()) < 1e-12);
      CHECK(std::abs(image.trace()) < 1e-12);
    }
  }
}

TEST_CASE("two-qubit generator annihilates the decoherence-free states") {
  for (const double eta : {0.0, 1.3}) {
    for (const double big_n : {1.0, 0.5, 2.7}) {
      const BathParams params{1.0, big_n, eta};
      const Liouvillian l = build_two_qubit(params);
      const double m = params.M();
      const Complex phase = std::exp(Complex{0.0, -eta});

      Vector pair_state = Vector::Zero(4);
      pair_state(0) = big_n / std::sqrt(big_n * big_n + m * m);
      pair_state(3) = m * phase / std::sqrt(big_n * big_n + m * m);
      const Matrix pair_rho = pair_state * pair_state.adjoint();
      CHECK(max_abs(l.apply(pair_rho)) < 1e-10);

      Vector singlet = Vector::Zero(4);
      singlet(1) = 1.0 / std::sqrt(2.0);
      singlet(2) = -1.0 / std::sqrt(2.0);
      const Matrix singlet_rho = singlet * singlet.adjoint();
      CHECK(max_abs(l.apply(singlet_rho)) < 1e-10);
    }
  }
}

TEST_CASE("two-qubit generator matches the single-collective-jump form") {
  // The four-block construction equals the Lindblad dissipator of the single
  // collective jump operator sqrt(N+1) S- - sqrt(N) e^{i eta} S+, expanded
  // term by term.  Unlike one qubit, S+S+ and S-S- do not vanish here, which
  // is why the squeezing blocks carry full anticommutator structure.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> n_dist(0.0, 3.0);
  std::uniform_real_distribution<double> eta_dist(0.0, 2.0 * kPi);
  for (int rep = 0; rep < 10; ++rep) {
    const BathParams params{1.0, n_dist(rng), eta_dist(rng)};
    const Liouvillian printed = build_two_qubit(params);

    const Matrix one = identity(2);
    const Matrix cm = kron(sigma_minus(), one) + kron(one, sigma_minus());
    const Matrix cp = kron(sigma_plus(), one) + kron(one, sigma_plus());
    const Complex phase = std::exp(Complex{0.0, params.eta});
    const Matrix jump = std::sqrt(params.N + 1.0) * cm -
                        std::sqrt(params.N) * phase * cp;
    const Matrix jd = jump.adjoint();
    const Matrix collective =
        (params.gamma / 2.0) *
        (2.0 * superop_sandwich(jump, jd) -
         superop_sandwich(identity(4), jd * jump) -
         superop_sandwich(jd * jump, identity(4)));
    CHECK(max_abs(printed.matrix - collective) < 1e-12);
  }
}
