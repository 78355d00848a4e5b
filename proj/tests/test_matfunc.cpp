#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ibcsplit/errors.hpp"
#include "ibcsplit/matfunc.hpp"
#include "test_util.hpp"

using namespace ibc;

namespace {
constexpr double kPi = 3.14159265358979323846;

DiscreteOperator scalar_op(double g) {
  Tridiag t = Tridiag::zero(1);
  t.diag[0] = g;
  return DiscreteOperator::from_tridiag(std::move(t), Eigen::VectorXd::Zero(1));
}

DiscreteOperator laplacian_1d(Eigen::Index n_int, const FaceBC& left, const FaceBC& right) {
  const Grid1D g = build_grid_1d(0.0, 1.0, n_int, left, right);
  return assemble_operator_1d(g, EllipticCoefficients1D::laplacian(), left, right);
}

std::vector<FaceBC> face_kinds() {
  return {FaceBC::dirichlet_bc(0.0), FaceBC::neumann_bc(0.0), FaceBC::robin_bc(1.0, 1.0, 0.0)};
}
}  // namespace

TEST_CASE("phi1: series region matches the truncated series without cancellation") {
  CHECK(phi1(0.0) == 1.0);
  for (double z : {1e-6, -1e-6, 3e-7, -4.5e-8, 1e-9, -1e-12}) {
    const double series = 1.0 + z / 2.0 + z * z / 6.0;
    CHECK(std::abs(phi1(z) - series) <= 1e-12 * std::abs(series));
  }
}

TEST_CASE("phi1: closed form away from zero") {
  CHECK(phi1(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(phi1(-1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  // continuity across the series switch
  CHECK(phi1(1.0000001e-5) == doctest::Approx(phi1(0.9999999e-5)).epsilon(1e-10));
}

TEST_CASE("plan_spectral: Dirichlet Laplacian eigenvalues in closed form") {
  // -4/h^2 sin^2(k pi / (2 (n+1))) with h = 1/4, n = 3
  const DiscreteOperator op = laplacian_1d(3, FaceBC::dirichlet_bc(), FaceBC::dirichlet_bc());
  const SpectralPlan plan = plan_spectral(op);
  Eigen::Vector3d expected;
  for (int k = 1; k <= 3; ++k) {
    const double s = std::sin(k * kPi / 8.0);
    expected[k - 1] = -4.0 * 16.0 * s * s;
  }
  std::sort(expected.data(), expected.data() + 3);  // plan eigenvalues come sorted ascending
  CHECK(plan.px().eigenvalues.isApprox(expected, 1e-12));
  // spot values
  CHECK(plan.px().eigenvalues[0] == doctest::Approx(-54.62741699796952).epsilon(1e-12));
  CHECK(plan.px().eigenvalues[1] == doctest::Approx(-32.0).epsilon(1e-12));
  CHECK(plan.px().eigenvalues[2] == doctest::Approx(-9.372583002030480).epsilon(1e-12));
}

TEST_CASE("plan_spectral: diagonal operator keeps its diagonal as spectrum") {
  Tridiag t = Tridiag::zero(4);
  t.diag << -3.0, -1.0, -4.0, -2.0;
  const DiscreteOperator op = DiscreteOperator::from_tridiag(t, Eigen::VectorXd::Zero(4));
  const SpectralPlan plan = plan_spectral(op);
  Eigen::VectorXd expected = t.diag;
  std::sort(expected.data(), expected.data() + 4);
  CHECK(plan.px().eigenvalues.isApprox(expected, 1e-14));
  const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);
  CHECK(plan.backward(plan.forward(v)).isApprox(v, 1e-13));
}

TEST_CASE("plan_spectral: Neumann-Neumann Laplacian has the zero mode") {
  const DiscreteOperator op = laplacian_1d(31, FaceBC::neumann_bc(), FaceBC::neumann_bc());
  const SpectralPlan plan = plan_spectral(op);
  const double scale = op.tridiag().diag.cwiseAbs().maxCoeff();
  CHECK(plan.px().eigenvalues.cwiseAbs().minCoeff() <= 1e-9 * scale);
}

TEST_CASE("plan_spectral: reconstruction invariant over BC combinations") {
  std::mt19937 rng(11);
  for (const FaceBC& left : face_kinds()) {
    for (const FaceBC& right : face_kinds()) {
      const DiscreteOperator op = laplacian_1d(17, left, right);
      const SpectralPlan plan = plan_spectral(op);
      for (int k = 0; k < 10; ++k) {
        const Eigen::VectorXd v = test_util::random_vector(rng, op.dim());
        Eigen::VectorXd modal = plan.forward(v);
        for (Eigen::Index i = 0; i < modal.size(); ++i)
          modal[i] *= plan.px().eigenvalues[i];
        const Eigen::VectorXd via_plan = plan.backward(modal);
        const Eigen::VectorXd direct = op.apply(v);
        CHECK((via_plan - direct).lpNorm<Eigen::Infinity>() <=
              1e-12 * direct.lpNorm<Eigen::Infinity>());
      }
    }
  }
}

TEST_CASE("plan_spectral: rejects sign-flipped off-diagonals; make_plan falls back") {
  Tridiag t = Tridiag::zero(3);
  t.diag << -1.0, -1.0, -1.0;
  t.upper << 1.0, 1.0;
  t.lower << -1.0, -1.0;
  const DiscreteOperator op = DiscreteOperator::from_tridiag(t, Eigen::VectorXd::Zero(3));
  CHECK_THROWS_AS(plan_spectral(op), not_symmetrizable_error);
  const Plan plan = make_plan(op);
  CHECK(std::holds_alternative<DensePlan>(plan));
  const Eigen::VectorXd v = Eigen::Vector3d(1.0, -2.0, 0.5);
  CHECK(expm_action(plan, 0.0, v).isApprox(v, 1e-14));
}

TEST_CASE("expm_action: identity at t = 0 and the scalar closed form") {
  const DiscreteOperator op = scalar_op(-1.0);
  const Plan plan = make_plan(op);
  Eigen::VectorXd v(1);
  v << 1.0;
  CHECK(expm_action(plan, 0.0, v)[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expm_action(plan, 1.0, v)[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("expm_action: semigroup law on a random tridiagonal") {
  std::mt19937 rng(23);
  const Tridiag t = test_util::random_stable_tridiag(rng, 24);
  const DiscreteOperator op = DiscreteOperator::from_tridiag(t, Eigen::VectorXd::Zero(24));
  const Plan plan = make_plan(op);
  REQUIRE(std::holds_alternative<SpectralPlan>(plan));
  const Eigen::VectorXd v = test_util::random_vector(rng, 24);
  const Eigen::VectorXd halves = expm_action(plan, 0.3, expm_action(plan, 0.2, v));
  const Eigen::VectorXd whole = expm_action(plan, 0.5, v);
  CHECK((halves - whole).lpNorm<Eigen::Infinity>() <= 1e-10 * whole.lpNorm<Eigen::Infinity>());
}

TEST_CASE("expm_action: rejects overflowing positive spectra and negative t") {
  const DiscreteOperator op = scalar_op(1000.0);
  const Plan plan = make_plan(op);
  Eigen::VectorXd v(1);
  v << 1.0;
  CHECK_THROWS_AS(expm_action(plan, 1.0, v), stability_error);
  CHECK_THROWS_AS(expm_action(plan, -0.1, v), std::invalid_argument);
  CHECK(expm_action(plan, 1e-4, v)[0] == doctest::Approx(std::exp(0.1)).epsilon(1e-13));
}

TEST_CASE("affine_flow: reduces to expm_action for g = 0") {
  std::mt19937 rng(5);
  const Tridiag t = test_util::random_stable_tridiag(rng, 12);
  const DiscreteOperator op = DiscreteOperator::from_tridiag(t, Eigen::VectorXd::Zero(12));
  const Plan plan = make_plan(op);
  const Eigen::VectorXd v = test_util::random_vector(rng, 12);
  const Eigen::VectorXd g = Eigen::VectorXd::Zero(12);
  CHECK(affine_flow(plan, 0.4, v, g).state.isApprox(expm_action(plan, 0.4, v), 1e-13));
}

TEST_CASE("affine_flow: scalar closed forms") {
  // v(t) = (v0 + g/G) e^(tG) - g/G for scalar G != 0
  {
    const Plan plan = make_plan(scalar_op(-2.0));
    Eigen::VectorXd v0(1), g(1);
    v0 << 1.0;
    g << 3.0;
    const double expected = (1.0 - 1.5) * std::exp(-1.0) + 1.5;
    CHECK(affine_flow(plan, 0.5, v0, g).state[0] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(1.3160602794142788).epsilon(1e-12));
  }
  // zero-eigenvalue limit: v(t) = v0 + t g
  {
    const Plan plan = make_plan(scalar_op(0.0));
    Eigen::VectorXd v0(1), g(1);
    v0 << 0.0;
    g << 1.0;
    CHECK(affine_flow(plan, 0.7, v0, g).state[0] == doctest::Approx(0.7).epsilon(1e-15));
  }
}

TEST_CASE("affine_flow: finite-difference residual satisfies the ODE") {
  std::mt19937 rng(71);
  const Tridiag t = test_util::random_stable_tridiag(rng, 48);
  const DiscreteOperator op = DiscreteOperator::from_tridiag(t, Eigen::VectorXd::Zero(48));
  const Plan plan = make_plan(op);
  const Eigen::VectorXd v0 = test_util::random_vector(rng, 48);
  const Eigen::VectorXd g = test_util::random_vector(rng, 48);

  const double t0 = 0.1, dt = 1e-4;
  const Eigen::VectorXd vm = affine_flow(plan, t0 - dt, v0, g).state;
  const Eigen::VectorXd vc = affine_flow(plan, t0, v0, g).state;
  const Eigen::VectorXd vp = affine_flow(plan, t0 + dt, v0, g).state;
  const Eigen::VectorXd dv = (vp - vm) / (2.0 * dt);
  const Eigen::VectorXd rhs = op.apply(vc) + g;
  CHECK((dv - rhs).lpNorm<Eigen::Infinity>() <=
        1e-6 * (op.apply(vc).lpNorm<Eigen::Infinity>() + g.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("backend equivalence: spectral vs dense over all 1D BC combinations") {
  std::mt19937 rng(13);
  for (const FaceBC& left : face_kinds()) {
    for (const FaceBC& right : face_kinds()) {
      for (Eigen::Index n_int : {15, 62}) {
        const DiscreteOperator op = laplacian_1d(n_int, left, right);
        const Plan spectral{plan_spectral(op)};
        const Plan dense{plan_dense(op)};
        const Eigen::VectorXd v = test_util::random_vector(rng, op.dim());
        const Eigen::VectorXd g = test_util::random_vector(rng, op.dim());
        const double tau = 0.05;

        const Eigen::VectorXd es = expm_action(spectral, tau, v);
        const Eigen::VectorXd ed = expm_action(dense, tau, v);
        CHECK((es - ed).lpNorm<Eigen::Infinity>() <= 1e-10 * ed.lpNorm<Eigen::Infinity>());

        const Eigen::VectorXd as = affine_flow(spectral, tau, v, g).state;
        const Eigen::VectorXd ad = affine_flow(dense, tau, v, g).state;
        CHECK((as - ad).lpNorm<Eigen::Infinity>() <= 1e-10 * ad.lpNorm<Eigen::Infinity>());
      }
    }
  }
}

TEST_CASE("backend equivalence: 2D Kronecker path vs dense on an 8x8 grid") {
  std::mt19937 rng(17);
  Faces2D faces;
  faces.left = faces.right = FaceBC::neumann_bc(0.0);
  faces.bottom = FaceBC::dirichlet_bc(0.0);
  faces.top = FaceBC::robin_bc(1.0, 1.0, 0.0);
  const Grid2D grid = build_grid_2d(0.0, 1.0, 0.0, 1.0, 8, 8, faces);
  const DiscreteOperator op = assemble_laplacian_2d(grid, faces);
  const Plan spectral{plan_spectral(op)};
  const Plan dense{plan_dense(op)};

  const Eigen::VectorXd v = test_util::random_vector(rng, op.dim());
  const Eigen::VectorXd g = test_util::random_vector(rng, op.dim());
  const Eigen::VectorXd as = affine_flow(spectral, 0.01, v, g).state;
  const Eigen::VectorXd ad = affine_flow(dense, 0.01, v, g).state;
  CHECK((as - ad).lpNorm<Eigen::Infinity>() <= 1e-10 * ad.lpNorm<Eigen::Infinity>());
}

TEST_CASE("affine_flow: dimension mismatch is rejected") {
  const Plan plan = make_plan(scalar_op(-1.0));
  Eigen::VectorXd v0(1), g(2);
  v0 << 1.0;
  g << 1.0, 2.0;
  CHECK_THROWS_AS(affine_flow(plan, 0.1, v0, g), std::invalid_argument);
}
