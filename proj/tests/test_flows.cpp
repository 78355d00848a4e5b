#include <doctest.h>

#include <cmath>
#include <random>

#include "ibcsplit/errors.hpp"
#include "ibcsplit/flows.hpp"
#include "ibcsplit/rk45.hpp"
#include "test_util.hpp"

using namespace ibc;

namespace {

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd x(1);
  x << v;
  return x;
}

IbcStepContext square_ctx(const Eigen::VectorXd& base) {
  IbcStepContext ctx;
  ctx.base_state = base;
  ctx.source = Eigen::VectorXd::Zero(base.size());
  ctx.reaction = ReactionTerm::square();
  return ctx;
}

/// RK oracle for the pointwise flows, local tolerance 1e-12.
Eigen::VectorXd rk_flow(const std::function<double(double, double)>& f,
                        const Eigen::VectorXd& w0, double t0, double dt) {
  Rk45Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-12;
  return rk45_solve(
      [&f](double t, const Eigen::VectorXd& u, Eigen::VectorXd& du) {
        for (Eigen::Index i = 0; i < u.size(); ++i) du[i] = f(t, u[i]);
      },
      t0, t0 + dt, w0, opt);
}

}  // namespace

TEST_CASE("diffusion_halfstep: closed forms") {
  {
    Tridiag t = Tridiag::zero(1);
    t.diag[0] = -4.0;
    const DiscreteOperator op = DiscreteOperator::from_tridiag(t, Eigen::VectorXd::Zero(1));
    const Plan plan = make_plan(op);
    CHECK(diffusion_halfstep(op, plan, scalar(2.0), scalar(0.0), 0.0)[0] == 2.0);
    CHECK(diffusion_halfstep(op, plan, scalar(2.0), scalar(0.0), 0.25)[0] ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  }
  {
    Tridiag t = Tridiag::zero(1);
    t.diag[0] = -1.0;
    const DiscreteOperator op = DiscreteOperator::from_tridiag(t, Eigen::VectorXd::Zero(1));
    const Plan plan = make_plan(op);
    CHECK(diffusion_halfstep(op, plan, scalar(0.0), scalar(1.0), 1.0)[0] ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  }
}

TEST_CASE("reaction_flow_raw: square closed form and blow-up") {
  CHECK(reaction_flow_raw(ReactionTerm::square(), scalar(1.0), 0.0, 0.5)[0] ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(reaction_flow_raw(ReactionTerm::square(), scalar(0.0), 0.0, 7.0)[0] == 0.0);

  try {
    reaction_flow_raw(ReactionTerm::square(), scalar(3.0), 0.0, 0.4);
    FAIL("expected blow-up");
  } catch (const blowup_error& e) {
    CHECK(e.component() == 0);
  }
  // the singular boundary w0 * dt = 1 blows up too
  CHECK_THROWS_AS(reaction_flow_raw(ReactionTerm::square(), scalar(2.0), 0.0, 0.5),
                  blowup_error);
  // first offending index is reported
  Eigen::VectorXd w0(3);
  w0 << 0.5, 4.0, 5.0;
  try {
    reaction_flow_raw(ReactionTerm::square(), w0, 0.0, 0.3);
    FAIL("expected blow-up");
  } catch (const blowup_error& e) {
    CHECK(e.component() == 1);
  }
}

TEST_CASE("reaction_flow_raw: logistic closed form against the RK oracle") {
  const ReactionTerm f = ReactionTerm::logistic(1.7, 2.0);
  const Eigen::VectorXd w0 = scalar(0.3);
  const Eigen::VectorXd closed = reaction_flow_raw(f, w0, 0.0, 0.4);
  const Eigen::VectorXd rk =
      rk_flow([&f](double t, double u) { return f.eval(t, u); }, w0, 0.0, 0.4);
  CHECK(closed[0] == doctest::Approx(rk[0]).epsilon(1e-10));
  // below-zero start runs into the finite-time singularity
  CHECK_THROWS_AS(reaction_flow_raw(ReactionTerm::logistic(1.0), scalar(-1.0), 0.0, 1.0),
                  blowup_error);
}

TEST_CASE("reaction_flow_modified: compatibility h(t, 0) = 0 holds bitwise") {
  std::mt19937 rng(3);
  for (ReactionTerm f :
       {ReactionTerm::square(), ReactionTerm::logistic(1.3, 0.8),
        ReactionTerm::polynomial({0.4, -0.3, 1.1, 0.2})}) {
    IbcStepContext ctx;
    ctx.base_state = test_util::random_vector(rng, 6, -2.0, 2.0);
    ctx.source = Eigen::VectorXd::Zero(6);
    ctx.reaction = f;
    const Eigen::VectorXd out =
        reaction_flow_modified(ctx, Eigen::VectorXd::Zero(6), 0.0, 0.13);
    for (Eigen::Index i = 0; i < 6; ++i) CHECK(out[i] == 0.0);
  }
}

TEST_CASE("reaction_flow_modified: square closed form against the substitution oracle") {
  // substitute w = what + c: w' = w^2 - c^2 with w(0) = what0 + c has the
  // closed form (w - c)/(w + c) = K e^(2 c t), K from the initial value.
  const double c = 1.0, what0 = 1.0, dt = 0.1;
  const double k = (what0 + c - c) / (what0 + c + c);
  const double e = k * std::exp(2.0 * c * dt);
  const double w_exact = c * (1.0 + e) / (1.0 - e);
  const double what_exact = w_exact - c;
  CHECK(what_exact == doctest::Approx(1.3734450154625418).epsilon(1e-12));

  const Eigen::VectorXd out =
      reaction_flow_modified(square_ctx(scalar(c)), scalar(what0), 0.0, dt);
  CHECK(out[0] == doctest::Approx(what_exact).epsilon(1e-12));
}

TEST_CASE("reaction_flow_modified: c = 0 reduces to the raw flow") {
  const Eigen::VectorXd out =
      reaction_flow_modified(square_ctx(scalar(0.0)), scalar(1.0), 0.0, 0.5);
  CHECK(out[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("reaction_flow_modified: blow-up above the unstable equilibrium") {
  // c < 0: equilibria at 0 and -2c; starting above -2c diverges in finite time
  CHECK_THROWS_AS(reaction_flow_modified(square_ctx(scalar(-0.5)), scalar(4.0), 0.0, 2.0),
                  blowup_error);
}

TEST_CASE("reaction flows compose: flow(dt1 + dt2) = flow(dt2) o flow(dt1)") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> wdist(-1.5, 1.5);
  std::uniform_real_distribution<double> tdist(0.01, 0.15);
  int tested = 0;
  while (tested < 50) {
    const double w0 = wdist(rng), c = wdist(rng);
    const double dt1 = tdist(rng), dt2 = tdist(rng);
    try {
      const Eigen::VectorXd direct_raw =
          reaction_flow_raw(ReactionTerm::square(), scalar(w0), 0.0, dt1 + dt2);
      const Eigen::VectorXd two_raw = reaction_flow_raw(
          ReactionTerm::square(),
          reaction_flow_raw(ReactionTerm::square(), scalar(w0), 0.0, dt1), dt1, dt2);
      CHECK(two_raw[0] == doctest::Approx(direct_raw[0]).epsilon(1e-10));

      const IbcStepContext ctx = square_ctx(scalar(c));
      const Eigen::VectorXd direct_mod =
          reaction_flow_modified(ctx, scalar(w0), 0.0, dt1 + dt2);
      const Eigen::VectorXd two_mod = reaction_flow_modified(
          ctx, reaction_flow_modified(ctx, scalar(w0), 0.0, dt1), dt1, dt2);
      CHECK(two_mod[0] == doctest::Approx(direct_mod[0]).epsilon(1e-10));
      ++tested;
    } catch (const blowup_error&) {
      // skip samples that hit the singularity
    }
  }
}

TEST_CASE("closed-form flows agree with the RK oracle on random samples") {
  std::mt19937 rng(97);
  std::uniform_real_distribution<double> vdist(-2.0, 2.0);
  std::uniform_real_distribution<double> tdist(0.0, 0.2);
  int tested = 0;
  while (tested < 100) {
    const double w0 = vdist(rng), c = vdist(rng), dt = tdist(rng);
    // exclude near-singular denominators
    if (std::abs(1.0 - w0 * dt) < 0.1) continue;
    const double q_mod = 1.0 - dt * (w0 + 2.0 * c) * phi1(-2.0 * c * dt);
    if (std::abs(q_mod) < 0.1) continue;

    const Eigen::VectorXd raw =
        reaction_flow_raw(ReactionTerm::square(), scalar(w0), 0.0, dt);
    const Eigen::VectorXd raw_rk =
        rk_flow([](double, double u) { return u * u; }, scalar(w0), 0.0, dt);
    CHECK(std::abs(raw[0] - raw_rk[0]) <= 1e-9);

    const IbcStepContext ctx = square_ctx(scalar(c));
    const Eigen::VectorXd mod = reaction_flow_modified(ctx, scalar(w0), 0.0, dt);
    const Eigen::VectorXd mod_rk = rk_flow(
        [c](double, double u) { return (u + c) * (u + c) - c * c; }, scalar(w0), 0.0, dt);
    CHECK(std::abs(mod[0] - mod_rk[0]) <= 1e-9);
    ++tested;
  }
}

TEST_CASE("reaction flows are consistent: (flow(dt) - w0)/dt -> f(w0)") {
  const double w0 = 0.8, c = -0.3;  // w0 != -2c, so the shifted flow is not stationary
  const IbcStepContext ctx = square_ctx(scalar(c));
  std::vector<std::pair<double, double>> raw_pts, mod_pts;
  for (int k = 0; k < 4; ++k) {
    const double dt = 0.01 / std::pow(2.0, k);
    const double raw_rate =
        (reaction_flow_raw(ReactionTerm::square(), scalar(w0), 0.0, dt)[0] - w0) / dt;
    raw_pts.emplace_back(dt, std::abs(raw_rate - w0 * w0));
    const double mod_rate =
        (reaction_flow_modified(ctx, scalar(w0), 0.0, dt)[0] - w0) / dt;
    mod_pts.emplace_back(dt, std::abs(mod_rate - ctx.h_eval(0.0, w0, c)));
  }
  CHECK(test_util::loglog_slope(raw_pts) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(test_util::loglog_slope(mod_pts) == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("polynomial reaction uses the RK path") {
  const ReactionTerm f = ReactionTerm::polynomial({0.0, -1.0});  // f(u) = -u
  const Eigen::VectorXd out = reaction_flow_raw(f, scalar(1.0), 0.0, 1.0);
  CHECK(out[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  // zero polynomial freezes the state
  CHECK(reaction_flow_raw(ReactionTerm::zero(), scalar(0.7), 0.0, 2.0)[0] ==
        doctest::Approx(0.7).epsilon(1e-14));
}
