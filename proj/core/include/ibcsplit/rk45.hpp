#pragma once

#include <Eigen/Core>
#include <functional>

namespace ibc {

/// rhs(t, u, dudt); dudt is pre-sized to u.size().
using OdeRhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct Rk45Options {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  long max_steps = 10'000'000;
  double safety = 0.9;
  double fac_min = 0.2;
  double fac_max = 10.0;
  double step_floor_rel = 1e-12;  // floor = step_floor_rel * (t1 - t0)
};

/// Endpoint of an adaptive Dormand-Prince 5(4) integration with PI step
/// control and componentwise error weights w_i = abs_tol + rel_tol * |u_i|.
/// Throws solver_stall_error (max_steps / step floor) or blowup_error (state
/// diverged while the controller collapsed the step).
Eigen::VectorXd rk45_solve(const OdeRhs& rhs, double t0, double t1, Eigen::VectorXd u0,
                           const Rk45Options& opt);

}  // namespace ibc
