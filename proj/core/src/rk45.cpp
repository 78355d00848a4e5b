#include "ibcsplit/rk45.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ibcsplit/errors.hpp"

namespace ibc {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - bhat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& u_old,
                  const Eigen::VectorXd& u_new, double abs_tol, double rel_tol) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double w = abs_tol + rel_tol * std::max(std::abs(u_old[i]), std::abs(u_new[i]));
    const double q = err[i] / w;
    sum += q * q;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step(const OdeRhs& rhs, double t0, double span, const Eigen::VectorXd& u0,
                    const Eigen::VectorXd& f0, double abs_tol, double rel_tol) {
  const auto wnorm = [&](const Eigen::VectorXd& v) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double w = abs_tol + rel_tol * std::abs(u0[i]);
      sum += (v[i] / w) * (v[i] / w);
    }
    return std::sqrt(sum / static_cast<double>(v.size()));
  };
  const double d0 = wnorm(u0);
  const double d1 = wnorm(f0);
  double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * (d0 / d1);
  h = std::min(h, span);

  Eigen::VectorXd u1 = u0 + h * f0;
  Eigen::VectorXd f1(u0.size());
  rhs(t0 + h, u1, f1);
  const double d2 = wnorm(f1 - f0) / h;
  double h1;
  if (std::max(d1, d2) <= 1e-15)
    h1 = std::max(1e-6 * span, h * 1e-3);
  else
    h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
  return std::min({100.0 * h, h1, span});
}

}  // namespace

Eigen::VectorXd rk45_solve(const OdeRhs& rhs, double t0, double t1, Eigen::VectorXd u0,
                           const Rk45Options& opt) {
  if (!(opt.abs_tol > 0.0) || !(opt.rel_tol > 0.0))
    throw std::invalid_argument("rk45: tolerances must be positive");
  if (t1 < t0) throw std::invalid_argument("rk45: t1 < t0");
  if (t1 == t0) return u0;

  const double span = t1 - t0;
  const double h_floor = opt.step_floor_rel * span;
  const Eigen::Index n = u0.size();

  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  Eigen::VectorXd u_stage(n), u_new(n), err(n);

  double t = t0;
  rhs(t, u0, k1);
  double h = initial_step(rhs, t0, span, u0, k1, opt.abs_tol, opt.rel_tol);
  if (!std::isfinite(h) || h <= 0.0) h = 1e-6 * span;

  // Hairer's PI controller for dopri5.
  constexpr double beta = 0.04;
  constexpr double expo1 = 0.2 - beta * 0.75;
  double facold = 1e-4;
  bool rejected = false;
  bool saw_nonfinite = false;

  for (long step = 0; step < opt.max_steps; ++step) {
    if (t + h > t1) h = t1 - t;

    u_stage = u0 + h * (a21 * k1);
    rhs(t + c2 * h, u_stage, k2);
    u_stage = u0 + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, u_stage, k3);
    u_stage = u0 + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, u_stage, k4);
    u_stage = u0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, u_stage, k5);
    u_stage = u0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, u_stage, k6);
    u_new = u0 + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, u_new, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm;
    if (!u_new.allFinite() || !err.allFinite()) {
      saw_nonfinite = true;
      err_norm = std::numeric_limits<double>::infinity();
    } else {
      err_norm = error_norm(err, u0, u_new, opt.abs_tol, opt.rel_tol);
    }

    if (err_norm <= 1.0) {
      // accept
      t += h;
      u0.swap(u_new);
      k1.swap(k7);  // FSAL
      saw_nonfinite = false;
      if (t >= t1) return u0;

      const double fac11 = std::pow(std::max(err_norm, 1e-16), expo1);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(1.0 / opt.fac_max, std::min(1.0 / opt.fac_min, fac / opt.safety));
      double h_new = h / fac;
      if (rejected) h_new = std::min(h_new, h);
      rejected = false;
      facold = std::max(err_norm, 1e-4);
      h = h_new;
    } else {
      rejected = true;
      if (std::isinf(err_norm)) {
        h *= 0.5;
      } else {
        const double fac11 = std::pow(err_norm, expo1);
        h = h / std::min(1.0 / opt.fac_min, fac11 / opt.safety);
      }
    }

    if (h < h_floor) {
      if (saw_nonfinite) {
        Eigen::Index worst = 0;
        u0.cwiseAbs().maxCoeff(&worst);
        throw blowup_error("solution diverged near t = " + std::to_string(t), worst, t);
      }
      throw solver_stall_error("rk45: step size fell below the floor at t = " +
                               std::to_string(t));
    }
  }
  throw solver_stall_error("rk45: max_steps (" + std::to_string(opt.max_steps) +
                           ") exceeded at t = " + std::to_string(t));
}

}  // namespace ibc
