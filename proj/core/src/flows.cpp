#include "ibcsplit/flows.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ibcsplit/errors.hpp"
#include "ibcsplit/rk45.hpp"

namespace ibc {

namespace {

Rk45Options reaction_rk_options() {
  Rk45Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-12;
  return opt;
}

[[noreturn]] void throw_blowup(const char* flow, Eigen::Index i, double t0, double dt) {
  throw blowup_error(std::string(flow) + " flow reaches its singularity within dt = " +
                         std::to_string(dt) + " at component " + std::to_string(i),
                     i, t0 + dt);
}

}  // namespace

Eigen::VectorXd diffusion_halfstep(const DiscreteOperator& op, const Plan& plan,
                                   const Eigen::VectorXd& v0,
                                   const Eigen::VectorXd& extra_source, double dt) {
  if (v0.size() != op.dim() || extra_source.size() != op.dim())
    throw std::invalid_argument("diffusion_halfstep: dimension mismatch");
  if (!(dt >= 0.0)) throw std::invalid_argument("diffusion_halfstep: dt must be >= 0");
  if (dt == 0.0) return v0;
  return affine_flow(plan, dt, v0, extra_source).state;
}

IbcStepContext make_ibc_context(const DiscreteOperator& op, const ReactionTerm& f,
                                const Eigen::VectorXd& u_n, double t_n) {
  if (!f.autonomous())
    throw std::invalid_argument(
        "corrected splitting requires an autonomous reaction term (time-dependent g_n is "
        "unsupported)");
  IbcStepContext ctx;
  ctx.base_state = u_n;
  ctx.source = op.apply(u_n) + op.r() + f.eval(t_n, u_n);
  ctx.reaction = f;
  return ctx;
}

Eigen::VectorXd reaction_flow_raw(const ReactionTerm& f, const Eigen::VectorXd& w0, double t0,
                                  double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("reaction_flow_raw: dt must be >= 0");
  if (dt == 0.0) return w0;

  const Eigen::Index n = w0.size();
  Eigen::VectorXd w(n);
  switch (f.kind) {
    case ReactionKind::square:
      for (Eigen::Index i = 0; i < n; ++i) {
        const double q = 1.0 - w0[i] * dt;
        if (!(q > 0.0)) throw_blowup("square reaction", i, t0, dt);
        w[i] = w0[i] / q;
      }
      return w;
    case ReactionKind::logistic:
      for (Eigen::Index i = 0; i < n; ++i) {
        const double denom = w0[i] + (f.capacity - w0[i]) * std::exp(-f.rate * dt);
        if (!(denom > 0.0) && w0[i] != 0.0) throw_blowup("logistic reaction", i, t0, dt);
        w[i] = w0[i] == 0.0 ? 0.0 : f.capacity * w0[i] / denom;
      }
      return w;
    case ReactionKind::custom_polynomial:
      return rk45_solve(
          [&f](double t, const Eigen::VectorXd& u, Eigen::VectorXd& du) {
            for (Eigen::Index i = 0; i < u.size(); ++i) du[i] = f.eval(t, u[i]);
          },
          t0, t0 + dt, w0, reaction_rk_options());
  }
  throw std::logic_error("unknown reaction kind");
}

Eigen::VectorXd reaction_flow_modified(const IbcStepContext& ctx, const Eigen::VectorXd& w0,
                                       double t0, double dt) {
  if (w0.size() != ctx.base_state.size())
    throw std::invalid_argument("reaction_flow_modified: dimension mismatch");
  if (!(dt >= 0.0)) throw std::invalid_argument("reaction_flow_modified: dt must be >= 0");
  if (dt == 0.0) return w0;

  const Eigen::Index n = w0.size();
  if (ctx.reaction.kind == ReactionKind::square) {
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w0[i] == 0.0) {  // h(t, 0) = 0: zero is a fixed point, kept bitwise
        w[i] = w0[i];
        continue;
      }
      const double c = ctx.base_state[i];
      const double q = 1.0 - dt * (w0[i] + 2.0 * c) * phi1(-2.0 * c * dt);
      if (!(q > 0.0)) throw_blowup("shifted square reaction", i, t0, dt);
      w[i] = w0[i] / q;
    }
    return w;
  }
  return rk45_solve(
      [&ctx](double t, const Eigen::VectorXd& u, Eigen::VectorXd& du) {
        for (Eigen::Index i = 0; i < u.size(); ++i)
          du[i] = ctx.h_eval(t, u[i], ctx.base_state[i]);
      },
      t0, t0 + dt, w0, reaction_rk_options());
}

}  // namespace ibc
