#include "ibcsplit/integrators.hpp"

#include <stdexcept>
#include <string>

#include "ibcsplit/errors.hpp"
#include "ibcsplit/rk45.hpp"

namespace ibc {

std::string_view scheme_config_name(SchemeKind s) {
  return s == SchemeKind::classic_strang ? "classic" : "ibc";
}

std::optional<SchemeKind> scheme_from_name(std::string_view name) {
  if (name == "classic") return SchemeKind::classic_strang;
  if (name == "ibc") return SchemeKind::ibc_strang;
  return std::nullopt;
}

Eigen::VectorXd classic_strang_step(const DiscreteOperator& op, const Plan& plan,
                                    const ReactionTerm& f, const Eigen::VectorXd& u_n,
                                    double t_n, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("classic_strang_step: tau must be positive");
  Eigen::VectorXd u = diffusion_halfstep(op, plan, u_n, op.r(), 0.5 * tau);
  u = reaction_flow_raw(f, u, t_n, tau);
  return diffusion_halfstep(op, plan, u, op.r(), 0.5 * tau);
}

Eigen::VectorXd ibc_strang_step(const DiscreteOperator& op, const Plan& plan,
                                const ReactionTerm& f, const Eigen::VectorXd& u_n, double t_n,
                                double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("ibc_strang_step: tau must be positive");
  const IbcStepContext ctx = make_ibc_context(op, f, u_n, t_n);
  // (1) transformed diffusion from zero data: a pure phi1 evaluation
  Eigen::VectorXd v = diffusion_halfstep(op, plan, Eigen::VectorXd::Zero(op.dim()), ctx.source,
                                         0.5 * tau);
  // (2) shifted reaction over the full step
  v = reaction_flow_modified(ctx, v, t_n, tau);
  // (3) second transformed diffusion half-step
  v = diffusion_halfstep(op, plan, v, ctx.source, 0.5 * tau);
  // (4) undo the correction
  return u_n + v;
}

Eigen::VectorXd integrate(SchemeKind scheme, const DiscreteOperator& op, const Plan& plan,
                          const ReactionTerm& f, const Eigen::VectorXd& u0, double t_end,
                          long n_steps) {
  if (n_steps < 1) throw std::invalid_argument("integrate: n_steps must be >= 1");
  const double tau = t_end / static_cast<double>(n_steps);
  Eigen::VectorXd u = u0;
  for (long k = 0; k < n_steps; ++k) {
    const double t_n = static_cast<double>(k) * tau;
    try {
      u = scheme == SchemeKind::classic_strang
              ? classic_strang_step(op, plan, f, u, t_n, tau)
              : ibc_strang_step(op, plan, f, u, t_n, tau);
    } catch (const blowup_error& e) {
      throw blowup_error(std::string(e.what()) + " (step " + std::to_string(k) + ")",
                         e.component(), e.time(), k);
    }
  }
  return u;
}

Eigen::VectorXd reference_solve(const DiscreteOperator& op, const ReactionTerm& f,
                                const Eigen::VectorXd& u0, double t_end,
                                const ReferenceConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
    throw std::invalid_argument("reference_solve: tolerances must be positive");
  Rk45Options opt;
  opt.abs_tol = cfg.abs_tol;
  opt.rel_tol = cfg.rel_tol;
  opt.max_steps = cfg.max_steps;
  opt.safety = cfg.safety;
  opt.fac_min = cfg.fac_min;
  opt.fac_max = cfg.fac_max;
  Eigen::VectorXd lu(op.dim());
  return rk45_solve(
      [&op, &f, &lu](double t, const Eigen::VectorXd& u, Eigen::VectorXd& du) {
        op.apply(u, lu);
        du = lu + op.r();
        for (Eigen::Index i = 0; i < u.size(); ++i) du[i] += f.eval(t, u[i]);
      },
      0.0, t_end, u0, opt);
}

}  // namespace ibc
