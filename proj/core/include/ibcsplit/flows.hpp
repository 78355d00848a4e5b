#pragma once

#include <Eigen/Core>

#include "ibcsplit/matfunc.hpp"
#include "ibcsplit/operator.hpp"
#include "ibcsplit/reaction.hpp"

namespace ibc {

/// Exact diffusion subflow v' = L_h v + extra_source over dt. The classic
/// scheme passes the boundary vector r; the corrected scheme passes the step
/// source g_n and must not add r again (homogeneous data on the transformed
/// variable).
Eigen::VectorXd diffusion_halfstep(const DiscreteOperator& op, const Plan& plan,
                                   const Eigen::VectorXd& v0,
                                   const Eigen::VectorXd& extra_source, double dt);

/// Per-step context of the corrected scheme: the correction z_n(t) = u_n,
/// the source g_n = L_h u_n + r + f(t_n, u_n), and the shifted nonlinearity
/// h(t, w) = f(t, w + u_n) - f(t, u_n) with h(t, 0) = 0.
struct IbcStepContext {
  Eigen::VectorXd base_state;  // u_n
  Eigen::VectorXd source;      // g_n
  ReactionTerm reaction;

  double h_eval(double t, double w, double c) const {
    return reaction.eval(t, w + c) - reaction.eval(t, c);
  }
};

/// Rejects non-autonomous reaction terms: g_n must stay constant over the
/// step for the affine subflow to be exact.
IbcStepContext make_ibc_context(const DiscreteOperator& op, const ReactionTerm& f,
                                const Eigen::VectorXd& u_n, double t_n);

/// Flow of w' = f(t, w): closed form where available (square, logistic),
/// otherwise an embedded RK solve at local tolerance 1e-12. Finite-time
/// singularities raise blowup_error naming the first offending component.
Eigen::VectorXd reaction_flow_raw(const ReactionTerm& f, const Eigen::VectorXd& w0, double t0,
                                  double dt);

/// Flow of w' = h(t, w). The square kind has the closed form
///   w(dt) = w0 / (1 - dt * (w0 + 2 c) * phi1(-2 c dt)),   c = u_n,
/// which reduces to w0 / (1 - w0 dt) as c -> 0. Zero stays exactly zero.
Eigen::VectorXd reaction_flow_modified(const IbcStepContext& ctx, const Eigen::VectorXd& w0,
                                       double t0, double dt);

}  // namespace ibc
