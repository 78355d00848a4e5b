#pragma once

#include <Eigen/Core>
#include <optional>
#include <string_view>

#include "ibcsplit/flows.hpp"

namespace ibc {

enum class SchemeKind { classic_strang, ibc_strang };

std::string_view scheme_config_name(SchemeKind s);  // "classic" / "ibc"
std::optional<SchemeKind> scheme_from_name(std::string_view name);

/// One step of classic Strang splitting: diffusion (with boundary vector r)
/// for tau/2, reaction for tau, diffusion for tau/2.
Eigen::VectorXd classic_strang_step(const DiscreteOperator& op, const Plan& plan,
                                    const ReactionTerm& f, const Eigen::VectorXd& u_n,
                                    double t_n, double tau);

/// One step of initial-boundary corrected Strang splitting: subtract the
/// correction z_n = u_n, split the transformed problem (source g_n carries
/// the boundary vector; substeps use homogeneous data), add u_n back.
Eigen::VectorXd ibc_strang_step(const DiscreteOperator& op, const Plan& plan,
                                const ReactionTerm& f, const Eigen::VectorXd& u_n, double t_n,
                                double tau);

/// Constant-step driver from t = 0; blow-ups are rethrown with the step
/// index attached.
Eigen::VectorXd integrate(SchemeKind scheme, const DiscreteOperator& op, const Plan& plan,
                          const ReactionTerm& f, const Eigen::VectorXd& u0, double t_end,
                          long n_steps);

struct ReferenceConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  long max_steps = 10'000'000;
  double safety = 0.9;
  double fac_min = 0.2;
  double fac_max = 10.0;
};

/// Endpoint of u' = L_h u + r + f(t, u) via the adaptive embedded 5(4) pair.
Eigen::VectorXd reference_solve(const DiscreteOperator& op, const ReactionTerm& f,
                                const Eigen::VectorXd& u0, double t_end,
                                const ReferenceConfig& cfg);

}  // namespace ibc
