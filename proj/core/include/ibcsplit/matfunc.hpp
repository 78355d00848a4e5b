#pragma once

#include <Eigen/Core>
#include <variant>

#include "ibcsplit/operator.hpp"

namespace ibc {

/// phi1(z) = (e^z - 1)/z with the removable singularity at 0; switches to a
/// truncated series for |z| < 1e-5 so near-zero eigenvalues (Neumann
/// constant mode) evaluate without cancellation.
double phi1(double z);

/// Eigendecomposition of a diagonally symmetrizable tridiagonal operator:
/// G = B diag(lambda) F with F = Q^T S^{-1}, B = S Q.
struct SpectralPlan1D {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd forward;   // physical -> modal
  Eigen::MatrixXd backward;  // modal -> physical
  double symmetrizer_cond = 1.0;
};

/// Change of basis diagonalizing the discrete generator. 2D Kronecker sums
/// carry the pair of 1D plans; the effective spectrum is {lambda_i + mu_j}.
class SpectralPlan {
public:
  static SpectralPlan one_dim(SpectralPlan1D p);
  static SpectralPlan two_dim(SpectralPlan1D px, SpectralPlan1D py);

  bool is_2d() const { return ny_ > 0; }
  Eigen::Index dim() const;
  const SpectralPlan1D& px() const { return x_; }
  const SpectralPlan1D& py() const { return y_; }

  double max_eigenvalue() const;
  double symmetrizer_cond() const;

  Eigen::VectorXd forward(const Eigen::VectorXd& v) const;
  Eigen::VectorXd backward(const Eigen::VectorXd& modal) const;
  /// modal *= e^(t*lambda) mode-wise
  void scale_exp(double t, Eigen::VectorXd& modal) const;
  /// modal = e^(t*lambda) * modal + t * phi1(t*lambda) * source_modal
  void scale_affine(double t, Eigen::VectorXd& modal, const Eigen::VectorXd& source_modal) const;

private:
  SpectralPlan1D x_, y_;
  Eigen::Index ny_ = 0;  // 0 marks a 1D plan
};

/// Dense fallback: scaling-and-squaring matrix exponential on the full
/// operator. spectral_bound is a Gershgorin upper bound on Re(lambda).
struct DensePlan {
  Eigen::MatrixXd matrix;
  double spectral_bound = 0.0;
};

using Plan = std::variant<SpectralPlan, DensePlan>;

/// Throws not_symmetrizable_error when an off-diagonal pair has a
/// non-positive product (caller falls back to the dense path).
SpectralPlan plan_spectral(const DiscreteOperator& op);
DensePlan plan_dense(const DiscreteOperator& op);
/// Spectral when symmetrizable, dense otherwise (within the dense limit).
Plan make_plan(const DiscreteOperator& op);

enum class FlowBackend { spectral, dense };

struct AffineFlowDiagnostics {
  FlowBackend backend = FlowBackend::spectral;
  bool ill_conditioned_symmetrizer = false;
};

/// State of the affine flow v' = G v + g at time t.
struct AffineFlowResult {
  Eigen::VectorXd state;
  AffineFlowDiagnostics diagnostics;
};

/// e^(tG) v, t >= 0.
Eigen::VectorXd expm_action(const Plan& plan, double t, const Eigen::VectorXd& v);

/// Exact solution of v' = G v + g (g constant in time):
/// v(t) = e^(tG) v0 + t phi1(tG) g.
AffineFlowResult affine_flow(const Plan& plan, double t, const Eigen::VectorXd& v0,
                             const Eigen::VectorXd& g);

}  // namespace ibc
