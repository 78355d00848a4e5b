#include "ibcsplit/matfunc.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ibcsplit/errors.hpp"

namespace ibc {

namespace {
constexpr double kPhi1SeriesCutoff = 1e-5;
constexpr double kExpOverflowArg = 700.0;  // e^709 overflows
constexpr double kIllConditionedSymmetrizer = 1e8;

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_nonnegative_time(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("matrix function action requires t >= 0");
}

void require_no_overflow(double t, double max_eig) {
  if (t * max_eig > kExpOverflowArg)
    throw stability_error("operator exponential overflows: t * max(Re lambda) = " +
                          std::to_string(t * max_eig));
}
}  // namespace

double phi1(double z) {
  if (std::abs(z) < kPhi1SeriesCutoff)
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  return std::expm1(z) / z;
}

SpectralPlan SpectralPlan::one_dim(SpectralPlan1D p) {
  SpectralPlan plan;
  plan.x_ = std::move(p);
  plan.ny_ = 0;
  return plan;
}

SpectralPlan SpectralPlan::two_dim(SpectralPlan1D px, SpectralPlan1D py) {
  SpectralPlan plan;
  plan.x_ = std::move(px);
  plan.y_ = std::move(py);
  plan.ny_ = plan.y_.eigenvalues.size();
  return plan;
}

Eigen::Index SpectralPlan::dim() const {
  return is_2d() ? x_.eigenvalues.size() * ny_ : x_.eigenvalues.size();
}

double SpectralPlan::max_eigenvalue() const {
  double m = x_.eigenvalues.maxCoeff();
  if (is_2d()) m += y_.eigenvalues.maxCoeff();
  return m;
}

double SpectralPlan::symmetrizer_cond() const {
  return is_2d() ? std::max(x_.symmetrizer_cond, y_.symmetrizer_cond) : x_.symmetrizer_cond;
}

Eigen::VectorXd SpectralPlan::forward(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) throw std::invalid_argument("spectral forward: dimension mismatch");
  if (!is_2d()) return x_.forward * v;
  const Eigen::Index nx = x_.eigenvalues.size();
  Eigen::Map<const RowMat> u(v.data(), ny_, nx);
  RowMat modal = y_.forward * u * x_.forward.transpose();
  return Eigen::Map<const Eigen::VectorXd>(modal.data(), modal.size());
}

Eigen::VectorXd SpectralPlan::backward(const Eigen::VectorXd& modal) const {
  if (modal.size() != dim()) throw std::invalid_argument("spectral backward: dimension mismatch");
  if (!is_2d()) return x_.backward * modal;
  const Eigen::Index nx = x_.eigenvalues.size();
  Eigen::Map<const RowMat> m(modal.data(), ny_, nx);
  RowMat u = y_.backward * m * x_.backward.transpose();
  return Eigen::Map<const Eigen::VectorXd>(u.data(), u.size());
}

void SpectralPlan::scale_exp(double t, Eigen::VectorXd& modal) const {
  if (!is_2d()) {
    modal.array() *= (t * x_.eigenvalues.array()).exp();
    return;
  }
  const Eigen::Index nx = x_.eigenvalues.size();
  for (Eigen::Index j = 0; j < ny_; ++j)
    for (Eigen::Index i = 0; i < nx; ++i)
      modal[j * nx + i] *= std::exp(t * (y_.eigenvalues[j] + x_.eigenvalues[i]));
}

void SpectralPlan::scale_affine(double t, Eigen::VectorXd& modal,
                                const Eigen::VectorXd& source_modal) const {
  if (!is_2d()) {
    for (Eigen::Index i = 0; i < modal.size(); ++i) {
      const double z = t * x_.eigenvalues[i];
      modal[i] = std::exp(z) * modal[i] + t * phi1(z) * source_modal[i];
    }
    return;
  }
  const Eigen::Index nx = x_.eigenvalues.size();
  for (Eigen::Index j = 0; j < ny_; ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      const Eigen::Index k = j * nx + i;
      const double z = t * (y_.eigenvalues[j] + x_.eigenvalues[i]);
      modal[k] = std::exp(z) * modal[k] + t * phi1(z) * source_modal[k];
    }
  }
}

namespace {

SpectralPlan1D plan_tridiag(const Tridiag& t) {
  const Eigen::Index n = t.dim();

  // Diagonal symmetrizer: s_{i+1}/s_i = sqrt(lower_i / upper_i); requires
  // every off-diagonal pair to have a positive product (or vanish jointly).
  Eigen::VectorXd s(n);
  Eigen::VectorXd subdiag(n > 0 ? n - 1 : 0);
  s[0] = 1.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double u = t.upper[i];
    const double l = t.lower[i];
    const double prod = u * l;
    if (prod > 0.0) {
      s[i + 1] = s[i] * std::sqrt(l / u);
      subdiag[i] = (u > 0.0 ? 1.0 : -1.0) * std::sqrt(prod);
    } else if (u == 0.0 && l == 0.0) {
      s[i + 1] = s[i];
      subdiag[i] = 0.0;
    } else {
      throw not_symmetrizable_error(
          "tridiagonal operator has an off-diagonal pair with non-positive product at row " +
          std::to_string(i));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(t.diag, subdiag, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("tridiagonal eigendecomposition failed");

  SpectralPlan1D plan;
  plan.eigenvalues = es.eigenvalues();
  plan.forward = es.eigenvectors().transpose() * s.cwiseInverse().asDiagonal();
  plan.backward = s.asDiagonal() * es.eigenvectors();
  plan.symmetrizer_cond = s.maxCoeff() / s.minCoeff();
  return plan;
}

}  // namespace

SpectralPlan plan_spectral(const DiscreteOperator& op) {
  if (op.is_1d()) return SpectralPlan::one_dim(plan_tridiag(op.tridiag()));
  const auto& k = op.kron();
  return SpectralPlan::two_dim(plan_tridiag(k.x), plan_tridiag(k.y));
}

DensePlan plan_dense(const DiscreteOperator& op) {
  DensePlan p;
  p.matrix = op.dense();
  double bound = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p.matrix.rows(); ++i) {
    const double radius = p.matrix.row(i).cwiseAbs().sum() - std::abs(p.matrix(i, i));
    bound = std::max(bound, p.matrix(i, i) + radius);
  }
  p.spectral_bound = bound;
  return p;
}

Plan make_plan(const DiscreteOperator& op) {
  try {
    return plan_spectral(op);
  } catch (const not_symmetrizable_error&) {
    return plan_dense(op);
  }
}

namespace {

Eigen::VectorXd expm_action_spectral(const SpectralPlan& plan, double t,
                                     const Eigen::VectorXd& v) {
  require_no_overflow(t, plan.max_eigenvalue());
  Eigen::VectorXd modal = plan.forward(v);
  plan.scale_exp(t, modal);
  return plan.backward(modal);
}

Eigen::VectorXd expm_action_dense(const DensePlan& plan, double t, const Eigen::VectorXd& v) {
  require_no_overflow(t, plan.spectral_bound);
  if (v.size() != plan.matrix.rows())
    throw std::invalid_argument("expm_action: dimension mismatch");
  return (t * plan.matrix).exp() * v;
}

AffineFlowResult affine_flow_spectral(const SpectralPlan& plan, double t,
                                      const Eigen::VectorXd& v0, const Eigen::VectorXd& g) {
  require_no_overflow(t, plan.max_eigenvalue());
  Eigen::VectorXd modal = plan.forward(v0);
  const Eigen::VectorXd source_modal = plan.forward(g);
  plan.scale_affine(t, modal, source_modal);
  AffineFlowResult res;
  res.state = plan.backward(modal);
  res.diagnostics.backend = FlowBackend::spectral;
  res.diagnostics.ill_conditioned_symmetrizer =
      plan.symmetrizer_cond() > kIllConditionedSymmetrizer;
  return res;
}

AffineFlowResult affine_flow_dense(const DensePlan& plan, double t, const Eigen::VectorXd& v0,
                                   const Eigen::VectorXd& g) {
  require_no_overflow(t, plan.spectral_bound);
  const Eigen::Index n = plan.matrix.rows();
  // exp of the augmented matrix [[G, g], [0, 0]] yields e^(tG) and
  // t*phi1(tG)g in one scaling-and-squaring pass.
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = plan.matrix;
  aug.col(n).head(n) = g;
  const Eigen::MatrixXd e = (t * aug).exp();
  AffineFlowResult res;
  res.state = e.topLeftCorner(n, n) * v0 + e.col(n).head(n);
  res.diagnostics.backend = FlowBackend::dense;
  return res;
}

}  // namespace

Eigen::VectorXd expm_action(const Plan& plan, double t, const Eigen::VectorXd& v) {
  require_nonnegative_time(t);
  if (const SpectralPlan* sp = std::get_if<SpectralPlan>(&plan)) {
    if (v.size() != sp->dim()) throw std::invalid_argument("expm_action: dimension mismatch");
    return expm_action_spectral(*sp, t, v);
  }
  return expm_action_dense(std::get<DensePlan>(plan), t, v);
}

AffineFlowResult affine_flow(const Plan& plan, double t, const Eigen::VectorXd& v0,
                             const Eigen::VectorXd& g) {
  require_nonnegative_time(t);
  if (v0.size() != g.size()) throw std::invalid_argument("affine_flow: dimension mismatch");
  if (const SpectralPlan* sp = std::get_if<SpectralPlan>(&plan)) {
    if (v0.size() != sp->dim()) throw std::invalid_argument("affine_flow: dimension mismatch");
    return affine_flow_spectral(*sp, t, v0, g);
  }
  const DensePlan& dp = std::get<DensePlan>(plan);
  if (v0.size() != dp.matrix.rows())
    throw std::invalid_argument("affine_flow: dimension mismatch");
  return affine_flow_dense(dp, t, v0, g);
}

}  // namespace ibc
