#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <optional>
#include <variant>

#include "ibcsplit/grid.hpp"

namespace ibc {

/// Coefficient fields of the 1D elliptic operator
///   D u = (a(x) u')' + c(x) u' + d(x) u.
/// Callables must be evaluable on the closed domain and within h/2 outside
/// it (ghost-point elimination samples a at x_face -/+ h/2).
struct EllipticCoefficients1D {
  std::function<double(double)> a;
  std::function<double(double)> c;
  std::function<double(double)> d;

  static EllipticCoefficients1D laplacian() { return constant(1.0, 0.0, 0.0); }
  static EllipticCoefficients1D constant(double a, double c, double d);
};

/// Banded storage of a tridiagonal operator. Row i couples
/// lower[i-1] * u_{i-1} + diag[i] * u_i + upper[i] * u_{i+1}.
struct Tridiag {
  Eigen::VectorXd lower;  // size dim-1
  Eigen::VectorXd diag;   // size dim
  Eigen::VectorXd upper;  // size dim-1

  Eigen::Index dim() const { return diag.size(); }
  static Tridiag zero(Eigen::Index n);

  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd dense() const;
};

/// Matrix action L_h of the discretized elliptic operator under homogeneous
/// boundary conditions, plus the boundary inhomogeneity vector r, so that
/// the semi-discrete system reads u' = L_h u + r + f(t, u).
/// 1D stores a tridiagonal band; 2D stores the 5-point stencil matrix with
/// Kronecker-sum metadata (L = Lx ⊕ Ly, exact for face-wise BCs on the
/// constant-coefficient Laplacian).
class DiscreteOperator {
public:
  struct Kron2D {
    Tridiag x, y;
  };

  static constexpr Eigen::Index dense_dim_limit = 4096;

  /// Empty 0-dimensional operator; assign a real one before use.
  DiscreteOperator() = default;

  /// 1D operator from explicit bands (tests / ad-hoc generators).
  static DiscreteOperator from_tridiag(Tridiag t, Eigen::VectorXd r);

  Eigen::Index dim() const { return r_.size(); }
  const Eigen::VectorXd& r() const { return r_; }
  bool is_1d() const { return std::holds_alternative<OneDim>(action_); }

  const Tridiag& tridiag() const;                       // 1D only
  const Kron2D& kron() const;                           // 2D only
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& five_point() const;  // 2D only

  const std::optional<Grid1D>& grid1d() const { return grid1d_; }
  const std::optional<Grid2D>& grid2d() const { return grid2d_; }

  void apply(const Eigen::VectorXd& u, Eigen::VectorXd& out) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;

  /// Full matrix; rejected above dense_dim_limit.
  Eigen::MatrixXd dense() const;

private:
  struct OneDim {
    Tridiag op;
  };
  struct TwoDim {
    Eigen::SparseMatrix<double, Eigen::RowMajor> five_point;
    Kron2D kron;
  };

  friend DiscreteOperator assemble_operator_1d(const Grid1D&, const EllipticCoefficients1D&,
                                               const FaceBC&, const FaceBC&);
  friend DiscreteOperator assemble_laplacian_2d(const Grid2D&, const Faces2D&);

  std::variant<OneDim, TwoDim> action_;
  Eigen::VectorXd r_;
  std::optional<Grid1D> grid1d_;
  std::optional<Grid2D> grid2d_;
};

/// Second-order centered finite differences with the conservative interior
/// stencil and ghost-point elimination on Neumann/Robin faces.
DiscreteOperator assemble_operator_1d(const Grid1D& grid, const EllipticCoefficients1D& coeffs,
                                      const FaceBC& left, const FaceBC& right);

/// Constant-coefficient Laplacian on a tensor grid; the 5-point matrix is
/// assembled directly and the Kronecker factorization is recorded alongside.
DiscreteOperator assemble_laplacian_2d(const Grid2D& grid, const Faces2D& faces);

/// Embed the unknown vector into the closed-domain grid; excluded Dirichlet
/// nodes receive exactly data/alpha.
Eigen::VectorXd reconstruct_full_field_1d(const Grid1D& grid, const FaceBC& left,
                                          const FaceBC& right, const Eigen::VectorXd& u);

}  // namespace ibc
