#include "ibcsplit/operator.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ibc {

EllipticCoefficients1D EllipticCoefficients1D::constant(double a, double c, double d) {
  return {[a](double) { return a; }, [c](double) { return c; }, [d](double) { return d; }};
}

Tridiag Tridiag::zero(Eigen::Index n) {
  Tridiag t;
  t.lower = Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0);
  t.diag = Eigen::VectorXd::Zero(n);
  t.upper = Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0);
  return t;
}

void Tridiag::apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
  const Eigen::Index n = dim();
  out.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += lower[i - 1] * v[i - 1];
    if (i + 1 < n) s += upper[i] * v[i + 1];
    out[i] = s;
  }
}

Eigen::VectorXd Tridiag::apply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out;
  apply(v, out);
  return out;
}

Eigen::MatrixXd Tridiag::dense() const {
  const Eigen::Index n = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i > 0) m(i, i - 1) = lower[i - 1];
    if (i + 1 < n) m(i, i + 1) = upper[i];
  }
  return m;
}

DiscreteOperator DiscreteOperator::from_tridiag(Tridiag t, Eigen::VectorXd r) {
  if (t.dim() != r.size()) throw std::invalid_argument("from_tridiag: dimension mismatch");
  DiscreteOperator op;
  op.action_ = OneDim{std::move(t)};
  op.r_ = std::move(r);
  return op;
}

const Tridiag& DiscreteOperator::tridiag() const {
  if (const OneDim* a = std::get_if<OneDim>(&action_)) return a->op;
  throw std::logic_error("tridiag(): operator is not 1D");
}

const DiscreteOperator::Kron2D& DiscreteOperator::kron() const {
  if (const TwoDim* a = std::get_if<TwoDim>(&action_)) return a->kron;
  throw std::logic_error("kron(): operator is not 2D");
}

const Eigen::SparseMatrix<double, Eigen::RowMajor>& DiscreteOperator::five_point() const {
  if (const TwoDim* a = std::get_if<TwoDim>(&action_)) return a->five_point;
  throw std::logic_error("five_point(): operator is not 2D");
}

void DiscreteOperator::apply(const Eigen::VectorXd& u, Eigen::VectorXd& out) const {
  if (u.size() != dim()) throw std::invalid_argument("apply: dimension mismatch");
  if (const OneDim* a = std::get_if<OneDim>(&action_)) {
    a->op.apply(u, out);
  } else {
    out = std::get<TwoDim>(action_).five_point * u;
  }
}

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out;
  apply(u, out);
  return out;
}

Eigen::MatrixXd DiscreteOperator::dense() const {
  if (dim() > dense_dim_limit)
    throw std::invalid_argument("dense(): dimension " + std::to_string(dim()) +
                                " exceeds the dense limit " + std::to_string(dense_dim_limit));
  if (const OneDim* a = std::get_if<OneDim>(&action_)) return a->op.dense();
  return Eigen::MatrixXd(std::get<TwoDim>(action_).five_point);
}

namespace {

struct FaceScalars {
  double alpha, beta, b;
};

void require_matching_kind(const Grid1D& grid, const FaceBC& left, const FaceBC& right) {
  if (grid.includes_left == left.dirichlet() || grid.includes_right == right.dirichlet())
    throw std::invalid_argument("assemble: grid node inclusion does not match the face kinds");
}

void check_ellipticity(const Grid1D& grid, const EllipticCoefficients1D& coeffs) {
  // Sample a at every node and mid-node of the closed domain plus the ghost
  // mid-nodes used by derivative faces.
  const Eigen::Index segments = grid.n_interior() + 1;
  for (Eigen::Index j = 0; j <= 2 * segments; ++j) {
    const double x = grid.x_min + 0.5 * static_cast<double>(j) * grid.h;
    if (!(coeffs.a(x) > 0.0))
      throw std::invalid_argument("non-elliptic diffusion coefficient: a(x) <= 0 at x = " +
                                  std::to_string(x));
  }
  if (grid.includes_left && !(coeffs.a(grid.x_min - 0.5 * grid.h) > 0.0))
    throw std::invalid_argument("non-elliptic diffusion coefficient at the left ghost mid-node");
  if (grid.includes_right && !(coeffs.a(grid.x_max + 0.5 * grid.h) > 0.0))
    throw std::invalid_argument("non-elliptic diffusion coefficient at the right ghost mid-node");
}

}  // namespace

DiscreteOperator assemble_operator_1d(const Grid1D& grid, const EllipticCoefficients1D& coeffs,
                                      const FaceBC& left, const FaceBC& right) {
  if (left.alpha == 0.0 && left.beta == 0.0)
    throw std::invalid_argument("degenerate boundary condition on left face");
  if (right.alpha == 0.0 && right.beta == 0.0)
    throw std::invalid_argument("degenerate boundary condition on right face");
  require_matching_kind(grid, left, right);
  check_ellipticity(grid, coeffs);

  const Eigen::Index n = grid.n_unknowns;
  const double h = grid.h;
  const double b_left = left.data.at(grid.x_min, 0, 1);
  const double b_right = right.data.at(grid.x_max, 0, 1);

  Tridiag t = Tridiag::zero(n);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);

  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = grid.coord(k);
    const double a_m = coeffs.a(x - 0.5 * h);
    const double a_p = coeffs.a(x + 0.5 * h);
    const double ci = coeffs.c(x);
    const double west = a_m / (h * h) - ci / (2.0 * h);
    const double east = a_p / (h * h) + ci / (2.0 * h);
    double center = -(a_m + a_p) / (h * h) + coeffs.d(x);

    // west neighbor
    if (k > 0) {
      t.lower[k - 1] += west;
    } else if (grid.includes_left) {
      // boundary row: eliminate the ghost node via
      //   beta * (u_1 - u_ghost) / (2h) + alpha * u_0 = b
      t.upper[0] += west;
      center += west * (2.0 * h * left.alpha / left.beta);
      r[0] -= west * (2.0 * h / left.beta) * b_left;
    } else {
      // excluded Dirichlet node carries b/alpha
      r[0] += west * (b_left / left.alpha);
    }

    // east neighbor
    if (k + 1 < n) {
      t.upper[k] += east;
    } else if (grid.includes_right) {
      t.lower[n - 2] += east;
      center -= east * (2.0 * h * right.alpha / right.beta);
      r[n - 1] += east * (2.0 * h / right.beta) * b_right;
    } else {
      r[n - 1] += east * (b_right / right.alpha);
    }

    t.diag[k] = center;
  }

  DiscreteOperator op;
  op.action_ = DiscreteOperator::OneDim{std::move(t)};
  op.r_ = std::move(r);
  op.grid1d_ = grid;
  return op;
}

DiscreteOperator assemble_laplacian_2d(const Grid2D& grid, const Faces2D& faces) {
  for (const auto* f : {&faces.left, &faces.right, &faces.bottom, &faces.top})
    if (f->alpha == 0.0 && f->beta == 0.0)
      throw std::invalid_argument("degenerate boundary condition on a 2D face");
  require_matching_kind(grid.x, faces.left, faces.right);
  require_matching_kind(grid.y, faces.bottom, faces.top);

  const Grid1D& gx = grid.x;
  const Grid1D& gy = grid.y;
  const Eigen::Index nx = gx.n_unknowns;
  const Eigen::Index ny = gy.n_unknowns;
  const double hx = gx.h;
  const double hy = gy.h;

  Eigen::VectorXd r = Eigen::VectorXd::Zero(nx * ny);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(5 * nx * ny));

  // Direct 5-point assembly; each direction contributes its own centered
  // stencil with Dirichlet neighbors eliminated into r and ghost nodes
  // eliminated on derivative faces.
  for (Eigen::Index iy = 0; iy < ny; ++iy) {
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      const Eigen::Index row = iy * nx + ix;
      const double yc = gy.coord(iy);
      const double xc = gx.coord(ix);
      const double wx = 1.0 / (hx * hx);
      const double wy = 1.0 / (hy * hy);
      double center = -2.0 * wx - 2.0 * wy;

      // x direction
      if (ix > 0) {
        trip.emplace_back(row, row - 1, wx);
      } else if (gx.includes_left) {
        trip.emplace_back(row, row + 1, wx);
        center += wx * (2.0 * hx * faces.left.alpha / faces.left.beta);
        r[row] -= wx * (2.0 * hx / faces.left.beta) * faces.left.data.at(yc, iy, ny);
      } else {
        r[row] += wx * faces.left.data.at(yc, iy, ny) / faces.left.alpha;
      }
      if (ix + 1 < nx) {
        trip.emplace_back(row, row + 1, wx);
      } else if (gx.includes_right) {
        trip.emplace_back(row, row - 1, wx);
        center -= wx * (2.0 * hx * faces.right.alpha / faces.right.beta);
        r[row] += wx * (2.0 * hx / faces.right.beta) * faces.right.data.at(yc, iy, ny);
      } else {
        r[row] += wx * faces.right.data.at(yc, iy, ny) / faces.right.alpha;
      }

      // y direction
      if (iy > 0) {
        trip.emplace_back(row, row - nx, wy);
      } else if (gy.includes_left) {
        trip.emplace_back(row, row + nx, wy);
        center += wy * (2.0 * hy * faces.bottom.alpha / faces.bottom.beta);
        r[row] -= wy * (2.0 * hy / faces.bottom.beta) * faces.bottom.data.at(xc, ix, nx);
      } else {
        r[row] += wy * faces.bottom.data.at(xc, ix, nx) / faces.bottom.alpha;
      }
      if (iy + 1 < ny) {
        trip.emplace_back(row, row + nx, wy);
      } else if (gy.includes_right) {
        trip.emplace_back(row, row - nx, wy);
        center -= wy * (2.0 * hy * faces.top.alpha / faces.top.beta);
        r[row] += wy * (2.0 * hy / faces.top.beta) * faces.top.data.at(xc, ix, nx);
      } else {
        r[row] += wy * faces.top.data.at(xc, ix, nx) / faces.top.alpha;
      }

      trip.emplace_back(row, row, center);
    }
  }

  Eigen::SparseMatrix<double, Eigen::RowMajor> m(nx * ny, nx * ny);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();

  // Kronecker metadata from the general 1D assembly with zeroed data; the
  // matrix part of a face row does not depend on the data.
  auto zero_data = [](const FaceBC& f) { return FaceBC{f.alpha, f.beta, FaceData::constant(0.0)}; };
  const auto coeffs = EllipticCoefficients1D::laplacian();
  DiscreteOperator::Kron2D kron{
      assemble_operator_1d(gx, coeffs, zero_data(faces.left), zero_data(faces.right)).tridiag(),
      assemble_operator_1d(gy, coeffs, zero_data(faces.bottom), zero_data(faces.top)).tridiag()};

  DiscreteOperator op;
  op.action_ = DiscreteOperator::TwoDim{std::move(m), std::move(kron)};
  op.r_ = std::move(r);
  op.grid2d_ = grid;
  return op;
}

Eigen::VectorXd reconstruct_full_field_1d(const Grid1D& grid, const FaceBC& left,
                                          const FaceBC& right, const Eigen::VectorXd& u) {
  if (u.size() != grid.n_unknowns)
    throw std::invalid_argument("reconstruct: dimension mismatch");
  const Eigen::Index total = grid.n_interior() + 2;
  Eigen::VectorXd full(total);
  Eigen::Index k = 0;
  full[0] = grid.includes_left ? u[k++] : left.data.at(grid.x_min, 0, 1) / left.alpha;
  for (Eigen::Index j = 1; j + 1 < total; ++j) full[j] = u[k++];
  full[total - 1] =
      grid.includes_right ? u[k++] : right.data.at(grid.x_max, 0, 1) / right.alpha;
  return full;
}

}  // namespace ibc
