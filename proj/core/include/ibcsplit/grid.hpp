#pragma once

#include <Eigen/Core>
#include <functional>
#include <variant>
#include <vector>

namespace ibc {

enum class Side { left, right, bottom, top };

const char* side_name(Side s);

/// Boundary data of one face: a constant, per-node samples along the face
/// (2D), or an analytic profile in the tangential coordinate.
class FaceData {
public:
  FaceData() : storage_(0.0) {}

  static FaceData constant(double v) { return FaceData(v); }
  static FaceData samples(std::vector<double> v) { return FaceData(std::move(v)); }
  static FaceData profile(std::function<double(double)> f) { return FaceData(std::move(f)); }

  bool is_constant() const { return std::holds_alternative<double>(storage_); }
  bool is_samples() const { return std::holds_alternative<std::vector<double>>(storage_); }

  /// Value at tangential unknown k of n along the face. `coord` is the
  /// tangential coordinate of that unknown (ignored for constants/samples).
  double at(double coord, Eigen::Index k, Eigen::Index n) const;

  /// Constant value; throws unless is_constant().
  double constant_value() const;

private:
  explicit FaceData(std::variant<double, std::vector<double>, std::function<double(double)>> s)
      : storage_(std::move(s)) {}
  std::variant<double, std::vector<double>, std::function<double(double)>> storage_;
};

/// Oblique boundary condition on one face: beta * du + alpha * u = data,
/// with du the derivative in the face-normal coordinate direction (applied
/// literally, not outward-normal-signed).
struct FaceBC {
  double alpha = 1.0;
  double beta = 0.0;
  FaceData data;

  bool dirichlet() const { return beta == 0.0; }
  bool pure_neumann() const { return alpha == 0.0; }

  static FaceBC dirichlet_bc(double b = 0.0) { return {1.0, 0.0, FaceData::constant(b)}; }
  static FaceBC neumann_bc(double b = 0.0) { return {0.0, 1.0, FaceData::constant(b)}; }
  static FaceBC robin_bc(double alpha, double beta, double b = 0.0) {
    return {alpha, beta, FaceData::constant(b)};
  }
};

struct Faces2D {
  FaceBC left, right, bottom, top;
};

/// Uniform 1D grid. Unknowns are the interior nodes plus any boundary node
/// whose face condition involves the derivative (Neumann/Robin). Spacing
/// satisfies h * (n_interior + 1) = x_max - x_min.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  Eigen::Index n_unknowns = 0;
  double h = 0.0;
  bool includes_left = false;
  bool includes_right = false;

  Eigen::Index n_interior() const {
    return n_unknowns - (includes_left ? 1 : 0) - (includes_right ? 1 : 0);
  }
  /// Coordinate of unknown k (0-based over the unknown vector).
  double coord(Eigen::Index k) const {
    return x_min + static_cast<double>(k + (includes_left ? 0 : 1)) * h;
  }
};

/// Tensor grid, row-major over x fastest: index = iy * x.n_unknowns + ix.
struct Grid2D {
  Grid1D x, y;
  Eigen::Index n_unknowns() const { return x.n_unknowns * y.n_unknowns; }
};

Grid1D build_grid_1d(double x_min, double x_max, Eigen::Index n_interior,
                     const FaceBC& left, const FaceBC& right);

Grid2D build_grid_2d(double x_min, double x_max, double y_min, double y_max,
                     Eigen::Index n_interior_x, Eigen::Index n_interior_y,
                     const Faces2D& faces);

}  // namespace ibc
