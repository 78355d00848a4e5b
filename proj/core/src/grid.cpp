#include "ibcsplit/grid.hpp"

#include <stdexcept>

namespace ibc {

const char* side_name(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::bottom: return "bottom";
    case Side::top: return "top";
  }
  return "?";
}

double FaceData::at(double coord, Eigen::Index k, Eigen::Index n) const {
  if (const double* c = std::get_if<double>(&storage_)) return *c;
  if (const auto* v = std::get_if<std::vector<double>>(&storage_)) {
    if (static_cast<Eigen::Index>(v->size()) != n)
      throw std::invalid_argument("face data samples: expected " + std::to_string(n) +
                                  " values, got " + std::to_string(v->size()));
    return (*v)[static_cast<std::size_t>(k)];
  }
  return std::get<std::function<double(double)>>(storage_)(coord);
}

double FaceData::constant_value() const {
  if (const double* c = std::get_if<double>(&storage_)) return *c;
  throw std::invalid_argument("face data is not a single constant");
}

static void check_face(const FaceBC& bc, const char* which) {
  if (bc.alpha == 0.0 && bc.beta == 0.0)
    throw std::invalid_argument(std::string("degenerate boundary condition (alpha = beta = 0) on ") +
                                which + " face");
}

Grid1D build_grid_1d(double x_min, double x_max, Eigen::Index n_interior,
                     const FaceBC& left, const FaceBC& right) {
  if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
  if (n_interior < 2) throw std::invalid_argument("grid: need at least 2 interior nodes");
  check_face(left, "left");
  check_face(right, "right");

  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.includes_left = !left.dirichlet();
  g.includes_right = !right.dirichlet();
  g.n_unknowns = n_interior + (g.includes_left ? 1 : 0) + (g.includes_right ? 1 : 0);
  g.h = (x_max - x_min) / static_cast<double>(n_interior + 1);
  return g;
}

Grid2D build_grid_2d(double x_min, double x_max, double y_min, double y_max,
                     Eigen::Index n_interior_x, Eigen::Index n_interior_y,
                     const Faces2D& faces) {
  Grid2D g;
  g.x = build_grid_1d(x_min, x_max, n_interior_x, faces.left, faces.right);
  g.y = build_grid_1d(y_min, y_max, n_interior_y, faces.bottom, faces.top);
  return g;
}

}  // namespace ibc
