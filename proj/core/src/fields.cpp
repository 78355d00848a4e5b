#include "ibcsplit/fields.hpp"

namespace ibc {

void boundary_data_from_trace(FaceBC& left, FaceBC& right, const ScalarField1D& u0,
                              double x_min, double x_max) {
  left.data = FaceData::constant(left.alpha * u0.value(x_min) + left.beta * u0.deriv(x_min));
  right.data = FaceData::constant(right.alpha * u0.value(x_max) + right.beta * u0.deriv(x_max));
}

void boundary_data_from_trace(Faces2D& faces, const ScalarField2D& u0, double x_min,
                              double x_max, double y_min, double y_max) {
  const ScalarField2D f = u0;  // copy into the profiles
  faces.left.data = FaceData::profile([f, a = faces.left.alpha, b = faces.left.beta,
                                       x_min](double y) {
    return a * f.value(x_min, y) + b * f.dx(x_min, y);
  });
  faces.right.data = FaceData::profile([f, a = faces.right.alpha, b = faces.right.beta,
                                        x_max](double y) {
    return a * f.value(x_max, y) + b * f.dx(x_max, y);
  });
  faces.bottom.data = FaceData::profile([f, a = faces.bottom.alpha, b = faces.bottom.beta,
                                         y_min](double x) {
    return a * f.value(x, y_min) + b * f.dy(x, y_min);
  });
  faces.top.data = FaceData::profile([f, a = faces.top.alpha, b = faces.top.beta,
                                      y_max](double x) {
    return a * f.value(x, y_max) + b * f.dy(x, y_max);
  });
}

Eigen::VectorXd sample_field(const ScalarField1D& u0, const Grid1D& grid) {
  Eigen::VectorXd u(grid.n_unknowns);
  for (Eigen::Index k = 0; k < grid.n_unknowns; ++k) u[k] = u0.value(grid.coord(k));
  return u;
}

Eigen::VectorXd sample_field(const ScalarField2D& u0, const Grid2D& grid) {
  Eigen::VectorXd u(grid.n_unknowns());
  const Eigen::Index nx = grid.x.n_unknowns;
  for (Eigen::Index iy = 0; iy < grid.y.n_unknowns; ++iy)
    for (Eigen::Index ix = 0; ix < nx; ++ix)
      u[iy * nx + ix] = u0.value(grid.x.coord(ix), grid.y.coord(iy));
  return u;
}

}  // namespace ibc
