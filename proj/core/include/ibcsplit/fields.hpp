#pragma once

#include <Eigen/Core>
#include <functional>

#include "ibcsplit/grid.hpp"

namespace ibc {

/// Closed-form scalar field with its analytic derivative(s).
struct ScalarField1D {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

struct ScalarField2D {
  std::function<double(double, double)> value;
  std::function<double(double, double)> dx;
  std::function<double(double, double)> dy;
};

/// Fill face data from the trace of u0: data = alpha * u0 + beta * du0
/// on each face (du0 taken in the face-normal coordinate direction). The
/// initial state then satisfies the boundary conditions exactly.
void boundary_data_from_trace(FaceBC& left, FaceBC& right, const ScalarField1D& u0,
                              double x_min, double x_max);
void boundary_data_from_trace(Faces2D& faces, const ScalarField2D& u0, double x_min,
                              double x_max, double y_min, double y_max);

Eigen::VectorXd sample_field(const ScalarField1D& u0, const Grid1D& grid);
Eigen::VectorXd sample_field(const ScalarField2D& u0, const Grid2D& grid);

}  // namespace ibc
