#include "ibcsplit/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace ibc {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> halved_taus(double tau0, int count) {
  std::vector<double> taus(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) taus[static_cast<std::size_t>(k)] = tau0 / std::pow(2.0, k);
  return taus;
}

std::vector<Preset> build_registry() {
  std::vector<Preset> reg;
  const auto taus_1d = halved_taus(0.1, 7);
  const auto taus_2d = halved_taus(0.05, 7);

  {
    Preset p;
    p.id = "ex5_1";
    p.summary = "1D, Dirichlet/Dirichlet, u0 = 2 + sin(pi x / 2)";
    p.left = FaceBC::dirichlet_bc();
    p.right = FaceBC::dirichlet_bc();
    p.initial = ScalarField1D{
        [](double x) { return 2.0 + std::sin(0.5 * kPi * x); },
        [](double x) { return 0.5 * kPi * std::cos(0.5 * kPi * x); }};
    p.t_end = 0.5;
    p.default_taus = taus_1d;
    p.quoted_b = {{2.0, 3.0}};
    reg.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "ex5_2";
    p.summary = "1D, Neumann/Neumann, u0 = 1 + (2/pi) cos(pi x / 2)";
    p.left = FaceBC::neumann_bc();
    p.right = FaceBC::neumann_bc();
    p.initial = ScalarField1D{
        [](double x) { return 1.0 + (2.0 / kPi) * std::cos(0.5 * kPi * x); },
        [](double x) { return -std::sin(0.5 * kPi * x); }};
    p.t_end = 0.5;
    p.default_taus = taus_1d;
    p.quoted_b = {{1.0, 2.0}};
    reg.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "ex5_3";
    p.summary = "1D, Robin/Robin (alpha = beta = 1), u0 = 1/2 + 1/(2pi) - cos(pi x)/(2pi)";
    p.left = FaceBC::robin_bc(1.0, 1.0);
    p.right = FaceBC::robin_bc(1.0, 1.0);
    p.initial = ScalarField1D{
        [](double x) { return 0.5 + 0.5 / kPi - std::cos(kPi * x) / (2.0 * kPi); },
        [](double x) { return 0.5 * std::sin(kPi * x); }};
    p.t_end = 0.5;
    p.default_taus = taus_1d;
    p.quoted_b = {{0.0, 1.0 + 0.5 / kPi}};
    reg.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "ex5_4";
    p.summary = "1D, Neumann/Dirichlet, u0 = 2 - 2 cos(pi x / 2)";
    p.left = FaceBC::neumann_bc();
    p.right = FaceBC::dirichlet_bc();
    p.initial = ScalarField1D{
        [](double x) { return 2.0 - 2.0 * std::cos(0.5 * kPi * x); },
        [](double x) { return kPi * std::sin(0.5 * kPi * x); }};
    p.t_end = 0.5;
    p.default_taus = taus_1d;
    p.quoted_b = {{0.0, 2.0}};
    reg.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "ex6_1";
    p.summary = "2D, Dirichlet on all faces, u0 = 1 + sin(pi x) sin(pi y)";
    p.dimension = 2;
    p.left = p.right = p.bottom = p.top = FaceBC::dirichlet_bc();
    p.initial = ScalarField2D{
        [](double x, double y) { return 1.0 + std::sin(kPi * x) * std::sin(kPi * y); },
        [](double x, double y) { return kPi * std::cos(kPi * x) * std::sin(kPi * y); },
        [](double x, double y) { return kPi * std::sin(kPi * x) * std::cos(kPi * y); }};
    p.t_end = 0.1;
    p.default_taus = taus_2d;
    p.default_n_interior_x = 50;
    p.default_n_interior_y = 50;
    reg.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "ex6_2";
    p.summary =
        "2D, Dirichlet top/bottom, Neumann left/right, "
        "u0 = 3 + exp(-10 (y - 1/2)^2) cos(2 pi (x + y))";
    p.dimension = 2;
    p.left = FaceBC::neumann_bc();
    p.right = FaceBC::neumann_bc();
    p.bottom = FaceBC::dirichlet_bc();
    p.top = FaceBC::dirichlet_bc();
    auto bump = [](double y) { return std::exp(-10.0 * (y - 0.5) * (y - 0.5)); };
    p.initial = ScalarField2D{
        [bump](double x, double y) { return 3.0 + bump(y) * std::cos(2.0 * kPi * (x + y)); },
        [bump](double x, double y) {
          return -2.0 * kPi * bump(y) * std::sin(2.0 * kPi * (x + y));
        },
        [bump](double x, double y) {
          return bump(y) * (-20.0 * (y - 0.5) * std::cos(2.0 * kPi * (x + y)) -
                            2.0 * kPi * std::sin(2.0 * kPi * (x + y)));
        }};
    p.t_end = 0.1;
    p.default_taus = taus_2d;
    p.default_n_interior_x = 50;
    p.default_n_interior_y = 50;
    reg.push_back(std::move(p));
  }
  return reg;
}

}  // namespace

const std::vector<Preset>& preset_registry() {
  static const std::vector<Preset> reg = build_registry();
  return reg;
}

const Preset* find_preset(std::string_view id) {
  for (const Preset& p : preset_registry())
    if (p.id == id) return &p;
  return nullptr;
}

}  // namespace ibc
