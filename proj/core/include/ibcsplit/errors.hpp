#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ibc {

/// Finite-time singularity of a pointwise reaction flow, or a divergent
/// reference solve. Carries the first offending component and, when raised
/// from the multi-step driver, the step index.
class blowup_error : public std::runtime_error {
public:
  blowup_error(const std::string& what, std::ptrdiff_t component, double at_time,
               long step = -1)
      : std::runtime_error(what), component_(component), time_(at_time), step_(step) {}

  std::ptrdiff_t component() const noexcept { return component_; }
  double time() const noexcept { return time_; }
  long step() const noexcept { return step_; }  // -1 when not inside a driver

private:
  std::ptrdiff_t component_;
  double time_;
  long step_;
};

/// t * max(Re lambda) would overflow the exponential.
class stability_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive solver exceeded max_steps or hit the step-size floor.
class solver_stall_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tridiagonal operator cannot be symmetrized by diagonal scaling; the
/// caller must fall back to the dense path.
class not_symmetrizable_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Config file parse/validation failure; names the offending field.
class config_error : public std::runtime_error {
public:
  config_error(const std::string& what, std::string field = {})
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

}  // namespace ibc
