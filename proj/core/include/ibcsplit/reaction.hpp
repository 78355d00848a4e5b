#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace ibc {

enum class ReactionKind { square, logistic, custom_polynomial };

/// Pointwise reaction term f(t, u) (no spatial coupling). All built-in
/// kinds are autonomous; square and logistic carry closed-form flows.
struct ReactionTerm {
  ReactionKind kind = ReactionKind::square;
  double rate = 1.0;      // logistic
  double capacity = 1.0;  // logistic
  std::vector<double> coeffs;  // custom polynomial, f(u) = sum coeffs[k] u^k

  static ReactionTerm square() { return {ReactionKind::square, 1.0, 1.0, {}}; }
  static ReactionTerm logistic(double rate, double capacity = 1.0) {
    return {ReactionKind::logistic, rate, capacity, {}};
  }
  static ReactionTerm polynomial(std::vector<double> coeffs) {
    return {ReactionKind::custom_polynomial, 1.0, 1.0, std::move(coeffs)};
  }
  /// f identically zero (empty polynomial).
  static ReactionTerm zero() { return polynomial({}); }

  bool autonomous() const { return true; }
  bool has_closed_form_flow() const {
    return kind == ReactionKind::square || kind == ReactionKind::logistic;
  }

  double eval(double t, double u) const;
  Eigen::VectorXd eval(double t, const Eigen::VectorXd& u) const;

  std::string name() const;
};

}  // namespace ibc
