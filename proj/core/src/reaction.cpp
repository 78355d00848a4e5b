#include "ibcsplit/reaction.hpp"

namespace ibc {

double ReactionTerm::eval(double, double u) const {
  switch (kind) {
    case ReactionKind::square:
      return u * u;
    case ReactionKind::logistic:
      return rate * u * (1.0 - u / capacity);
    case ReactionKind::custom_polynomial: {
      // Horner
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
      return acc;
    }
  }
  return 0.0;
}

Eigen::VectorXd ReactionTerm::eval(double t, const Eigen::VectorXd& u) const {
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out[i] = eval(t, u[i]);
  return out;
}

std::string ReactionTerm::name() const {
  switch (kind) {
    case ReactionKind::square: return "square";
    case ReactionKind::logistic: return "logistic";
    case ReactionKind::custom_polynomial: return "custom-polynomial";
  }
  return "?";
}

}  // namespace ibc
