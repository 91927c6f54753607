#include "irl1/penalty.hpp"

#include "irl1/error.hpp"

#include <cmath>
#include <string>

namespace irl1 {

std::string_view to_string(PenaltyFamily family) {
  switch (family) {
  case PenaltyFamily::Log:
    return "log";
  case PenaltyFamily::Scad:
    return "scad";
  case PenaltyFamily::Mcp:
    return "mcp";
  case PenaltyFamily::L1:
    return "l1";
  }
  return "unknown";
}

namespace {

void require_positive(double v, const char *name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw argument_error(std::string("penalty parameter ") + name +
                         " must be positive and finite");
}

} // namespace

Penalty Penalty::log(double lambda, double eps) {
  require_positive(lambda, "lambda");
  require_positive(eps, "eps");
  return Penalty(PenaltyFamily::Log, lambda, eps);
}

Penalty Penalty::scad(double lambda, double a) {
  require_positive(lambda, "lambda");
  if (!(a > 2.0) || !std::isfinite(a))
    throw argument_error("SCAD parameter a must exceed 2");
  return Penalty(PenaltyFamily::Scad, lambda, a);
}

Penalty Penalty::mcp(double lambda, double b) {
  require_positive(lambda, "lambda");
  require_positive(b, "b");
  return Penalty(PenaltyFamily::Mcp, lambda, b);
}

Penalty Penalty::l1(double lambda) {
  require_positive(lambda, "lambda");
  return Penalty(PenaltyFamily::L1, lambda, 0.0);
}

double Penalty::value_unchecked(double t) const noexcept {
  const double lam = lambda_;
  switch (family_) {
  case PenaltyFamily::Log:
    // log1p keeps phi(0) == 0 exactly and avoids cancellation for small t.
    return lam * std::log1p(t / shape_);
  case PenaltyFamily::Scad: {
    const double a = shape_;
    if (t <= lam)
      return lam * t;
    if (t <= a * lam)
      return (2.0 * a * lam * t - t * t - lam * lam) / (2.0 * (a - 1.0));
    return lam * lam * (a + 1.0) / 2.0;
  }
  case PenaltyFamily::Mcp: {
    const double b = shape_;
    if (t <= b * lam)
      return lam * t - t * t / (2.0 * b);
    return b * lam * lam / 2.0;
  }
  case PenaltyFamily::L1:
    return lam * t;
  }
  return 0.0;
}

double Penalty::weight_unchecked(double t) const noexcept {
  const double lam = lambda_;
  switch (family_) {
  case PenaltyFamily::Log:
    return lam / (t + shape_);
  case PenaltyFamily::Scad: {
    // Right derivatives at the kinks t = lambda and t = a*lambda.
    const double a = shape_;
    if (t < lam)
      return lam;
    if (t < a * lam)
      return (a * lam - t) / (a - 1.0);
    return 0.0;
  }
  case PenaltyFamily::Mcp: {
    const double b = shape_;
    if (t < b * lam)
      return lam - t / b;
    return 0.0;
  }
  case PenaltyFamily::L1:
    return lam;
  }
  return 0.0;
}

double Penalty::value(double t) const {
  if (!(t >= 0.0))
    throw domain_error("penalty value requires t >= 0");
  return value_unchecked(t);
}

double Penalty::weight(double t) const {
  if (!(t >= 0.0))
    throw domain_error("penalty weight requires t >= 0");
  return weight_unchecked(t);
}

double Penalty::weight_at_zero() const noexcept {
  return weight_unchecked(0.0);
}

double Penalty::weight_lipschitz() const noexcept {
  switch (family_) {
  case PenaltyFamily::Log:
    return lambda_ / (shape_ * shape_);
  case PenaltyFamily::Scad:
    return 1.0 / (shape_ - 1.0);
  case PenaltyFamily::Mcp:
    return 1.0 / shape_;
  case PenaltyFamily::L1:
    return 0.0;
  }
  return 0.0;
}

Eigen::VectorXd
Penalty::weights(const Eigen::Ref<const Eigen::VectorXd> &x) const {
  Eigen::VectorXd out(x.size());
  weights(x, out);
  return out;
}

void Penalty::weights(const Eigen::Ref<const Eigen::VectorXd> &x,
                      Eigen::Ref<Eigen::VectorXd> out) const {
  if (out.size() != x.size())
    throw argument_error("weights: output size mismatch");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = weight_unchecked(std::abs(x[i]));
}

double Penalty::total(const Eigen::Ref<const Eigen::VectorXd> &x) const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    sum += value_unchecked(std::abs(x[i]));
  return sum;
}

} // namespace irl1
