#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace irl1 {

enum class PenaltyFamily { Log, Scad, Mcp, L1 };

std::string_view to_string(PenaltyFamily family);

/// Concave separable sparsity penalty phi : [0, inf) -> [0, inf).
///
/// Families and parameters:
///   Log   phi(t) = lambda*log(t + eps) - lambda*log(eps)       (lambda, eps > 0)
///   SCAD  Fan-Li smoothly clipped absolute deviation            (lambda > 0, a > 2)
///   MCP   minimax concave penalty                               (lambda, b > 0)
///   L1    phi(t) = lambda*t                                     (lambda > 0)
///
/// `weight(t)` is the right derivative phi'_+(t); it is nonnegative and
/// nonincreasing, finite at 0, and Lipschitz with modulus `weight_lipschitz()`.
class Penalty {
public:
  static Penalty log(double lambda, double eps);
  static Penalty scad(double lambda, double a);
  static Penalty mcp(double lambda, double b);
  static Penalty l1(double lambda);

  PenaltyFamily family() const noexcept { return family_; }
  double lambda() const noexcept { return lambda_; }
  /// eps (Log), a (SCAD), b (MCP); zero for L1.
  double shape() const noexcept { return shape_; }

  /// phi(t). Throws a domain error for t < 0.
  double value(double t) const;
  /// phi'_+(t). Throws a domain error for t < 0.
  double weight(double t) const;

  /// phi'_+(0), the largest weight.
  double weight_at_zero() const noexcept;
  /// Lipschitz modulus of t -> phi'_+(t) on [0, inf); lambda/eps^2 for Log.
  double weight_lipschitz() const noexcept;

  /// s_i = phi'_+(|x_i|).
  Eigen::VectorXd weights(const Eigen::Ref<const Eigen::VectorXd> &x) const;
  void weights(const Eigen::Ref<const Eigen::VectorXd> &x,
               Eigen::Ref<Eigen::VectorXd> out) const;

  /// Phi(|x|) = sum_i phi(|x_i|).
  double total(const Eigen::Ref<const Eigen::VectorXd> &x) const;

private:
  Penalty(PenaltyFamily family, double lambda, double shape)
      : family_(family), lambda_(lambda), shape_(shape) {}

  // Unchecked kernels; t >= 0 is the caller's responsibility.
  double value_unchecked(double t) const noexcept;
  double weight_unchecked(double t) const noexcept;

  PenaltyFamily family_;
  double lambda_;
  double shape_;
};

} // namespace irl1
