#pragma once

#include <Eigen/Core>

namespace irl1 {

/// Componentwise box [lower_i, upper_i]; infinite bounds allowed.
class Box {
public:
  /// The whole space, R^n.
  static Box unbounded(Eigen::Index n);
  /// [lo, hi]^n.
  static Box uniform(Eigen::Index n, double lo, double hi);
  Box(Eigen::VectorXd lower, Eigen::VectorXd upper);

  Eigen::Index size() const noexcept { return lower_.size(); }
  const Eigen::VectorXd &lower() const noexcept { return lower_; }
  const Eigen::VectorXd &upper() const noexcept { return upper_; }
  bool is_unbounded() const noexcept { return unbounded_; }

  bool contains(const Eigen::Ref<const Eigen::VectorXd> &x) const;

private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  bool unbounded_ = false;
};

/// Componentwise clamp of x into the box.
Eigen::VectorXd project_box(const Eigen::Ref<const Eigen::VectorXd> &x,
                            const Box &box);

/// argmin over the box of (step/2)||y - t||^2 + sum_i s_i |y_i|.
///
/// Each scalar objective is convex, so its minimizer over an interval is the
/// clamp of the unconstrained minimizer, soft-threshold(t_i, s_i/step).
Eigen::VectorXd prox_weighted_l1_box(const Eigen::Ref<const Eigen::VectorXd> &t,
                                     const Eigen::Ref<const Eigen::VectorXd> &s,
                                     double step, const Box &box);

/// In-place variant used by the solver loops; `out` may alias `t`.
void prox_weighted_l1_box(const Eigen::Ref<const Eigen::VectorXd> &t,
                          const Eigen::Ref<const Eigen::VectorXd> &s,
                          double step, const Box &box,
                          Eigen::Ref<Eigen::VectorXd> out);

/// Scalar kernel of prox_weighted_l1_box, unchecked.
inline double soft_threshold_clamp(double t, double threshold, double lo,
                                   double hi) noexcept {
  double y = 0.0;
  if (t > threshold)
    y = t - threshold;
  else if (t < -threshold)
    y = t + threshold;
  return y < lo ? lo : (y > hi ? hi : y);
}

/// Global minimizer of g(u) = (step/2)(u - v)^2 + lambda*(log(|u| + eps) - log(eps)).
///
/// Candidates are u = 0 and the stationary points of g on the half-line
/// sign(u) = sign(v): step*u^2 + step*(eps - |v|)*u + (lambda - step*|v|*eps) = 0
/// in |u|. Ties within 1e-12 go to the smaller |u|.
double prox_scalar_log(double v, double step, double lambda, double eps);

} // namespace irl1
