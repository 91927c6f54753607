#include "irl1/prox.hpp"

#include "irl1/error.hpp"

#include <cmath>
#include <limits>

namespace irl1 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Box Box::unbounded(Eigen::Index n) {
  return Box(Eigen::VectorXd::Constant(n, -kInf),
             Eigen::VectorXd::Constant(n, kInf));
}

Box Box::uniform(Eigen::Index n, double lo, double hi) {
  return Box(Eigen::VectorXd::Constant(n, lo), Eigen::VectorXd::Constant(n, hi));
}

Box::Box(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw argument_error("box bounds have different sizes");
  unbounded_ = true;
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (std::isnan(lower_[i]) || std::isnan(upper_[i]) ||
        !(lower_[i] <= upper_[i]) || lower_[i] == kInf || upper_[i] == -kInf)
      throw argument_error("box requires lower <= upper componentwise");
    if (lower_[i] != -kInf || upper_[i] != kInf)
      unbounded_ = false;
  }
}

bool Box::contains(const Eigen::Ref<const Eigen::VectorXd> &x) const {
  if (x.size() != size())
    return false;
  if (unbounded_)
    return true;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i]))
      return false;
  return true;
}

Eigen::VectorXd project_box(const Eigen::Ref<const Eigen::VectorXd> &x,
                            const Box &box) {
  if (x.size() != box.size())
    throw argument_error("project_box: dimension mismatch");
  if (box.is_unbounded())
    return x;
  return x.cwiseMax(box.lower()).cwiseMin(box.upper());
}

void prox_weighted_l1_box(const Eigen::Ref<const Eigen::VectorXd> &t,
                          const Eigen::Ref<const Eigen::VectorXd> &s,
                          double step, const Box &box,
                          Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index n = t.size();
  if (s.size() != n || box.size() != n || out.size() != n)
    throw argument_error("prox_weighted_l1_box: dimension mismatch");
  if (!(step > 0.0))
    throw argument_error("prox_weighted_l1_box: step must be positive");
  const double inv_step = 1.0 / step;
  if (box.is_unbounded()) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(s[i] >= 0.0))
        throw argument_error("prox_weighted_l1_box: negative weight");
      out[i] = soft_threshold_clamp(t[i], s[i] * inv_step, -kInf, kInf);
    }
    return;
  }
  const auto &lo = box.lower();
  const auto &hi = box.upper();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(s[i] >= 0.0))
      throw argument_error("prox_weighted_l1_box: negative weight");
    out[i] = soft_threshold_clamp(t[i], s[i] * inv_step, lo[i], hi[i]);
  }
}

Eigen::VectorXd prox_weighted_l1_box(const Eigen::Ref<const Eigen::VectorXd> &t,
                                     const Eigen::Ref<const Eigen::VectorXd> &s,
                                     double step, const Box &box) {
  Eigen::VectorXd out(t.size());
  prox_weighted_l1_box(t, s, step, box, out);
  return out;
}

double prox_scalar_log(double v, double step, double lambda, double eps) {
  if (!(step > 0.0) || !(lambda > 0.0) || !(eps > 0.0))
    throw argument_error("prox_scalar_log: step, lambda and eps must be positive");
  if (v == 0.0)
    return 0.0;

  // Work on the half-line u >= 0 with a = |v|; the minimizer never has the
  // opposite sign of v since flipping it lowers the quadratic term.
  const double a = std::abs(v);
  const auto g = [&](double u) {
    const double d = u - a;
    return 0.5 * step * d * d + lambda * std::log1p(u / eps);
  };

  double best_u = 0.0;
  double best_g = g(0.0);

  // u^2 + B u + C = 0 with B = eps - a, C = lambda/step - a*eps.
  const double B = eps - a;
  const double C = lambda / step - a * eps;
  const double disc = B * B - 4.0 * C;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    // Cancellation-free root pair.
    const double q = -0.5 * (B + std::copysign(sq, B));
    double roots[2] = {q, q != 0.0 ? C / q : q};
    for (double u : roots) {
      if (!(u > 0.0) || !std::isfinite(u))
        continue;
      // One Newton step on g'(u) = step*(u - a) + lambda/(u + eps) sharpens
      // the stationarity certificate.
      const double gp = step * (u - a) + lambda / (u + eps);
      const double gpp = step - lambda / ((u + eps) * (u + eps));
      if (gpp != 0.0) {
        const double polished = u - gp / gpp;
        if (polished > 0.0 && std::isfinite(polished))
          u = polished;
      }
      const double gu = g(u);
      if (gu < best_g - 1e-12 ||
          (std::abs(gu - best_g) <= 1e-12 && u < best_u)) {
        best_g = gu;
        best_u = u;
      }
    }
  }
  return std::copysign(best_u, v);
}

} // namespace irl1
