#include "irl1/schedules.hpp"

#include "irl1/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace irl1 {

double fista_next(double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw argument_error("fista_next: theta must lie in (0, 1]");
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / (theta * theta)));
}

BetaStep beta_e1(const FistaState &state, bool restart_requested) {
  FistaState s = state;
  const bool restart =
      restart_requested || s.iterations_since_restart >= kFixedRestartPeriod;
  if (restart) {
    s.theta_prev = 1.0;
    s.theta = 1.0;
    s.iterations_since_restart = 0;
  }
  const double beta = s.theta * (1.0 / s.theta_prev - 1.0);
  s.theta_prev = s.theta;
  s.theta = fista_next(s.theta);
  ++s.iterations_since_restart;
  return {beta, s, restart};
}

bool adaptive_restart_test(const Eigen::Ref<const Eigen::VectorXd> &y_prev,
                           const Eigen::Ref<const Eigen::VectorXd> &x_curr,
                           const Eigen::Ref<const Eigen::VectorXd> &x_prev) {
  if (y_prev.size() != x_curr.size() || x_prev.size() != x_curr.size())
    throw argument_error("adaptive_restart_test: dimension mismatch");
  double dot = 0.0;
  for (Eigen::Index i = 0; i < x_curr.size(); ++i)
    dot += (y_prev[i] - x_curr[i]) * (x_curr[i] - x_prev[i]);
  return dot > 0.0;
}

ThetaScheduleE2::ThetaScheduleE2() {
  table_[0] = 1.0;
  for (std::size_t k = 0; k <= 48; ++k)
    table_[k + 1] = fista_next(table_[k]);
  table_[50] = table_[49];
  for (std::size_t k = 51; k <= 99; ++k)
    table_[k] = table_[99 - k];
}

ThetaScheduleE3::ThetaScheduleE3(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw argument_error("theta schedule: gamma must lie in (0, 1)");
  rho_[0] = 1.0;
  for (std::size_t k = 0; k + 1 < kTableSize; ++k)
    rho_[k + 1] = fista_next(rho_[k]);
}

double ThetaScheduleE3::operator()(std::uint64_t k) const noexcept {
  const std::uint64_t last = kTableSize - 1;
  const std::uint64_t idx = k >= last - kOffset ? last : k + kOffset;
  return rho_[idx];
}

double theta_e2(std::uint64_t k) {
  static const ThetaScheduleE2 schedule;
  return schedule(k);
}

double theta_e3(std::uint64_t k) {
  static const ThetaScheduleE3 schedule;
  return schedule(k);
}

std::vector<double> theta_prefix_e2(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = theta_e2(k);
  return out;
}

std::vector<double> theta_prefix_e3(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = theta_e3(k);
  return out;
}

namespace {

void check_prefix(std::span<const double> thetas, std::size_t horizon) {
  if (thetas.empty())
    throw argument_error("schedule validator: empty theta sequence");
  if (horizon < 1)
    throw argument_error("schedule validator: horizon must be positive");
  if (thetas.size() < horizon + 1)
    throw argument_error("schedule validator: need thetas for indices 0.." +
                         std::to_string(horizon));
}

double e2_term(double prev, double cur) {
  const double d = 1.0 - prev;
  return cur * cur * d * d - prev * prev;
}

double e3_term(double prev, double cur, double gamma) {
  const double d = 1.0 - prev;
  return std::max(cur * cur * d * d / gamma - prev * prev,
                  cur * cur / (1.0 - gamma) - 1.0);
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw argument_error("schedule validator: gamma must lie in (0, 1)");
}

} // namespace

ConditionCheck validate_condition_e2(std::span<const double> thetas,
                                     std::size_t horizon, double delta) {
  check_prefix(thetas, horizon);
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= horizon; ++k)
    sup = std::max(sup, e2_term(thetas[k - 1], thetas[k]));
  return {sup, sup <= -delta};
}

ConditionCheck validate_condition_e3(std::span<const double> thetas,
                                     double gamma, std::size_t horizon,
                                     double delta) {
  check_gamma(gamma);
  check_prefix(thetas, horizon);
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= horizon; ++k)
    sup = std::max(sup, e3_term(thetas[k - 1], thetas[k], gamma));
  return {sup, sup <= -delta};
}

double e2_decrease_constant(std::span<const double> thetas, std::size_t horizon,
                            double L) {
  const ConditionCheck c = validate_condition_e2(thetas, horizon, 0.0);
  return -0.5 * L * c.sup_value;
}

double e3_decrease_constant(std::span<const double> thetas, double gamma,
                            std::size_t horizon, double L) {
  const ConditionCheck c = validate_condition_e3(thetas, gamma, horizon, 0.0);
  return -0.5 * L * c.sup_value;
}

} // namespace irl1
