#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace irl1 {

/// theta_{k+1} = 2 / (1 + sqrt(1 + 4/theta_k^2)); requires 0 < theta <= 1.
double fista_next(double theta);

/// Momentum state for the FISTA-style beta_k with fixed and adaptive restart.
struct FistaState {
  double theta_prev = 1.0;
  double theta = 1.0;
  std::int64_t iterations_since_restart = 0;
};

/// Iterations between fixed restarts.
inline constexpr std::int64_t kFixedRestartPeriod = 200;

struct BetaStep {
  double beta;
  FistaState next;
  bool restarted;
};

/// Emits beta_k = theta_k (1/theta_{k-1} - 1) and advances the state.
/// Resets theta_{k-1} = theta_k = 1 first when a restart is requested or
/// kFixedRestartPeriod betas were emitted since the last restart (of either
/// kind).
BetaStep beta_e1(const FistaState &state, bool restart_requested);

/// Adaptive restart test <y_prev - x_curr, x_curr - x_prev> > 0.
bool adaptive_restart_test(const Eigen::Ref<const Eigen::VectorXd> &y_prev,
                           const Eigen::Ref<const Eigen::VectorXd> &x_curr,
                           const Eigen::Ref<const Eigen::VectorXd> &x_prev);

/// Periodic theta table: FISTA for indices 0..49 (with theta_50 = theta_49),
/// mirrored as theta_k = theta_{99-k} on 51..99, period 100.
class ThetaScheduleE2 {
public:
  static constexpr std::size_t kPeriod = 100;

  ThetaScheduleE2();
  double operator()(std::uint64_t k) const noexcept {
    return table_[k % kPeriod];
  }
  std::span<const double, kPeriod> table() const noexcept { return table_; }

private:
  std::array<double, kPeriod> table_{};
};

/// theta_k = rho_{min(k+6, 56)} where rho is the FISTA sequence from rho_0 = 1,
/// frozen from index 56 on.
class ThetaScheduleE3 {
public:
  static constexpr std::size_t kTableSize = 57;
  static constexpr std::size_t kOffset = 6;

  explicit ThetaScheduleE3(double gamma = 0.95);
  double operator()(std::uint64_t k) const noexcept;
  double gamma() const noexcept { return gamma_; }
  std::span<const double, kTableSize> rho() const noexcept { return rho_; }

private:
  std::array<double, kTableSize> rho_{};
  double gamma_;
};

double theta_e2(std::uint64_t k);
double theta_e3(std::uint64_t k);

struct ConditionCheck {
  double sup_value;
  bool ok;
};

/// max over 1 <= k <= horizon of theta_k^2 (1 - theta_{k-1})^2 - theta_{k-1}^2;
/// ok iff the max is <= -delta. `thetas` must hold indices 0..horizon.
ConditionCheck validate_condition_e2(std::span<const double> thetas,
                                     std::size_t horizon, double delta = 1e-8);

/// max over 1 <= k <= horizon of
///   max{theta_k^2 (1 - theta_{k-1})^2 / gamma - theta_{k-1}^2,
///       theta_k^2 / (1 - gamma) - 1};
/// ok iff the max is <= -delta. k = 0 is not part of the condition.
ConditionCheck validate_condition_e3(std::span<const double> thetas,
                                     double gamma, std::size_t horizon,
                                     double delta = 1e-8);

/// First `count` values of a schedule, for the validators.
std::vector<double> theta_prefix_e2(std::size_t count);
std::vector<double> theta_prefix_e3(std::size_t count);

/// Decrease constants used by the potential monitors, from a theta prefix
/// covering indices 0..horizon.
/// A1 = (L/2) min_k {theta_{k-1}^2 - theta_k^2 (1 - theta_{k-1})^2}.
double e2_decrease_constant(std::span<const double> thetas, std::size_t horizon,
                            double L);
/// A2 = (L/2) min_k min{theta_{k-1}^2 - theta_k^2 (1 - theta_{k-1})^2 / gamma,
///                      1 - theta_k^2 / (1 - gamma)}.
double e3_decrease_constant(std::span<const double> thetas, double gamma,
                            std::size_t horizon, double L);

} // namespace irl1
