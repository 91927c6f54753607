// Reweighted l1 loops with extrapolation. Each iteration forms the weights
// s = Phi'_+(|x^k|), an extrapolated point y^k, and one gradient A^T(Ay - b);
// the subproblems are weighted-l1 proxes around y - grad/step.

#include "common.hpp"
#include "irl1/schedules.hpp"

#include <algorithm>

namespace irl1 {

using detail::Prepared;
using Eigen::VectorXd;

namespace {

/// theta_k for IRL1e2 / IRL1e3, built-in or caller supplied.
class ThetaSequence {
public:
  ThetaSequence(SolverKind kind, const SolverOptions &opts)
      : custom_(opts.custom_schedule), e2_(kind == SolverKind::Irl1e2) {
    for (double t : custom_)
      if (!(t > 0.0 && t <= 1.0))
        throw argument_error("custom theta schedule values must lie in (0, 1]");
  }

  bool is_custom() const { return !custom_.empty(); }

  double operator()(std::int64_t k) const {
    if (is_custom())
      return custom_[std::min<std::size_t>(static_cast<std::size_t>(k),
                                           custom_.size() - 1)];
    return e2_ ? theta_e2(static_cast<std::uint64_t>(k))
               : theta_e3(static_cast<std::uint64_t>(k));
  }

  /// Horizon that certifies the sup over all k >= 1: two periods for the
  /// periodic table, past the saturation index for the frozen one, and one
  /// step into the constant tail for custom sequences.
  std::size_t horizon() const {
    if (is_custom())
      return std::max<std::size_t>(2, custom_.size());
    return e2_ ? 2 * ThetaScheduleE2::kPeriod : 60;
  }

  std::vector<double> prefix() const {
    std::vector<double> out(horizon() + 1);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = (*this)(static_cast<std::int64_t>(k));
    return out;
  }

private:
  std::vector<double> custom_;
  bool e2_;
};

/// Decrease constant for the monitor; throws when the schedule does not meet
/// the condition the decrease depends on. Custom schedules are only checked
/// when monitoring.
double schedule_constant(SolverKind kind, const ThetaSequence &thetas,
                         const SolverOptions &opts, double L) {
  if (thetas.is_custom() && !opts.monitor)
    return 0.0;
  const std::vector<double> prefix = thetas.prefix();
  const std::size_t horizon = thetas.horizon();
  ConditionCheck check =
      kind == SolverKind::Irl1e2
          ? validate_condition_e2(prefix, horizon)
          : validate_condition_e3(prefix, opts.gamma, horizon);
  if (!check.ok)
    throw argument_error(std::string(to_string(kind)) +
                         ": theta schedule fails its convergence condition "
                         "(sup = " + std::to_string(check.sup_value) + ")");
  return kind == SolverKind::Irl1e2
             ? e2_decrease_constant(prefix, horizon, L)
             : e3_decrease_constant(prefix, opts.gamma, horizon, L);
}

} // namespace

SolveReport solve_irl1e1(const ProblemInstance &input, const SolverOptions &opts) {
  const Prepared prep = detail::prepare(input, opts);
  const ProblemInstance &p = prep.problem;
  SolveReport report;
  if (detail::finish_if_origin_stationary(prep, report))
    return report;

  const bool custom = !opts.custom_schedule.empty();
  for (double beta : opts.custom_schedule)
    if (!(beta >= 0.0 && beta < 1.0))
      throw argument_error("custom beta schedule values must lie in [0, 1)");

  const Eigen::MatrixXd &A = p.A();
  const VectorXd &b = p.b();
  const Eigen::Index n = p.cols();
  const double L = prep.L;
  const double rho = prep.rho;
  const bool tracing = opts.monitor || opts.record_trace;

  VectorXd x = VectorXd::Zero(n), x_prev = VectorXd::Zero(n);
  VectorXd y_prev = VectorXd::Zero(n);
  VectorXd y(n), s(n), grad(n), x_new(n);
  VectorXd residual(p.rows());

  FistaState state;
  double sup_beta_sq = 0.0;
  // H1(x^0, x^{-1}) = F(0).
  double potential = 0.5 * b.squaredNorm();

  detail::Stopwatch clock;
  for (std::int64_t k = 0; k < opts.max_iter; ++k) {
    double beta;
    if (custom) {
      beta = opts.custom_schedule[std::min<std::size_t>(
          static_cast<std::size_t>(k), opts.custom_schedule.size() - 1)];
    } else {
      const bool restart = k >= 1 && adaptive_restart_test(y_prev, x, x_prev);
      const BetaStep step = beta_e1(state, restart);
      beta = step.beta;
      state = step.next;
      if (step.restarted && k >= 1)
        ++report.restarts;
    }

    p.penalty().weights(x, s);
    y = x + beta * (x - x_prev);
    residual.noalias() = A * y;
    residual -= b;
    grad.noalias() = A.transpose() * residual;
    x_new = y - grad / L;
    prox_weighted_l1_box(x_new, s, L, p.box(), x_new);

    const double dist_y = (x_new - y).norm();
    const double step_norm = (x_new - x).norm();
    const double crit =
        (2.0 * L * dist_y + rho * step_norm) / detail::normalizer(x_new);
    detail::require_finite(crit, "irl1e1", k);

    if (tracing) {
      const double F_new = p.objective(x_new);
      const double H_new = F_new + 0.5 * L * step_norm * step_norm;
      if (opts.monitor) {
        sup_beta_sq = std::max(sup_beta_sq, beta * beta);
        const double D1 = 0.5 * L * (1.0 - sup_beta_sq);
        detail::check_decrease(opts, "irl1e1", "H1", k, potential, H_new,
                               D1 * (x - x_prev).squaredNorm(), report);
      }
      TraceEntry entry;
      entry.iteration = k + 1;
      entry.fval = F_new;
      entry.potential = H_new;
      entry.step_norm = step_norm;
      entry.extrapolation = beta;
      report.trace.push_back(entry);
      potential = H_new;
    }

    std::swap(x_prev, x);
    std::swap(x, x_new);
    std::swap(y_prev, y);
    report.iterations = k + 1;
    report.termination_value = crit;
    if (crit < opts.tol) {
      report.converged = true;
      break;
    }
  }
  report.wall_time = clock.seconds();
  detail::finalize(prep, std::move(x), report);
  return report;
}

SolveReport solve_irl1e2(const ProblemInstance &input, const SolverOptions &opts) {
  const Prepared prep = detail::prepare(input, opts);
  const ProblemInstance &p = prep.problem;
  const ThetaSequence thetas(SolverKind::Irl1e2, opts);
  const double A1 = schedule_constant(SolverKind::Irl1e2, thetas, opts, prep.L);
  SolveReport report;
  if (detail::finish_if_origin_stationary(prep, report))
    return report;

  const Eigen::MatrixXd &A = p.A();
  const VectorXd &b = p.b();
  const Eigen::Index n = p.cols();
  const double L = prep.L;
  const double rho = prep.rho;
  const bool tracing = opts.monitor || opts.record_trace;

  VectorXd x = VectorXd::Zero(n), x_prev = VectorXd::Zero(n);
  VectorXd z = VectorXd::Zero(n);
  VectorXd y(n), s(n), grad(n), z_new(n), x_new(n);
  VectorXd residual(p.rows());
  double potential = 0.0;

  detail::Stopwatch clock;
  for (std::int64_t k = 0; k < opts.max_iter; ++k) {
    const double theta = thetas(k);
    const double step = L * theta;

    p.penalty().weights(x, s);
    y = (1.0 - theta) * x + theta * z;
    residual.noalias() = A * y;
    residual -= b;
    grad.noalias() = A.transpose() * residual;
    z_new = z - grad / step;
    prox_weighted_l1_box(z_new, s, step, p.box(), z_new);
    x_new = (1.0 - theta) * x + theta * z_new;

    const double crit = (L * (z_new - y).norm() + rho * (x - z_new).norm() +
                         L * (x_new - y).norm()) /
                        detail::normalizer(z_new);
    detail::require_finite(crit, "irl1e2", k);

    if (tracing) {
      const double step_norm = (x_new - x).norm();
      const double F_new = p.objective(x_new);
      const double H_new = F_new + 0.5 * L * step_norm * step_norm;
      // The decrease chain starts at H1(x^1, x^0).
      if (opts.monitor && k >= 1)
        detail::check_decrease(opts, "irl1e2", "H1", k, potential, H_new,
                               A1 * (x_prev - z).squaredNorm(), report);
      TraceEntry entry;
      entry.iteration = k + 1;
      entry.fval = F_new;
      entry.potential = H_new;
      entry.step_norm = step_norm;
      entry.extrapolation = theta;
      report.trace.push_back(entry);
      potential = H_new;
    }

    std::swap(x_prev, x);
    std::swap(x, x_new);
    std::swap(z, z_new);
    report.iterations = k + 1;
    report.termination_value = crit;
    if (crit < opts.tol) {
      report.converged = true;
      break;
    }
  }
  report.wall_time = clock.seconds();
  // z^{k+1} is the point the termination rule certifies.
  detail::finalize(prep, std::move(z), report);
  return report;
}

SolveReport solve_irl1e3(const ProblemInstance &input, const SolverOptions &opts) {
  const Prepared prep = detail::prepare(input, opts);
  const ProblemInstance &p = prep.problem;
  const ThetaSequence thetas(SolverKind::Irl1e3, opts);
  const double D3 = schedule_constant(SolverKind::Irl1e3, thetas, opts, prep.L);
  SolveReport report;
  if (detail::finish_if_origin_stationary(prep, report))
    return report;

  const Eigen::MatrixXd &A = p.A();
  const VectorXd &b = p.b();
  const Eigen::Index n = p.cols();
  const double L = prep.L;
  const double rho = prep.rho;
  const bool tracing = opts.monitor || opts.record_trace;

  VectorXd x = VectorXd::Zero(n), x_prev = VectorXd::Zero(n);
  VectorXd z = VectorXd::Zero(n), w = VectorXd::Zero(n);
  VectorXd y(n), s(n), grad(n), z_new(n), x_new(n), w_new(n);
  VectorXd residual(p.rows());
  double potential = 0.0;

  detail::Stopwatch clock;
  for (std::int64_t k = 0; k < opts.max_iter; ++k) {
    const double theta = thetas(k);
    const double step = L * theta;

    p.penalty().weights(x, s);
    y = (1.0 - theta) * x + theta * z;
    residual.noalias() = A * y;
    residual -= b;
    grad.noalias() = A.transpose() * residual;
    z_new = z - grad / step;
    prox_weighted_l1_box(z_new, s, step, p.box(), z_new);
    x_new = y - grad / L;
    prox_weighted_l1_box(x_new, s, L, p.box(), x_new);

    const double step_norm = (x_new - x).norm();
    const double crit = (2.0 * L * (x_new - y).norm() + rho * step_norm) /
                        detail::normalizer(x_new);
    detail::require_finite(crit, "irl1e3", k);

    if (tracing) {
      w_new = (1.0 - theta) * x + theta * z_new;
      const double F_new = p.objective(x_new);
      const double H_new = F_new + 0.5 * L * (w_new - x).squaredNorm() +
                           0.5 * L * (w_new - x_new).squaredNorm();
      // H3(x^k, x^{k-1}, w^k) needs w^k, defined from k = 1 on.
      if (opts.monitor && k >= 1)
        detail::check_decrease(
            opts, "irl1e3", "H3", k, potential, H_new,
            D3 * ((x_prev - z).squaredNorm() + (w - x).squaredNorm()), report);
      TraceEntry entry;
      entry.iteration = k + 1;
      entry.fval = F_new;
      entry.potential = H_new;
      entry.step_norm = step_norm;
      entry.extrapolation = theta;
      report.trace.push_back(entry);
      potential = H_new;
      std::swap(w, w_new);
    }

    std::swap(x_prev, x);
    std::swap(x, x_new);
    std::swap(z, z_new);
    report.iterations = k + 1;
    report.termination_value = crit;
    if (crit < opts.tol) {
      report.converged = true;
      break;
    }
  }
  report.wall_time = clock.seconds();
  detail::finalize(prep, std::move(x), report);
  return report;
}

} // namespace irl1
