#include "common.hpp"

#include <array>
#include <cstdio>

namespace irl1 {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
  case SolverKind::Irl1e1:
    return "irl1e1";
  case SolverKind::Irl1e2:
    return "irl1e2";
  case SolverKind::Irl1e3:
    return "irl1e3";
  case SolverKind::Gist:
    return "gist";
  case SolverKind::Irl1ls:
    return "irl1ls";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  for (SolverKind kind : kAllSolvers)
    if (to_string(kind) == name)
      return kind;
  return std::nullopt;
}

double h1_value(const ProblemInstance &p,
                const Eigen::Ref<const Eigen::VectorXd> &x,
                const Eigen::Ref<const Eigen::VectorXd> &y) {
  const double F = p.objective(x);
  if (!std::isfinite(F))
    return F;
  return F + 0.5 * p.lipschitz() * (x - y).squaredNorm();
}

double h3_value(const ProblemInstance &p,
                const Eigen::Ref<const Eigen::VectorXd> &x,
                const Eigen::Ref<const Eigen::VectorXd> &y,
                const Eigen::Ref<const Eigen::VectorXd> &w) {
  const double F = p.objective(x);
  if (!std::isfinite(F))
    return F;
  const double L = p.lipschitz();
  return F + 0.5 * L * (w - y).squaredNorm() + 0.5 * L * (w - x).squaredNorm();
}

SolveReport solve(SolverKind kind, const ProblemInstance &p,
                  const SolverOptions &opts) {
  switch (kind) {
  case SolverKind::Irl1e1:
    return solve_irl1e1(p, opts);
  case SolverKind::Irl1e2:
    return solve_irl1e2(p, opts);
  case SolverKind::Irl1e3:
    return solve_irl1e3(p, opts);
  case SolverKind::Gist:
    return solve_gist(p, opts);
  case SolverKind::Irl1ls:
    return solve_irl1ls(p, opts);
  }
  throw argument_error("unknown solver kind");
}

namespace detail {

void validate_options(const SolverOptions &o) {
  if (!(o.tol > 0.0))
    throw argument_error("solver option tol must be positive");
  if (o.max_iter <= 0)
    throw argument_error("solver option max_iter must be positive");
  if (!(o.monitor_slack >= 0.0))
    throw argument_error("solver option monitor_slack must be nonnegative");
  if (!(o.gamma > 0.0 && o.gamma < 1.0))
    throw argument_error("solver option gamma must lie in (0, 1)");
  if (!(o.c > 0.0))
    throw argument_error("line-search option c must be positive");
  if (!(o.tau > 1.0))
    throw argument_error("line-search option tau must exceed 1");
  if (o.memory < 0)
    throw argument_error("line-search option M must be nonnegative");
  if (!(o.L_min > 0.0 && o.L_min < o.L_max))
    throw argument_error("line-search options need 0 < L_min < L_max");
}

Prepared prepare(const ProblemInstance &p, const SolverOptions &opts) {
  validate_options(opts);
  if (!p.box().contains(Eigen::VectorXd::Zero(p.cols())))
    throw argument_error("solvers start at the origin, which must lie in the box");
  if (p.has_lipschitz())
    return {p, p.lipschitz(), 0.0, p.penalty().weight_lipschitz()};
  Stopwatch clock;
  const double L = estimate_lipschitz(p.A());
  const double elapsed = clock.seconds();
  return {p.with_lipschitz(L), L, elapsed, p.penalty().weight_lipschitz()};
}

bool finish_if_origin_stationary(const Prepared &prep, SolveReport &report) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(prep.problem.cols());
  if (stationarity_residual(prep.problem, zero) != 0.0)
    return false;
  report.iterations = 0;
  report.converged = true;
  report.termination_value = 0.0;
  finalize(prep, zero, report);
  return true;
}

void finalize(const Prepared &prep, Eigen::VectorXd x, SolveReport &report) {
  report.fval = prep.problem.objective(x);
  report.residual = stationarity_residual(prep.problem, x);
  report.lipschitz = prep.L;
  report.lipschitz_time = prep.lipschitz_time;
  report.x_final = std::move(x);
}

void check_decrease(const SolverOptions &opts, const char *solver,
                    const char *potential_name, std::int64_t iteration,
                    double potential_prev, double potential_next,
                    double required_drop, SolveReport &report) {
  ++report.monitor_checks;
  const double drop = potential_prev - potential_next;
  const double slack = opts.monitor_slack;
  if (potential_next <= potential_prev + slack &&
      drop >= required_drop - slack)
    return;
  std::array<char, 320> msg{};
  std::snprintf(msg.data(), msg.size(),
                "%s: %s decrease violated at iteration %lld: previous=%.17g "
                "next=%.17g drop=%.6e required=%.6e slack=%.1e",
                solver, potential_name, static_cast<long long>(iteration),
                potential_prev, potential_next, drop, required_drop, slack);
  throw Error(ErrorKind::MonitorViolation, msg.data());
}

} // namespace detail
} // namespace irl1
