#pragma once

#include "irl1/problem.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace irl1 {

enum class SolverKind { Irl1e1, Irl1e2, Irl1e3, Gist, Irl1ls };

std::string_view to_string(SolverKind kind);
/// Parses "irl1e1", "irl1e2", "irl1e3", "gist" or "irl1ls".
std::optional<SolverKind> parse_solver_kind(std::string_view name);
inline constexpr SolverKind kAllSolvers[] = {
    SolverKind::Irl1e1, SolverKind::Irl1e2, SolverKind::Irl1e3,
    SolverKind::Gist, SolverKind::Irl1ls};

struct SolverOptions {
  double tol = 1e-4;
  std::int64_t max_iter = 1'000'000;

  /// Check the potential-decrease inequalities every iteration and throw
  /// ErrorKind::MonitorViolation when one fails by more than monitor_slack.
  /// Implies record_trace.
  bool monitor = false;
  double monitor_slack = 1e-9;
  bool record_trace = false;

  /// Condition margin for the IRL1e3 schedule.
  double gamma = 0.95;

  // Nonmonotone line search (GIST, IRL1ls).
  double c = 1e-4;
  double tau = 2.0;
  int memory = 4; // M
  double L_min = 1e-8;
  double L_max = 1e8;

  /// Replaces the built-in extrapolation sequence: beta_k for IRL1e1 (restarts
  /// disabled), theta_k for IRL1e2/IRL1e3. Index k reads
  /// custom_schedule[min(k, size - 1)].
  std::vector<double> custom_schedule;
};

struct TraceEntry {
  std::int64_t iteration = 0;
  double fval = 0.0;
  /// H1 (IRL1e1, IRL1e2), H3 (IRL1e3), or F (line-search solvers).
  double potential = 0.0;
  /// ||x^{k+1} - x^k||.
  double step_norm = 0.0;
  /// Extrapolation parameter used (beta_k or theta_k); 0 for line search.
  double extrapolation = 0.0;
  /// Line-search solvers: nonmonotone reference max F and the accepted L_k.
  double reference = 0.0;
  double step_modulus = 0.0;
  int retries = 0;
};

struct SolveReport {
  Eigen::VectorXd x_final;
  double fval = 0.0;
  std::int64_t iterations = 0;
  /// dist(0, dF(x_final)), recomputed independently of the loop.
  double residual = 0.0;
  /// Normalized in-loop termination quantity at exit.
  double termination_value = 0.0;
  double wall_time = 0.0;
  /// Time spent estimating L inside the solver; 0 when the instance had one.
  double lipschitz_time = 0.0;
  double lipschitz = 0.0;
  bool converged = false;
  std::int64_t line_search_retries = 0;
  std::int64_t restarts = 0;
  std::int64_t monitor_checks = 0;
  std::vector<TraceEntry> trace;
};

/// H1(x, y) = F(x) + (L/2)||x - y||^2; +inf outside the box.
double h1_value(const ProblemInstance &p,
                const Eigen::Ref<const Eigen::VectorXd> &x,
                const Eigen::Ref<const Eigen::VectorXd> &y);
/// H3(x, y, w) = F(x) + (L/2)||w - y||^2 + (L/2)||w - x||^2; +inf outside the box.
double h3_value(const ProblemInstance &p,
                const Eigen::Ref<const Eigen::VectorXd> &x,
                const Eigen::Ref<const Eigen::VectorXd> &y,
                const Eigen::Ref<const Eigen::VectorXd> &w);

// All solvers start from the origin, which must lie in the box. When the
// instance carries no Lipschitz estimate one is computed and timed.

/// Reweighted l1 with FISTA-type extrapolation y = x + beta (x - x_prev) and
/// fixed (every 200) plus adaptive restart.
SolveReport solve_irl1e1(const ProblemInstance &p, const SolverOptions &opts = {});
/// Auslender-Teboulle-type extrapolation; returns z^{k+1}.
SolveReport solve_irl1e2(const ProblemInstance &p, const SolverOptions &opts = {});
/// Lan-Lu-Monteiro-type extrapolation with separate z and x proximal steps.
SolveReport solve_irl1e3(const ProblemInstance &p, const SolverOptions &opts = {});
/// GIST with BB initialization and nonmonotone line search; Log penalty and
/// unbounded box only.
SolveReport solve_gist(const ProblemInstance &p, const SolverOptions &opts = {});
/// Reweighted l1 with BB initialization and nonmonotone line search.
SolveReport solve_irl1ls(const ProblemInstance &p, const SolverOptions &opts = {});

SolveReport solve(SolverKind kind, const ProblemInstance &p,
                  const SolverOptions &opts = {});

} // namespace irl1
