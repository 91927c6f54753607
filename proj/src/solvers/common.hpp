#pragma once

#include "irl1/error.hpp"
#include "irl1/solvers.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace irl1::detail {

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

/// The instance with a Lipschitz estimate attached, plus bookkeeping.
struct Prepared {
  ProblemInstance problem;
  double L;
  double lipschitz_time;
  double rho; // weight-Lipschitz modulus of the penalty
};

void validate_options(const SolverOptions &opts);
Prepared prepare(const ProblemInstance &p, const SolverOptions &opts);

inline double normalizer(const Eigen::VectorXd &x) {
  return std::max(1.0, x.norm());
}

/// F(x) given a precomputed Ax.
inline double objective_from_product(const ProblemInstance &p,
                                     const Eigen::VectorXd &x,
                                     const Eigen::VectorXd &Ax) {
  return 0.5 * (Ax - p.b()).squaredNorm() + p.penalty().total(x);
}

/// Report for the origin when it is already exactly stationary.
bool finish_if_origin_stationary(const Prepared &prep, SolveReport &report);

/// Fills x_final, fval and the independent residual.
void finalize(const Prepared &prep, Eigen::VectorXd x, SolveReport &report);

inline void require_finite(double value, const char *solver,
                           std::int64_t iteration) {
  if (!std::isfinite(value))
    throw numerical_error(std::string(solver) +
                          ": non-finite iterate at iteration " +
                          std::to_string(iteration));
}

/// Checks potential_next <= potential_prev + slack and
/// potential_prev - potential_next >= required_drop - slack.
void check_decrease(const SolverOptions &opts, const char *solver,
                    const char *potential_name, std::int64_t iteration,
                    double potential_prev, double potential_next,
                    double required_drop, SolveReport &report);

} // namespace irl1::detail
