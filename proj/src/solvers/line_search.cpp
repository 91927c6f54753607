#include "common.hpp"

#include <algorithm>
#include <deque>

namespace irl1 {

using detail::Prepared;
using Eigen::VectorXd;

namespace {

enum class Candidate { ScalarLogProx, WeightedL1 };

/// Shared loop of GIST and IRL1ls: BB-initialized L_k, backtracking by tau
/// until F(x+) <= max_{[k-M]_+ <= j <= k} F(x^j) - (c/2)||x+ - x^k||^2.
SolveReport nonmonotone_loop(const Prepared &prep, const SolverOptions &opts,
                             Candidate candidate, const char *name) {
  const ProblemInstance &p = prep.problem;
  SolveReport report;
  if (detail::finish_if_origin_stationary(prep, report))
    return report;

  const Eigen::MatrixXd &A = p.A();
  const VectorXd &b = p.b();
  const Penalty &pen = p.penalty();
  const Eigen::Index n = p.cols();
  const double rho = prep.rho;
  const bool tracing = opts.monitor || opts.record_trace;
  const std::size_t history_size = static_cast<std::size_t>(opts.memory) + 1;

  VectorXd x = VectorXd::Zero(n), x_new(n), s(n), t(n);
  VectorXd Ax = VectorXd::Zero(p.rows()), Ax_prev = Ax, Ax_new(p.rows());
  VectorXd x_prev = x;
  VectorXd grad = -(A.transpose() * b);
  VectorXd grad_new(n);

  std::deque<double> history{0.5 * b.squaredNorm()};

  detail::Stopwatch clock;
  for (std::int64_t k = 0; k < opts.max_iter; ++k) {
    double Lk = 1.0;
    if (k >= 1) {
      const double dx = (x - x_prev).squaredNorm();
      const double ratio = dx > 0.0 ? (Ax - Ax_prev).squaredNorm() / dx : 0.0;
      Lk = std::min(opts.L_max, std::max(ratio, opts.L_min));
    }
    if (candidate == Candidate::WeightedL1)
      pen.weights(x, s);
    const double reference = *std::max_element(history.begin(), history.end());

    int retries = 0;
    double F_new = 0.0;
    double step_sq = 0.0;
    for (;;) {
      t = x - grad / Lk;
      if (candidate == Candidate::ScalarLogProx) {
        for (Eigen::Index i = 0; i < n; ++i)
          x_new[i] = prox_scalar_log(t[i], Lk, pen.lambda(), pen.shape());
      } else {
        prox_weighted_l1_box(t, s, Lk, p.box(), x_new);
      }
      Ax_new.noalias() = A * x_new;
      F_new = detail::objective_from_product(p, x_new, Ax_new);
      step_sq = (x_new - x).squaredNorm();
      detail::require_finite(F_new, name, k);
      if (F_new <= reference - 0.5 * opts.c * step_sq)
        break;
      Lk *= opts.tau;
      ++retries;
      if (Lk > opts.L_max)
        throw numerical_error(std::string(name) +
                              ": line search exceeded L_max at iteration " +
                              std::to_string(k));
    }
    report.line_search_retries += retries;

    grad_new.noalias() = A.transpose() * (Ax_new - b);
    const double step_norm = std::sqrt(step_sq);
    const double modulus = candidate == Candidate::WeightedL1 ? Lk + rho : Lk;
    const double crit = ((grad - grad_new).norm() + modulus * step_norm) /
                        detail::normalizer(x_new);
    detail::require_finite(crit, name, k);

    if (tracing) {
      if (opts.monitor)
        detail::check_decrease(opts, name, "nonmonotone F", k, reference, F_new,
                               0.5 * opts.c * step_sq, report);
      TraceEntry entry;
      entry.iteration = k + 1;
      entry.fval = F_new;
      entry.potential = F_new;
      entry.step_norm = step_norm;
      entry.reference = reference;
      entry.step_modulus = Lk;
      entry.retries = retries;
      report.trace.push_back(entry);
    }

    history.push_back(F_new);
    if (history.size() > history_size)
      history.pop_front();
    std::swap(x_prev, x);
    std::swap(x, x_new);
    std::swap(Ax_prev, Ax);
    std::swap(Ax, Ax_new);
    std::swap(grad, grad_new);
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

} // namespace

SolveReport solve_gist(const ProblemInstance &input, const SolverOptions &opts) {
  if (input.penalty().family() != PenaltyFamily::Log)
    throw argument_error("gist: only the log penalty has a closed-form prox here");
  if (!input.box().is_unbounded())
    throw argument_error("gist: box constraints are not supported");
  const Prepared prep = detail::prepare(input, opts);
  return nonmonotone_loop(prep, opts, Candidate::ScalarLogProx, "gist");
}

SolveReport solve_irl1ls(const ProblemInstance &input, const SolverOptions &opts) {
  const Prepared prep = detail::prepare(input, opts);
  return nonmonotone_loop(prep, opts, Candidate::WeightedL1, "irl1ls");
}

} // namespace irl1
