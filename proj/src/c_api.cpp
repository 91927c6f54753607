#include "irl1/irl1.h"

#include "irl1/bench.hpp"
#include "irl1/error.hpp"
#include "irl1/problem.hpp"
#include "irl1/schedules.hpp"
#include "irl1/solvers.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

struct irl1_problem {
  irl1::ProblemInstance instance;
};

struct irl1_report {
  irl1::SolveReport report;
};

namespace {

thread_local std::string last_error;

irl1_status status_of(irl1::ErrorKind kind) {
  switch (kind) {
  case irl1::ErrorKind::Argument:
    return IRL1_ERR_ARGUMENT;
  case irl1::ErrorKind::Domain:
    return IRL1_ERR_DOMAIN;
  case irl1::ErrorKind::Degenerate:
    return IRL1_ERR_DEGENERATE;
  case irl1::ErrorKind::Numerical:
    return IRL1_ERR_NUMERICAL;
  case irl1::ErrorKind::MonitorViolation:
    return IRL1_ERR_MONITOR;
  case irl1::ErrorKind::Io:
    return IRL1_ERR_IO;
  case irl1::ErrorKind::Memory:
    return IRL1_ERR_MEMORY;
  }
  return IRL1_ERR_INTERNAL;
}

irl1_status fail(irl1_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

/// Runs body, translating exceptions into status codes.
template <typename F> irl1_status guarded(F &&body) {
  try {
    body();
    last_error.clear();
    return IRL1_OK;
  } catch (const irl1::Error &e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(IRL1_ERR_MEMORY, "out of memory");
  } catch (const std::exception &e) {
    return fail(IRL1_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(IRL1_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char *what) {
  if (!ok)
    throw irl1::argument_error(what);
}

irl1::Penalty make_penalty(const irl1_penalty_spec *spec) {
  require(spec != nullptr, "penalty spec is null");
  switch (spec->family) {
  case IRL1_PENALTY_LOG:
    return irl1::Penalty::log(spec->lambda, spec->shape);
  case IRL1_PENALTY_SCAD:
    return irl1::Penalty::scad(spec->lambda, spec->shape);
  case IRL1_PENALTY_MCP:
    return irl1::Penalty::mcp(spec->lambda, spec->shape);
  case IRL1_PENALTY_L1:
    return irl1::Penalty::l1(spec->lambda);
  }
  throw irl1::argument_error("unknown penalty family");
}

irl1::Box make_box(Eigen::Index n, double lo, double hi) {
  if (lo == -INFINITY && hi == INFINITY)
    return irl1::Box::unbounded(n);
  return irl1::Box::uniform(n, lo, hi);
}

irl1::SolverKind make_kind(irl1_solver_kind kind) {
  switch (kind) {
  case IRL1_SOLVER_IRL1E1:
    return irl1::SolverKind::Irl1e1;
  case IRL1_SOLVER_IRL1E2:
    return irl1::SolverKind::Irl1e2;
  case IRL1_SOLVER_IRL1E3:
    return irl1::SolverKind::Irl1e3;
  case IRL1_SOLVER_GIST:
    return irl1::SolverKind::Gist;
  case IRL1_SOLVER_IRL1LS:
    return irl1::SolverKind::Irl1ls;
  }
  throw irl1::argument_error("unknown solver kind");
}

bool ends_with(const std::string &s, const char *suffix) {
  const std::size_t k = std::strlen(suffix);
  return s.size() >= k && s.compare(s.size() - k, k, suffix) == 0;
}

Eigen::Map<const Eigen::VectorXd> vector_arg(const irl1_problem *problem,
                                             const double *x, size_t n) {
  require(problem != nullptr && x != nullptr, "null argument");
  require(static_cast<Eigen::Index>(n) == problem->instance.cols(),
          "vector length does not match the problem");
  return {x, static_cast<Eigen::Index>(n)};
}

const int64_t kDeskSizes[] = {180, 640, 360, 1280, 540, 1920, 720, 2560};
const int64_t kFullScaleSizes[] = {720,  2560,  1440, 5120,  2160, 7680,  2880,
                               10240, 3600, 12800, 4320, 15360, 5040, 17920,
                               5760, 20480, 6480, 23040, 7200, 25600};
const double kDefaultEpsilons[] = {0.1, 0.5};
const irl1_solver_kind kDefaultSolvers[] = {
    IRL1_SOLVER_IRL1E1, IRL1_SOLVER_IRL1E2, IRL1_SOLVER_IRL1E3,
    IRL1_SOLVER_GIST, IRL1_SOLVER_IRL1LS};

} // namespace

extern "C" {

const char *irl1_version(void) { return "0.1.0"; }

const char *irl1_status_string(irl1_status status) {
  switch (status) {
  case IRL1_OK:
    return "ok";
  case IRL1_ERR_ARGUMENT:
    return "invalid argument";
  case IRL1_ERR_DOMAIN:
    return "domain error";
  case IRL1_ERR_DEGENERATE:
    return "degenerate input";
  case IRL1_ERR_NUMERICAL:
    return "numerical failure";
  case IRL1_ERR_MONITOR:
    return "monitor violation";
  case IRL1_ERR_IO:
    return "i/o error";
  case IRL1_ERR_MEMORY:
    return "memory limit";
  case IRL1_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *irl1_last_error(void) { return last_error.c_str(); }

irl1_status irl1_solver_from_name(const char *name, irl1_solver_kind *out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    const auto kind = irl1::parse_solver_kind(name);
    if (!kind)
      throw irl1::argument_error(std::string("unknown solver '") + name + "'");
    *out = static_cast<irl1_solver_kind>(static_cast<int>(*kind));
  });
}

const char *irl1_solver_name(irl1_solver_kind kind) {
  try {
    return irl1::to_string(make_kind(kind)).data();
  } catch (...) {
    return "unknown";
  }
}

irl1_status irl1_penalty_value(const irl1_penalty_spec *penalty, double t,
                               double *out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = make_penalty(penalty).value(t);
  });
}

irl1_status irl1_penalty_weight(const irl1_penalty_spec *penalty, double t,
                                double *out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = make_penalty(penalty).weight(t);
  });
}

irl1_status irl1_problem_create(int64_t m, int64_t n, const double *A,
                                const double *b,
                                const irl1_penalty_spec *penalty,
                                const double *box_lower,
                                const double *box_upper, irl1_problem **out) {
  return guarded([&] {
    require(out != nullptr && A != nullptr && b != nullptr, "null argument");
    require(m > 0 && n > 0, "dimensions must be positive");
    require((box_lower == nullptr) == (box_upper == nullptr),
            "give both box bounds or neither");
    Eigen::MatrixXd Am = Eigen::Map<const Eigen::MatrixXd>(A, m, n);
    Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b, m);
    irl1::Box box = box_lower == nullptr
                        ? irl1::Box::unbounded(n)
                        : irl1::Box(Eigen::Map<const Eigen::VectorXd>(box_lower, n),
                                    Eigen::Map<const Eigen::VectorXd>(box_upper, n));
    *out = new irl1_problem{irl1::ProblemInstance(
        std::move(Am), std::move(bv), make_penalty(penalty), std::move(box))};
  });
}

irl1_status irl1_problem_generate(const irl1_recipe *recipe,
                                  const irl1_penalty_spec *penalty,
                                  double box_lo, double box_hi,
                                  irl1_problem **out) {
  return guarded([&] {
    require(recipe != nullptr && out != nullptr, "null argument");
    irl1::InstanceRecipe r;
    r.m = recipe->m;
    r.n = recipe->n;
    if (recipe->sparsity > 0)
      r.sparsity = recipe->sparsity;
    r.noise_scale = recipe->noise_scale;
    r.seed = recipe->seed;
    *out = new irl1_problem{irl1::generate_instance(
        r, make_penalty(penalty), make_box(recipe->n, box_lo, box_hi))};
  });
}

irl1_status irl1_problem_load(const char *path,
                              const irl1_penalty_spec *penalty, double box_lo,
                              double box_hi, irl1_problem **out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    const std::string p = path;
    irl1::LeastSquaresData data = ends_with(p, ".csv")
                                      ? irl1::load_instance_csv(p)
                                      : irl1::load_instance_binary(p);
    const Eigen::Index n = data.A.cols();
    *out = new irl1_problem{
        irl1::ProblemInstance(std::move(data.A), std::move(data.b),
                              make_penalty(penalty), make_box(n, box_lo, box_hi))};
  });
}

irl1_status irl1_problem_save(const irl1_problem *problem, const char *path) {
  return guarded([&] {
    require(problem != nullptr && path != nullptr, "null argument");
    const std::string p = path;
    if (ends_with(p, ".csv"))
      irl1::save_instance_csv(problem->instance, p);
    else
      irl1::save_instance_binary(problem->instance, p);
  });
}

void irl1_problem_destroy(irl1_problem *problem) { delete problem; }

irl1_status irl1_problem_dims(const irl1_problem *problem, int64_t *m,
                              int64_t *n) {
  return guarded([&] {
    require(problem != nullptr && m != nullptr && n != nullptr, "null argument");
    *m = problem->instance.rows();
    *n = problem->instance.cols();
  });
}

irl1_status irl1_problem_estimate_lipschitz(irl1_problem *problem, double *L,
                                            double *seconds) {
  return guarded([&] {
    require(problem != nullptr, "null argument");
    const auto start = std::chrono::steady_clock::now();
    const double value = irl1::estimate_lipschitz(problem->instance.A());
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    problem->instance = problem->instance.with_lipschitz(value);
    if (L != nullptr)
      *L = value;
    if (seconds != nullptr)
      *seconds = elapsed;
  });
}

irl1_status irl1_problem_objective(const irl1_problem *problem, const double *x,
                                   size_t n, double *out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = problem->instance.objective(vector_arg(problem, x, n));
  });
}

irl1_status irl1_problem_gradient(const irl1_problem *problem, const double *x,
                                  size_t n, double *grad_out) {
  return guarded([&] {
    require(grad_out != nullptr, "null output");
    const Eigen::VectorXd g = problem->instance.grad_f(vector_arg(problem, x, n));
    std::memcpy(grad_out, g.data(), sizeof(double) * n);
  });
}

irl1_status irl1_problem_residual(const irl1_problem *problem, const double *x,
                                  size_t n, double *out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = irl1::stationarity_residual(problem->instance,
                                       vector_arg(problem, x, n));
  });
}

void irl1_solver_options_default(irl1_solver_options *opts) {
  if (opts == nullptr)
    return;
  const irl1::SolverOptions d;
  opts->tol = d.tol;
  opts->max_iter = d.max_iter;
  opts->monitor = d.monitor ? 1 : 0;
  opts->monitor_slack = d.monitor_slack;
  opts->record_trace = d.record_trace ? 1 : 0;
  opts->gamma = d.gamma;
  opts->c = d.c;
  opts->tau = d.tau;
  opts->memory = d.memory;
  opts->L_min = d.L_min;
  opts->L_max = d.L_max;
}

irl1_status irl1_solve(const irl1_problem *problem, irl1_solver_kind kind,
                       const irl1_solver_options *opts, irl1_report **out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    irl1::SolverOptions o;
    if (opts != nullptr) {
      o.tol = opts->tol;
      o.max_iter = opts->max_iter;
      o.monitor = opts->monitor != 0;
      o.monitor_slack = opts->monitor_slack;
      o.record_trace = opts->record_trace != 0;
      o.gamma = opts->gamma;
      o.c = opts->c;
      o.tau = opts->tau;
      o.memory = opts->memory;
      o.L_min = opts->L_min;
      o.L_max = opts->L_max;
    }
    *out = new irl1_report{irl1::solve(make_kind(kind), problem->instance, o)};
  });
}

void irl1_report_destroy(irl1_report *report) { delete report; }

irl1_status irl1_report_get_summary(const irl1_report *report,
                                    irl1_report_summary *out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    const irl1::SolveReport &r = report->report;
    out->fval = r.fval;
    out->iterations = r.iterations;
    out->residual = r.residual;
    out->termination_value = r.termination_value;
    out->wall_time = r.wall_time;
    out->lipschitz_time = r.lipschitz_time;
    out->lipschitz = r.lipschitz;
    out->converged = r.converged ? 1 : 0;
    out->line_search_retries = r.line_search_retries;
    out->restarts = r.restarts;
    out->monitor_checks = r.monitor_checks;
    out->trace_length = r.trace.size();
  });
}

irl1_status irl1_report_get_x(const irl1_report *report, double *x, size_t n) {
  return guarded([&] {
    require(report != nullptr && x != nullptr, "null argument");
    const Eigen::VectorXd &xf = report->report.x_final;
    require(static_cast<Eigen::Index>(n) == xf.size(),
            "buffer length does not match the solution");
    std::memcpy(x, xf.data(), sizeof(double) * n);
  });
}

irl1_status irl1_report_get_trace(const irl1_report *report, size_t index,
                                  irl1_trace_entry *out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    require(index < report->report.trace.size(), "trace index out of range");
    const irl1::TraceEntry &e = report->report.trace[index];
    out->iteration = e.iteration;
    out->fval = e.fval;
    out->potential = e.potential;
    out->step_norm = e.step_norm;
    out->extrapolation = e.extrapolation;
    out->reference = e.reference;
    out->step_modulus = e.step_modulus;
    out->retries = e.retries;
  });
}

irl1_status irl1_validate_schedules(size_t horizon_e2, size_t horizon_e3,
                                    double gamma, double delta,
                                    irl1_schedule_check *e2,
                                    irl1_schedule_check *e3) {
  return guarded([&] {
    require(e2 != nullptr && e3 != nullptr, "null argument");
    if (horizon_e2 == 0)
      horizon_e2 = 2 * irl1::ThetaScheduleE2::kPeriod;
    if (horizon_e3 == 0)
      horizon_e3 = 60;
    const auto p2 = irl1::theta_prefix_e2(horizon_e2 + 1);
    const auto c2 = irl1::validate_condition_e2(p2, horizon_e2, delta);
    const auto p3 = irl1::theta_prefix_e3(horizon_e3 + 1);
    const auto c3 = irl1::validate_condition_e3(p3, gamma, horizon_e3, delta);
    *e2 = {c2.sup_value, c2.ok ? 1 : 0};
    *e3 = {c3.sup_value, c3.ok ? 1 : 0};
  });
}

void irl1_bench_plan_default(irl1_bench_plan *plan) {
  if (plan == nullptr)
    return;
  const irl1::bench::BenchmarkPlan d;
  plan->sizes = kDeskSizes;
  plan->size_count = std::size(kDeskSizes) / 2;
  plan->seeds = d.seeds;
  plan->base_seed = d.base_seed;
  plan->lambda = d.lambda;
  plan->epsilons = kDefaultEpsilons;
  plan->epsilon_count = std::size(kDefaultEpsilons);
  plan->solvers = kDefaultSolvers;
  plan->solver_count = std::size(kDefaultSolvers);
  plan->tol = d.tol;
  plan->max_iter = d.max_iter;
  plan->threads = d.threads;
  plan->memory_budget_bytes = d.memory_budget_bytes;
}

void irl1_bench_plan_full_scale(irl1_bench_plan *plan) {
  if (plan == nullptr)
    return;
  plan->sizes = kFullScaleSizes;
  plan->size_count = std::size(kFullScaleSizes) / 2;
}

irl1_status irl1_bench_run(const irl1_bench_plan *plan, const char *csv_path) {
  return guarded([&] {
    require(plan != nullptr && csv_path != nullptr, "null argument");
    require(plan->size_count == 0 || plan->sizes != nullptr, "null sizes");
    require(plan->epsilon_count == 0 || plan->epsilons != nullptr,
            "null epsilons");
    require(plan->solver_count == 0 || plan->solvers != nullptr, "null solvers");
    irl1::bench::BenchmarkPlan p;
    p.sizes.clear();
    for (size_t i = 0; i < plan->size_count; ++i)
      p.sizes.emplace_back(plan->sizes[2 * i], plan->sizes[2 * i + 1]);
    p.seeds = plan->seeds;
    p.base_seed = plan->base_seed;
    p.lambda = plan->lambda;
    p.epsilons.assign(plan->epsilons, plan->epsilons + plan->epsilon_count);
    p.solvers.clear();
    for (size_t i = 0; i < plan->solver_count; ++i)
      p.solvers.push_back(make_kind(plan->solvers[i]));
    p.tol = plan->tol;
    p.max_iter = plan->max_iter;
    p.threads = plan->threads;
    p.memory_budget_bytes = plan->memory_budget_bytes;

    const auto rows = irl1::bench::run_plan(p);
    std::ofstream file(csv_path, std::ios::binary);
    if (!file)
      throw irl1::Error(irl1::ErrorKind::Io,
                        std::string("cannot open ") + csv_path + " for writing");
    irl1::bench::write_csv(file, rows);
    if (!file)
      throw irl1::Error(irl1::ErrorKind::Io,
                        std::string("failed writing ") + csv_path);
  });
}

irl1_status irl1_bench_table(const char *csv_path, char **out_text) {
  return guarded([&] {
    require(csv_path != nullptr && out_text != nullptr, "null argument");
    std::ifstream file(csv_path, std::ios::binary);
    if (!file)
      throw irl1::Error(irl1::ErrorKind::Io,
                        std::string("cannot open ") + csv_path);
    const std::string text =
        irl1::bench::render_table(irl1::bench::aggregate(irl1::bench::read_csv(file)));
    char *copy = static_cast<char *>(std::malloc(text.size() + 1));
    if (copy == nullptr)
      throw std::bad_alloc();
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *out_text = copy;
  });
}

void irl1_string_free(char *text) { std::free(text); }

} // extern "C"
