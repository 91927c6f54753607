/*
 * C interface to the irl1 solver library.
 *
 * Objects are opaque handles created by irl1_*_create / generate / load and
 * released with the matching *_destroy. Every fallible call returns an
 * irl1_status; on failure irl1_last_error() describes the most recent error
 * on the calling thread. Vectors are passed as (pointer, length) pairs and
 * matrices column-major.
 */
#ifndef IRL1_IRL1_H
#define IRL1_IRL1_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(IRL1_BUILDING_LIBRARY)
#define IRL1_API __declspec(dllexport)
#else
#define IRL1_API __declspec(dllimport)
#endif
#else
#define IRL1_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irl1_status {
  IRL1_OK = 0,
  IRL1_ERR_ARGUMENT = 1,
  IRL1_ERR_DOMAIN = 2,
  IRL1_ERR_DEGENERATE = 3,
  IRL1_ERR_NUMERICAL = 4,
  IRL1_ERR_MONITOR = 5,
  IRL1_ERR_IO = 6,
  IRL1_ERR_MEMORY = 7,
  IRL1_ERR_INTERNAL = 8
} irl1_status;

typedef enum irl1_penalty_family {
  IRL1_PENALTY_LOG = 0,
  IRL1_PENALTY_SCAD = 1,
  IRL1_PENALTY_MCP = 2,
  IRL1_PENALTY_L1 = 3
} irl1_penalty_family;

typedef enum irl1_solver_kind {
  IRL1_SOLVER_IRL1E1 = 0,
  IRL1_SOLVER_IRL1E2 = 1,
  IRL1_SOLVER_IRL1E3 = 2,
  IRL1_SOLVER_GIST = 3,
  IRL1_SOLVER_IRL1LS = 4
} irl1_solver_kind;

/* shape is eps (log), a (SCAD), b (MCP); ignored for l1. */
typedef struct irl1_penalty_spec {
  irl1_penalty_family family;
  double lambda;
  double shape;
} irl1_penalty_spec;

/* sparsity <= 0 selects floor(m/9). */
typedef struct irl1_recipe {
  int64_t m;
  int64_t n;
  int64_t sparsity;
  double noise_scale;
  uint64_t seed;
} irl1_recipe;

typedef struct irl1_solver_options {
  double tol;
  int64_t max_iter;
  int monitor;
  double monitor_slack;
  int record_trace;
  double gamma;
  double c;
  double tau;
  int memory;
  double L_min;
  double L_max;
} irl1_solver_options;

typedef struct irl1_report_summary {
  double fval;
  int64_t iterations;
  double residual;
  double termination_value;
  double wall_time;
  double lipschitz_time;
  double lipschitz;
  int converged;
  int64_t line_search_retries;
  int64_t restarts;
  int64_t monitor_checks;
  size_t trace_length;
} irl1_report_summary;

typedef struct irl1_trace_entry {
  int64_t iteration;
  double fval;
  double potential;
  double step_norm;
  double extrapolation;
  double reference;
  double step_modulus;
  int retries;
} irl1_trace_entry;

typedef struct irl1_schedule_check {
  double sup_value;
  int ok;
} irl1_schedule_check;

typedef struct irl1_problem irl1_problem;
typedef struct irl1_report irl1_report;

IRL1_API const char *irl1_version(void);
IRL1_API const char *irl1_status_string(irl1_status status);
/* Message of the last failed call on this thread; "" if none. */
IRL1_API const char *irl1_last_error(void);

IRL1_API irl1_status irl1_solver_from_name(const char *name,
                                           irl1_solver_kind *out);
IRL1_API const char *irl1_solver_name(irl1_solver_kind kind);

/* ---- penalty ---------------------------------------------------------- */

IRL1_API irl1_status irl1_penalty_value(const irl1_penalty_spec *penalty,
                                        double t, double *out);
IRL1_API irl1_status irl1_penalty_weight(const irl1_penalty_spec *penalty,
                                         double t, double *out);

/* ---- problem ---------------------------------------------------------- */

/* box_lower / box_upper may be NULL for an unbounded box. */
IRL1_API irl1_status irl1_problem_create(int64_t m, int64_t n, const double *A,
                                         const double *b,
                                         const irl1_penalty_spec *penalty,
                                         const double *box_lower,
                                         const double *box_upper,
                                         irl1_problem **out);
/* Uniform box [lo, hi]^n; pass -INFINITY / INFINITY for no bound. */
IRL1_API irl1_status irl1_problem_generate(const irl1_recipe *recipe,
                                           const irl1_penalty_spec *penalty,
                                           double box_lo, double box_hi,
                                           irl1_problem **out);
/* Reads the binary "IRL1" dump, or the CSV form when path ends in ".csv". */
IRL1_API irl1_status irl1_problem_load(const char *path,
                                       const irl1_penalty_spec *penalty,
                                       double box_lo, double box_hi,
                                       irl1_problem **out);
IRL1_API irl1_status irl1_problem_save(const irl1_problem *problem,
                                       const char *path);
IRL1_API void irl1_problem_destroy(irl1_problem *problem);

IRL1_API irl1_status irl1_problem_dims(const irl1_problem *problem,
                                       int64_t *m, int64_t *n);
/* Estimates L = lambda_max(A^T A) (inflated) and caches it on the handle. */
IRL1_API irl1_status irl1_problem_estimate_lipschitz(irl1_problem *problem,
                                                     double *L,
                                                     double *seconds);
IRL1_API irl1_status irl1_problem_objective(const irl1_problem *problem,
                                            const double *x, size_t n,
                                            double *out);
IRL1_API irl1_status irl1_problem_gradient(const irl1_problem *problem,
                                           const double *x, size_t n,
                                           double *grad_out);
IRL1_API irl1_status irl1_problem_residual(const irl1_problem *problem,
                                           const double *x, size_t n,
                                           double *out);

/* ---- solvers ---------------------------------------------------------- */

IRL1_API void irl1_solver_options_default(irl1_solver_options *opts);
/* opts may be NULL for defaults. */
IRL1_API irl1_status irl1_solve(const irl1_problem *problem,
                                irl1_solver_kind kind,
                                const irl1_solver_options *opts,
                                irl1_report **out);
IRL1_API void irl1_report_destroy(irl1_report *report);
IRL1_API irl1_status irl1_report_get_summary(const irl1_report *report,
                                             irl1_report_summary *out);
/* Copies x_final into x (capacity n). */
IRL1_API irl1_status irl1_report_get_x(const irl1_report *report, double *x,
                                       size_t n);
IRL1_API irl1_status irl1_report_get_trace(const irl1_report *report,
                                           size_t index,
                                           irl1_trace_entry *out);

/* ---- schedules -------------------------------------------------------- */

/* horizon_e2 / horizon_e3 of 0 select 200 and 60. */
IRL1_API irl1_status irl1_validate_schedules(size_t horizon_e2,
                                             size_t horizon_e3, double gamma,
                                             double delta,
                                             irl1_schedule_check *e2,
                                             irl1_schedule_check *e3);

/* ---- benchmark -------------------------------------------------------- */

typedef struct irl1_bench_plan {
  const int64_t *sizes; /* pairs m0, n0, m1, n1, ... */
  size_t size_count;    /* number of pairs */
  int seeds;
  uint64_t base_seed;
  double lambda;
  const double *epsilons;
  size_t epsilon_count;
  const irl1_solver_kind *solvers;
  size_t solver_count;
  double tol;
  int64_t max_iter;
  int threads;
  double memory_budget_bytes;
} irl1_bench_plan;

/* Defaults with the built-in desk sizes; the pointers reference static
   storage owned by the library. */
IRL1_API void irl1_bench_plan_default(irl1_bench_plan *plan);
/* Fills the plan's sizes with the full-scale grid. */
IRL1_API void irl1_bench_plan_full_scale(irl1_bench_plan *plan);
/* Runs the plan and writes CSV to path. */
IRL1_API irl1_status irl1_bench_run(const irl1_bench_plan *plan,
                                    const char *csv_path);
/* Aggregates a CSV file into a text table; free with irl1_string_free. */
IRL1_API irl1_status irl1_bench_table(const char *csv_path, char **out_text);
IRL1_API void irl1_string_free(char *text);

#ifdef __cplusplus
}
#endif

#endif /* IRL1_IRL1_H */
