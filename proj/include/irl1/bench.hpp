#pragma once

#include "irl1/solvers.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace irl1::bench {

inline constexpr std::string_view kCsvHeader =
    "m,n,solver,seed,lambda,epsilon,t0_seconds,solve_seconds,iterations,fval,"
    "residual,converged";

struct BenchmarkRow {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::string solver;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double epsilon = 0.0;
  double t0_seconds = 0.0;
  double solve_seconds = 0.0;
  std::int64_t iterations = 0;
  double fval = 0.0;
  double residual = 0.0;
  bool converged = false;
};

using Size = std::pair<std::int64_t, std::int64_t>;

/// (180 i, 640 i) for i = 1..4.
std::vector<Size> desk_sizes();
/// (720 i, 2560 i) for i = 1..10.
std::vector<Size> full_scale_sizes();

struct BenchmarkPlan {
  std::vector<Size> sizes = desk_sizes();
  int seeds = 20;
  /// Instance seeds are base_seed, base_seed + 1, ...; an instance depends
  /// only on (m, n, seed), so every solver and epsilon sees the same data.
  std::uint64_t base_seed = 1;
  double lambda = 5e-4;
  std::vector<double> epsilons = {0.1, 0.5};
  std::vector<SolverKind> solvers = {std::begin(kAllSolvers),
                                     std::end(kAllSolvers)};
  double tol = 1e-4;
  std::int64_t max_iter = 1'000'000;
  int threads = 1;
  /// Upper bound on m*n*8 bytes for a single instance.
  double memory_budget_bytes = 4.0 * 1024 * 1024 * 1024;
  std::string scale_note = "desk";
};

/// Runs every (size, seed) instance on a worker, estimating L once (t0) and
/// solving from the origin for each epsilon and solver. Rows come back sorted
/// by (m, n, epsilon, seed, solver). A numerical failure yields a row with
/// converged = false and NaN fval/residual.
std::vector<BenchmarkRow> run_plan(const BenchmarkPlan &plan);

struct AggregateRow {
  std::int64_t m = 0;
  std::int64_t n = 0;
  double epsilon = 0.0;
  double lambda = 0.0;
  std::string solver;
  std::size_t count = 0;
  double t0_seconds = 0.0;
  double solve_seconds = 0.0;
  double iterations = 0.0;
  double fval = 0.0;
  double residual = 0.0;
  double converged_fraction = 0.0;
};

/// Means grouped by (m, n, epsilon, solver), in that order. Throws if a group
/// mixes lambda values or rows is empty.
std::vector<AggregateRow> aggregate(const std::vector<BenchmarkRow> &rows);

std::string format_csv_row(const BenchmarkRow &row);
void write_csv(std::ostream &out, const std::vector<BenchmarkRow> &rows);
std::vector<BenchmarkRow> read_csv(std::istream &in);

/// Fixed-width text table of aggregated means.
std::string render_table(const std::vector<AggregateRow> &rows);

} // namespace irl1::bench
