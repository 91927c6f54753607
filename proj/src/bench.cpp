#include "irl1/bench.hpp"

#include "irl1/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace irl1::bench {

std::vector<Size> desk_sizes() {
  std::vector<Size> out;
  for (std::int64_t i = 1; i <= 4; ++i)
    out.emplace_back(180 * i, 640 * i);
  return out;
}

std::vector<Size> full_scale_sizes() {
  std::vector<Size> out;
  for (std::int64_t i = 1; i <= 10; ++i)
    out.emplace_back(720 * i, 2560 * i);
  return out;
}

namespace {

void validate_plan(const BenchmarkPlan &plan) {
  if (plan.sizes.empty())
    throw argument_error("benchmark plan has no sizes");
  if (plan.seeds < 1)
    throw argument_error("benchmark plan needs at least one seed");
  if (plan.epsilons.empty() || plan.solvers.empty())
    throw argument_error("benchmark plan needs epsilons and solvers");
  if (plan.threads < 1)
    throw argument_error("benchmark plan needs at least one thread");
  for (const auto &[m, n] : plan.sizes) {
    if (m < 1 || n < 1)
      throw argument_error("benchmark sizes must be positive");
    const double bytes = 8.0 * static_cast<double>(m) * static_cast<double>(n);
    if (bytes > plan.memory_budget_bytes)
      throw Error(ErrorKind::Memory,
                  "instance " + std::to_string(m) + "x" + std::to_string(n) +
                      " needs " + std::to_string(bytes / (1 << 20)) +
                      " MiB, above the memory budget");
  }
}

struct Unit {
  Size size;
  std::uint64_t seed;
};

std::vector<BenchmarkRow> run_unit(const BenchmarkPlan &plan, const Unit &unit) {
  InstanceRecipe recipe;
  recipe.m = unit.size.first;
  recipe.n = unit.size.second;
  recipe.seed = unit.seed;
  const Penalty base_penalty = Penalty::log(plan.lambda, plan.epsilons.front());
  const ProblemInstance generated =
      generate_instance(recipe, base_penalty, Box::unbounded(recipe.n));

  const auto start = std::chrono::steady_clock::now();
  const double L = estimate_lipschitz(generated.A());
  const double t0 =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const ProblemInstance with_L = generated.with_lipschitz(L);

  SolverOptions opts;
  opts.tol = plan.tol;
  opts.max_iter = plan.max_iter;

  std::vector<BenchmarkRow> rows;
  for (double eps : plan.epsilons) {
    const ProblemInstance problem =
        with_L.with_penalty(Penalty::log(plan.lambda, eps));
    for (SolverKind kind : plan.solvers) {
      BenchmarkRow row;
      row.m = recipe.m;
      row.n = recipe.n;
      row.solver = std::string(to_string(kind));
      row.seed = unit.seed;
      row.lambda = plan.lambda;
      row.epsilon = eps;
      row.t0_seconds = t0;
      try {
        const SolveReport report = solve(kind, problem, opts);
        row.solve_seconds = report.wall_time;
        row.iterations = report.iterations;
        row.fval = report.fval;
        row.residual = report.residual;
        row.converged = report.converged;
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::Numerical)
          throw;
        row.fval = std::numeric_limits<double>::quiet_NaN();
        row.residual = std::numeric_limits<double>::quiet_NaN();
        row.converged = false;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

auto sort_key(const BenchmarkRow &r) {
  return std::tie(r.m, r.n, r.epsilon, r.seed, r.solver);
}

} // namespace

std::vector<BenchmarkRow> run_plan(const BenchmarkPlan &plan) {
  validate_plan(plan);
  std::vector<Unit> units;
  for (const Size &size : plan.sizes)
    for (int s = 0; s < plan.seeds; ++s)
      units.push_back({size, plan.base_seed + static_cast<std::uint64_t>(s)});

  std::vector<BenchmarkRow> rows;
  std::mutex mutex;
  std::exception_ptr failure;
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= units.size())
        return;
      try {
        std::vector<BenchmarkRow> unit_rows = run_unit(plan, units[i]);
        std::lock_guard lock(mutex);
        rows.insert(rows.end(), std::make_move_iterator(unit_rows.begin()),
                    std::make_move_iterator(unit_rows.end()));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure)
          failure = std::current_exception();
        next.store(units.size());
        return;
      }
    }
  };

  const int threads =
      std::min<int>(plan.threads, static_cast<int>(units.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(),
            [](const BenchmarkRow &a, const BenchmarkRow &b) {
              return sort_key(a) < sort_key(b);
            });
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<BenchmarkRow> &rows) {
  if (rows.empty())
    throw argument_error("aggregate: no rows");
  using Key = std::tuple<std::int64_t, std::int64_t, double, std::string>;
  std::map<Key, AggregateRow> groups;
  for (const BenchmarkRow &r : rows) {
    const Key key{r.m, r.n, r.epsilon, r.solver};
    auto [it, inserted] = groups.try_emplace(key);
    AggregateRow &g = it->second;
    if (inserted) {
      g.m = r.m;
      g.n = r.n;
      g.epsilon = r.epsilon;
      g.lambda = r.lambda;
      g.solver = r.solver;
    } else if (g.lambda != r.lambda) {
      throw argument_error("aggregate: group (" + std::to_string(r.m) + ", " +
                           std::to_string(r.n) + ", " + r.solver +
                           ") mixes lambda values");
    }
    ++g.count;
    g.t0_seconds += r.t0_seconds;
    g.solve_seconds += r.solve_seconds;
    g.iterations += static_cast<double>(r.iterations);
    g.fval += r.fval;
    g.residual += r.residual;
    g.converged_fraction += r.converged ? 1.0 : 0.0;
  }
  std::vector<AggregateRow> out;
  out.reserve(groups.size());
  for (auto &[key, g] : groups) {
    const double count = static_cast<double>(g.count);
    g.t0_seconds /= count;
    g.solve_seconds /= count;
    g.iterations /= count;
    g.fval /= count;
    g.residual /= count;
    g.converged_fraction /= count;
    out.push_back(std::move(g));
  }
  return out;
}

std::string format_csv_row(const BenchmarkRow &r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%" PRId64 ",%" PRId64 ",%s,%" PRIu64
                ",%.17g,%.17g,%.17g,%.17g,%" PRId64 ",%.17g,%.17g,%d",
                r.m, r.n, r.solver.c_str(), r.seed, r.lambda, r.epsilon,
                r.t0_seconds, r.solve_seconds, r.iterations, r.fval,
                r.residual, r.converged ? 1 : 0);
  return buf;
}

void write_csv(std::ostream &out, const std::vector<BenchmarkRow> &rows) {
  out << kCsvHeader << '\n';
  for (const BenchmarkRow &r : rows)
    out << format_csv_row(r) << '\n';
}

namespace {

Error csv_error(std::size_t line, const std::string &what) {
  return Error(ErrorKind::Io,
               "benchmark CSV line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_field(const std::string &cell, std::size_t line, const char *name) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_same_v<T, double>)
      value = std::stod(cell, &used);
    else if constexpr (std::is_same_v<T, std::uint64_t>)
      value = std::stoull(cell, &used);
    else
      value = std::stoll(cell, &used);
    if (used != cell.size())
      throw std::invalid_argument(cell);
    return value;
  } catch (const std::exception &) {
    throw csv_error(line, std::string("bad ") + name + " '" + cell + "'");
  }
}

} // namespace

std::vector<BenchmarkRow> read_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line))
    throw csv_error(1, "missing header");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != kCsvHeader)
    throw csv_error(1, "unexpected header");

  std::vector<BenchmarkRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::vector<std::string> cells;
    std::istringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ','))
      cells.push_back(cell);
    if (cells.size() != 12)
      throw csv_error(number, "expected 12 fields");
    BenchmarkRow r;
    r.m = parse_field<std::int64_t>(cells[0], number, "m");
    r.n = parse_field<std::int64_t>(cells[1], number, "n");
    r.solver = cells[2];
    r.seed = parse_field<std::uint64_t>(cells[3], number, "seed");
    r.lambda = parse_field<double>(cells[4], number, "lambda");
    r.epsilon = parse_field<double>(cells[5], number, "epsilon");
    r.t0_seconds = parse_field<double>(cells[6], number, "t0_seconds");
    r.solve_seconds = parse_field<double>(cells[7], number, "solve_seconds");
    r.iterations = parse_field<std::int64_t>(cells[8], number, "iterations");
    r.fval = parse_field<double>(cells[9], number, "fval");
    r.residual = parse_field<double>(cells[10], number, "residual");
    if (cells[11] == "1" || cells[11] == "true")
      r.converged = true;
    else if (cells[11] == "0" || cells[11] == "false")
      r.converged = false;
    else
      throw csv_error(number, "bad converged flag '" + cells[11] + "'");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_table(const std::vector<AggregateRow> &rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%7s %7s %8s %-7s %5s %9s %10s %10s %12s %10s %6s\n",
                "m", "n", "epsilon", "solver", "count", "t0[s]", "time[s]",
                "iters", "fval", "residual", "conv");
  out += buf;
  for (const AggregateRow &r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%7" PRId64 " %7" PRId64 " %8.3g %-7s %5zu %9.3f %10.3f "
                  "%10.1f %12.4e %10.2e %6.2f\n",
                  r.m, r.n, r.epsilon, r.solver.c_str(), r.count, r.t0_seconds,
                  r.solve_seconds, r.iterations, r.fval, r.residual,
                  r.converged_fraction);
    out += buf;
  }
  return out;
}

} // namespace irl1::bench
