#include "doctest.h"
#include "oracles.hpp"

#include "irl1/error.hpp"
#include "irl1/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

using irl1::Box;
using irl1::Penalty;
using irl1::ProblemInstance;
using irl1::SolverKind;
using irl1::SolverOptions;

namespace {

ProblemInstance desk_instance(std::uint64_t seed, double eps, int m = 60,
                              int n = 256) {
  irl1::InstanceRecipe r;
  r.m = m;
  r.n = n;
  r.seed = seed;
  return irl1::generate_instance(r, Penalty::log(5e-4, eps), Box::unbounded(n));
}

std::string name(SolverKind k) { return std::string(irl1::to_string(k)); }

bool supports(SolverKind k, const ProblemInstance &p) {
  return k != SolverKind::Gist || (p.penalty().family() == irl1::PenaltyFamily::Log &&
                                   p.box().is_unbounded());
}

} // namespace

TEST_CASE("solver names round trip") {
  for (SolverKind k : irl1::kAllSolvers)
    CHECK(irl1::parse_solver_kind(irl1::to_string(k)) == k);
  CHECK_FALSE(irl1::parse_solver_kind("fista").has_value());
}

TEST_CASE("scalar instance converges to the root of the stationarity equation") {
  const double lam = 5e-4, eps = 0.5;
  const double root =
      oracle::bisect([&](double x) { return x - 1 + lam / (x + eps); }, 0.5, 1.5);
  CHECK(root == doctest::Approx(0.999667).epsilon(1e-6));
  const ProblemInstance p(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1),
                          Penalty::log(lam, eps));
  SolverOptions opts;
  opts.tol = 1e-13;
  opts.monitor = true;
  for (SolverKind k : irl1::kAllSolvers) {
    CAPTURE(name(k));
    const auto r = irl1::solve(k, p, opts);
    CHECK(r.converged);
    CHECK(std::abs(r.x_final[0] - root) <= 1e-10);
  }
}

TEST_CASE("zero data terminates at the origin") {
  oracle::Draw draw(51);
  const Penalty pens[] = {Penalty::log(5e-4, 0.1), Penalty::scad(0.1, 3.7),
                          Penalty::mcp(0.1, 2.0), Penalty::l1(0.1)};
  for (const Penalty &pen : pens) {
    for (bool boxed : {false, true}) {
      const Box box = boxed ? Box::uniform(30, -1, 1) : Box::unbounded(30);
      const ProblemInstance p(draw.matrix(10, 30), Eigen::VectorXd::Zero(10), pen, box);
      for (SolverKind k : irl1::kAllSolvers) {
        if (!supports(k, p))
          continue;
        CAPTURE(name(k));
        const auto r = irl1::solve(k, p);
        CHECK(r.iterations <= 1);
        CHECK(r.converged);
        CHECK(r.x_final.isZero(0.0));
        CHECK(r.residual == 0.0);
        CHECK(r.fval == 0.0);
      }
    }
  }
}

TEST_CASE("unit extrapolation reduces every scheme to plain reweighting") {
  const ProblemInstance p = desk_instance(3, 0.5);
  SolverOptions base;
  base.record_trace = true;
  base.max_iter = 400;
  SolverOptions e1 = base, e23 = base;
  e1.custom_schedule = {0.0};
  e23.custom_schedule = {1.0};
  const auto r1 = irl1::solve_irl1e1(p, e1);
  const auto r2 = irl1::solve_irl1e2(p, e23);
  const auto r3 = irl1::solve_irl1e3(p, e23);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.iterations == r3.iterations);
  CHECK(r1.x_final == r2.x_final);
  CHECK(r1.x_final == r3.x_final);
  REQUIRE(r1.trace.size() == r2.trace.size());
  for (std::size_t i = 0; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].fval == r2.trace[i].fval);
    CHECK(r1.trace[i].fval == r3.trace[i].fval);
  }
}

TEST_CASE("monitors hold on random instances for every solver and penalty") {
  SolverOptions opts;
  opts.monitor = true;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (double eps : {0.1, 0.5}) {
      const ProblemInstance p = desk_instance(seed, eps, 40, 160);
      const ProblemInstance variants[] = {
          p,
          p.with_penalty(Penalty::scad(0.02, 3.7)),
          p.with_penalty(Penalty::mcp(0.02, 3.0)),
          p.with_penalty(Penalty::l1(0.01)),
          p.with_box(Box::uniform(160, -0.5, 0.5)),
      };
      for (const ProblemInstance &q : variants) {
        for (SolverKind k : irl1::kAllSolvers) {
          if (!supports(k, q))
            continue;
          CAPTURE(name(k));
          CAPTURE(seed);
          const auto r = irl1::solve(k, q, opts);
          CHECK(r.converged);
          CHECK(r.monitor_checks > 0);
          for (std::size_t i = 1; i < r.trace.size(); ++i)
            if (k != SolverKind::Gist && k != SolverKind::Irl1ls)
              CHECK(r.trace[i].potential <= r.trace[i - 1].potential + 1e-9);
          CHECK(q.box().contains(r.x_final));
        }
      }
    }
  }
}

TEST_CASE("monitor flags an underestimated modulus") {
  const ProblemInstance p = desk_instance(5, 0.5);
  const double L = irl1::estimate_lipschitz(p.A());
  SolverOptions opts;
  opts.monitor = true;
  opts.max_iter = 2000;
  for (SolverKind k : {SolverKind::Irl1e1, SolverKind::Irl1e2, SolverKind::Irl1e3}) {
    CAPTURE(name(k));
    try {
      (void)irl1::solve(k, p.with_lipschitz(L / 50), opts);
      FAIL("expected a monitor violation");
    } catch (const irl1::Error &e) {
      CHECK(e.kind() == irl1::ErrorKind::MonitorViolation);
    }
  }
}

TEST_CASE("termination soundness and vanishing steps") {
  SolverOptions opts;
  opts.record_trace = true;
  for (std::uint64_t seed = 10; seed < 14; ++seed) {
    const ProblemInstance p = desk_instance(seed, seed % 2 ? 0.1 : 0.5);
    for (SolverKind k : irl1::kAllSolvers) {
      CAPTURE(name(k));
      const auto r = irl1::solve(k, p, opts);
      REQUIRE(r.converged);
      const double scale = std::max(1.0, r.x_final.norm());
      CHECK(r.residual <= opts.tol * scale * (1 + 1e-6));
      CHECK(r.termination_value < opts.tol);
      // The last ten steps are small for the extrapolated schemes; the
      // nonmonotone line search only controls its final step.
      const bool line_search = k == SolverKind::Gist || k == SolverKind::Irl1ls;
      const std::size_t window = line_search ? 1 : 10;
      double last = 0;
      for (std::size_t i = r.trace.size() >= window ? r.trace.size() - window : 0;
           i < r.trace.size(); ++i)
        last = std::max(last, r.trace[i].step_norm);
      CHECK(last <= 10 * opts.tol * scale);
      CHECK(r.fval == doctest::Approx(p.objective(r.x_final)).epsilon(1e-14));
      CHECK(r.residual == irl1::stationarity_residual(p, r.x_final));
    }
  }
}

TEST_CASE("nonmonotone acceptance replays on every accepted step") {
  SolverOptions opts;
  opts.record_trace = true;
  for (SolverKind k : {SolverKind::Gist, SolverKind::Irl1ls}) {
    for (std::uint64_t seed = 20; seed < 23; ++seed) {
      const ProblemInstance p = desk_instance(seed, 0.1);
      const auto r = irl1::solve(k, p, opts);
      CAPTURE(name(k));
      REQUIRE(!r.trace.empty());
      std::vector<double> history{0.5 * p.b().squaredNorm()};
      std::int64_t retries = 0;
      for (const auto &e : r.trace) {
        const std::size_t from = history.size() > 5 ? history.size() - 5 : 0;
        const double ref = *std::max_element(history.begin() + from, history.end());
        CHECK(e.reference == ref);
        CHECK(e.fval <= ref - 0.5 * opts.c * e.step_norm * e.step_norm);
        CHECK(e.step_modulus >= opts.L_min);
        history.push_back(e.fval);
        retries += e.retries;
      }
      CHECK(retries == r.line_search_retries);
    }
  }
}

TEST_CASE("monotone line search strictly decreases the objective") {
  const ProblemInstance p = desk_instance(30, 0.5);
  SolverOptions opts;
  opts.record_trace = true;
  opts.memory = 0;
  const ProblemInstance convex = p.with_penalty(Penalty::l1(1e-3));
  const ProblemInstance nearly_smooth = p.with_penalty(Penalty::log(1e-12, 0.5));
  const auto ls = irl1::solve_irl1ls(convex, opts);
  const auto gist = irl1::solve_gist(nearly_smooth, opts);
  for (const auto *r : {&ls, &gist}) {
    double prev = 0.5 * p.b().squaredNorm();
    for (const auto &e : r->trace) {
      if (e.step_norm > 0)
        CHECK(e.fval < prev);
      prev = e.fval;
    }
    CHECK(r->converged);
  }
}

TEST_CASE("cross-solver agreement on a desk instance") {
  const ProblemInstance p = desk_instance(1, 0.5, 180, 640);
  double lo = 1e300, hi = -1e300;
  for (SolverKind k : irl1::kAllSolvers) {
    const auto r = irl1::solve(k, p);
    REQUIRE(r.converged);
    lo = std::min(lo, r.fval);
    hi = std::max(hi, r.fval);
  }
  CHECK((hi - lo) / lo <= 0.005);
}

TEST_CASE("potential helpers") {
  oracle::Draw draw(52);
  const ProblemInstance p = desk_instance(2, 0.5, 10, 20).with_lipschitz(3.0);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd x = draw.vector(20), y = draw.vector(20), w = draw.vector(20);
    CHECK(irl1::h1_value(p, x, x) == p.objective(x));
    CHECK(irl1::h3_value(p, x, x, x) == p.objective(x));
    CHECK(irl1::h1_value(p, x, y) - p.objective(x) ==
          doctest::Approx(1.5 * (x - y).squaredNorm()));
    CHECK(irl1::h3_value(p, x, y, w) - p.objective(x) ==
          doctest::Approx(1.5 * ((w - y).squaredNorm() + (w - x).squaredNorm())));
  }
}

TEST_CASE("argument checking") {
  const ProblemInstance p = desk_instance(4, 0.5, 10, 20);
  auto kind_of = [](auto &&f) {
    try {
      f();
    } catch (const irl1::Error &e) {
      return e.kind();
    }
    return irl1::ErrorKind::Io; // sentinel: nothing thrown
  };
  SolverOptions bad;
  bad.tol = 0;
  CHECK(kind_of([&] { irl1::solve_irl1e1(p, bad); }) == irl1::ErrorKind::Argument);
  bad = {};
  bad.gamma = 1.0;
  CHECK(kind_of([&] { irl1::solve_irl1e3(p, bad); }) == irl1::ErrorKind::Argument);
  bad = {};
  bad.tau = 1.0;
  CHECK(kind_of([&] { irl1::solve_gist(p, bad); }) == irl1::ErrorKind::Argument);

  CHECK(kind_of([&] { irl1::solve_gist(p.with_penalty(Penalty::scad(0.1, 3))); }) ==
        irl1::ErrorKind::Argument);
  CHECK(kind_of([&] { irl1::solve_gist(p.with_box(Box::uniform(20, -1, 1))); }) ==
        irl1::ErrorKind::Argument);
  CHECK(kind_of([&] { irl1::solve_irl1e1(p.with_box(Box::uniform(20, 0.5, 1))); }) ==
        irl1::ErrorKind::Argument);

  SolverOptions custom;
  custom.monitor = true;
  custom.custom_schedule = {1.0}; // violates the frozen-schedule condition
  CHECK(kind_of([&] { irl1::solve_irl1e3(p, custom); }) == irl1::ErrorKind::Argument);
  custom.custom_schedule = {1.5};
  CHECK(kind_of([&] { irl1::solve_irl1e2(p, custom); }) == irl1::ErrorKind::Argument);
  custom.custom_schedule = {1.0};
  CHECK(kind_of([&] { irl1::solve_irl1e1(p, custom); }) == irl1::ErrorKind::Argument);
}

TEST_CASE("iteration cap and reported bookkeeping") {
  const ProblemInstance p = desk_instance(6, 0.5);
  SolverOptions opts;
  opts.max_iter = 3;
  for (SolverKind k : irl1::kAllSolvers) {
    const auto r = irl1::solve(k, p, opts);
    CHECK(r.iterations == 3);
    CHECK_FALSE(r.converged);
    CHECK(r.lipschitz > 0);
    CHECK(r.lipschitz_time >= 0);
  }
  const ProblemInstance with_L = p.with_lipschitz(irl1::estimate_lipschitz(p.A()));
  const auto r = irl1::solve_irl1e1(with_L, opts);
  CHECK(r.lipschitz_time == 0.0);
  CHECK(r.lipschitz == with_L.lipschitz());
}

TEST_CASE("adaptive and fixed restarts happen on long runs") {
  const ProblemInstance p = desk_instance(7, 0.5, 180, 640);
  const auto r = irl1::solve_irl1e1(p);
  CHECK(r.converged);
  CHECK(r.restarts > 0);
}
