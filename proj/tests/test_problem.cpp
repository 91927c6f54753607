#include "doctest.h"
#include "oracles.hpp"

#include "irl1/error.hpp"
#include "irl1/problem.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

using irl1::Box;
using irl1::Penalty;
using irl1::ProblemInstance;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ProblemInstance random_problem(oracle::Draw &draw, int m, int n,
                               const Penalty &pen = Penalty::log(5e-4, 0.5)) {
  return ProblemInstance(draw.matrix(m, n), draw.vector(m), pen);
}

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("objective examples") {
  oracle::Draw draw(31);
  const ProblemInstance p = random_problem(draw, 5, 7);
  CHECK(p.objective(Eigen::VectorXd::Zero(7)) ==
        doctest::Approx(0.5 * p.b().squaredNorm()).epsilon(1e-15));

  const ProblemInstance one(Eigen::MatrixXd::Identity(1, 1),
                            Eigen::VectorXd::Ones(1), Penalty::log(5e-4, 0.5));
  CHECK(one.objective(Eigen::VectorXd::Ones(1)) ==
        doctest::Approx(5e-4 * std::log(3.0)).epsilon(1e-14));
  CHECK(one.objective(Eigen::VectorXd::Ones(1)) == doctest::Approx(5.493e-4).epsilon(1e-3));

  const ProblemInstance boxed = one.with_box(Box::uniform(1, -0.5, 0.5));
  CHECK(boxed.objective(Eigen::VectorXd::Ones(1)) == kInf);
  CHECK_THROWS_AS(one.objective(Eigen::VectorXd::Ones(2)), irl1::Error);
}

TEST_CASE("gradient examples") {
  oracle::Draw draw(32);
  const ProblemInstance p = random_problem(draw, 6, 4);
  CHECK(p.grad_f(Eigen::VectorXd::Zero(4)).isApprox(-(p.A().transpose() * p.b())));
  const ProblemInstance id(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3),
                           Penalty::l1(1.0));
  const Eigen::VectorXd x = Eigen::Vector3d(0.5, -2, 3);
  CHECK(id.grad_f(x) == x);
}

TEST_CASE("instance construction errors") {
  CHECK_THROWS_AS(ProblemInstance(Eigen::MatrixXd::Ones(2, 2), Eigen::VectorXd::Ones(3),
                                  Penalty::l1(1.0)),
                  irl1::Error);
  CHECK_THROWS_AS(ProblemInstance(Eigen::MatrixXd::Ones(2, 2), Eigen::VectorXd::Ones(2),
                                  Penalty::l1(1.0), Box::unbounded(3)),
                  irl1::Error);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(ProblemInstance(bad, Eigen::VectorXd::Ones(2), Penalty::l1(1.0)),
                  irl1::Error);
  const ProblemInstance p(Eigen::MatrixXd::Ones(2, 2), Eigen::VectorXd::Ones(2),
                          Penalty::l1(1.0));
  CHECK_FALSE(p.has_lipschitz());
  CHECK_THROWS_AS((void)p.lipschitz(), irl1::Error);
  CHECK(p.with_lipschitz(4.0).lipschitz() == 4.0);
  CHECK_THROWS_AS((void)p.with_lipschitz(-1.0), irl1::Error);
}

TEST_CASE("lipschitz estimate examples") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
  D(0, 0) = 3;
  D(1, 1) = 1;
  const auto r = irl1::power_iteration_lambda_max(D);
  CHECK(r.converged);
  CHECK(r.rayleigh == doctest::Approx(9.0).epsilon(1e-5));
  CHECK(irl1::estimate_lipschitz(D) >= 9.0);
  CHECK(irl1::estimate_lipschitz(Eigen::MatrixXd::Identity(2, 2)) ==
        doctest::Approx(1.0).epsilon(2e-6));

  oracle::Draw draw(33);
  const Eigen::MatrixXd A = draw.matrix(20, 50);
  const double truth = oracle::lambda_max_ata(A);
  CHECK(irl1::power_iteration_lambda_max(A).rayleigh ==
        doctest::Approx(truth).epsilon(1e-6));
  const double L = irl1::estimate_lipschitz(A);
  CHECK(L >= truth);
  CHECK(L <= truth * (1 + 2e-6));

  try {
    (void)irl1::estimate_lipschitz(Eigen::MatrixXd::Zero(3, 4));
    FAIL("expected a degenerate-input error");
  } catch (const irl1::Error &e) {
    CHECK(e.kind() == irl1::ErrorKind::Degenerate);
  }
}

TEST_CASE("property: lipschitz estimate majorizes the top eigenvalue") {
  oracle::Draw draw(34);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = draw.integer(1, 40), n = draw.integer(1, 40);
    const Eigen::MatrixXd A = draw.matrix(m, n);
    const double truth = oracle::lambda_max_ata(A);
    const double L = irl1::estimate_lipschitz(A);
    CHECK(L >= truth * (1 - 1e-12));
    CHECK(L <= truth * (1 + 1e-5));
  }
}

TEST_CASE("generated instances") {
  irl1::InstanceRecipe recipe;
  recipe.m = 90;
  recipe.n = 320;
  recipe.seed = 7;
  CHECK(recipe.support_size() == 10);
  Eigen::VectorXd planted;
  const ProblemInstance p =
      irl1::generate_instance(recipe, Penalty::log(5e-4, 0.5), Box::unbounded(320), &planted);
  CHECK(p.rows() == 90);
  CHECK(p.cols() == 320);
  for (Eigen::Index j = 0; j < p.cols(); ++j)
    CHECK(std::abs(p.A().col(j).norm() - 1.0) <= 1e-12);
  CHECK((planted.array() != 0.0).count() == 10);
  // b - A y is the noise term, of size about 0.01 * sqrt(m).
  const double noise = (p.b() - p.A() * planted).norm();
  CHECK(noise > 0.0);
  CHECK(noise < 0.01 * std::sqrt(90.0) * 3);

  const ProblemInstance again =
      irl1::generate_instance(recipe, Penalty::log(5e-4, 0.5), Box::unbounded(320));
  CHECK(again.A() == p.A());
  CHECK(again.b() == p.b());

  recipe.seed = 8;
  const ProblemInstance other =
      irl1::generate_instance(recipe, Penalty::log(5e-4, 0.5), Box::unbounded(320));
  CHECK((other.b() - p.b()).norm() > 0.0);

  irl1::InstanceRecipe tiny;
  tiny.m = 3;
  tiny.n = 4;
  CHECK(tiny.support_size() == 1);
  tiny.sparsity = 5;
  CHECK_THROWS_AS(irl1::generate_instance(tiny, Penalty::l1(1), Box::unbounded(4)),
                  irl1::Error);
}

TEST_CASE("property: gradient agrees with central differences") {
  oracle::Draw draw(35);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = draw.integer(1, 15), n = draw.integer(1, 15);
    const ProblemInstance p = random_problem(draw, m, n);
    const Eigen::VectorXd x = draw.vector(n);
    const Eigen::VectorXd g = p.grad_f(x);
    Eigen::VectorXd fd(n);
    for (int i = 0; i < n; ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      fd[i] = (p.smooth_value(xp) - p.smooth_value(xm)) / (2 * h);
    }
    CHECK((fd - g).norm() <= 1e-6 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("property: descent lemma with the estimated modulus") {
  oracle::Draw draw(36);
  for (auto [m, n] : {std::pair{5, 12}, std::pair{20, 60}, std::pair{60, 256}}) {
    const ProblemInstance p = random_problem(draw, m, n);
    const double L = irl1::estimate_lipschitz(p.A());
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
      const Eigen::VectorXd x = draw.vector(n), y = draw.vector(n);
      const double rhs = p.smooth_value(x) + p.grad_f(x).dot(y - x) +
                         0.5 * L * (y - x).squaredNorm();
      failures += p.smooth_value(y) > rhs + 1e-10 * std::max(1.0, std::abs(rhs));
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("stationarity residual examples") {
  const ProblemInstance zero(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1),
                             Penalty::log(0.3, 0.7));
  CHECK(irl1::stationarity_residual(zero, Eigen::VectorXd::Zero(1)) == 0.0);

  oracle::Draw draw(37);
  const ProblemInstance p = random_problem(draw, 10, 25, Penalty::log(0.5, 0.5));
  const Eigen::VectorXd Atb = p.A().transpose() * p.b();
  const double thr = 0.5 / 0.5;
  double sum = 0;
  for (Eigen::Index i = 0; i < Atb.size(); ++i)
    sum += std::pow(std::max(std::abs(Atb[i]) - thr, 0.0), 2);
  CHECK(irl1::stationarity_residual(p, Eigen::VectorXd::Zero(25)) ==
        doctest::Approx(std::sqrt(sum)).epsilon(1e-13));

  const ProblemInstance boxed = p.with_box(Box::uniform(25, -1, 1));
  CHECK_THROWS_AS(irl1::stationarity_residual(boxed, Eigen::VectorXd::Constant(25, 2.0)),
                  irl1::Error);
}

TEST_CASE("property: residual matches brute force on n <= 2") {
  oracle::Draw draw(38);
  const Penalty pens[] = {Penalty::log(0.4, 0.3), Penalty::scad(0.5, 3.7),
                          Penalty::mcp(0.6, 1.5), Penalty::l1(0.7)};
  for (int trial = 0; trial < 400; ++trial) {
    const int n = draw.integer(1, 2), m = draw.integer(1, 3);
    const Penalty &pen = pens[trial % 4];
    Eigen::VectorXd lo(n), hi(n), x(n);
    for (int i = 0; i < n; ++i) {
      const int kind = draw.integer(0, 3);
      lo[i] = kind == 0 ? -kInf : draw.uniform(-2, 0);
      hi[i] = kind == 1 ? kInf : draw.uniform(0, 2);
      if (kind == 3 && draw.coin(0.3))
        lo[i] = hi[i] = 0.0;
      // x at zero, at a bound, or strictly inside.
      const int where = draw.integer(0, 3);
      if (where == 0 || lo[i] == hi[i])
        x[i] = 0.0;
      else if (where == 1 && std::isfinite(lo[i]))
        x[i] = lo[i];
      else if (where == 2 && std::isfinite(hi[i]))
        x[i] = hi[i];
      else
        x[i] = draw.uniform(std::max(lo[i], -2.0), std::min(hi[i], 2.0));
    }
    const ProblemInstance p(draw.matrix(m, n), draw.vector(m), pen, Box(lo, hi));
    const Eigen::VectorXd g = p.grad_f(x);
    std::vector<double> gv(g.data(), g.data() + n);
    std::vector<oracle::Interval> iv;
    for (int i = 0; i < n; ++i)
      iv.push_back(oracle::subgradient_interval(x[i], pen.weight(std::abs(x[i])),
                                                lo[i], hi[i]));
    const double expected = oracle::brute_force_residual(gv, iv);
    CHECK(std::abs(irl1::stationarity_residual(p, x) - expected) <= 1e-9);
  }
}

TEST_CASE("binary and csv instance round trips") {
  irl1::InstanceRecipe recipe;
  recipe.m = 9;
  recipe.n = 20;
  recipe.seed = 3;
  const ProblemInstance p =
      irl1::generate_instance(recipe, Penalty::log(5e-4, 0.5), Box::unbounded(20));

  const std::string bin = temp_path("irl1_test_instance.bin");
  irl1::save_instance_binary(p, bin);
  const irl1::LeastSquaresData d1 = irl1::load_instance_binary(bin);
  CHECK(d1.A == p.A());
  CHECK(d1.b == p.b());

  const std::string csv = temp_path("irl1_test_instance.csv");
  irl1::save_instance_csv(p, csv);
  const irl1::LeastSquaresData d2 = irl1::load_instance_csv(csv);
  CHECK(d2.A == p.A());
  CHECK(d2.b == p.b());

  {
    std::ofstream extra(bin, std::ios::binary | std::ios::app);
    extra << 'x';
  }
  CHECK_THROWS_AS(irl1::load_instance_binary(bin), irl1::Error);
  {
    std::ofstream junk(csv);
    junk << "2,2\n1,2,3\n";
  }
  CHECK_THROWS_AS(irl1::load_instance_csv(csv), irl1::Error);
  CHECK_THROWS_AS(irl1::load_instance_binary(temp_path("irl1_missing_file.bin")),
                  irl1::Error);
  std::remove(bin.c_str());
  std::remove(csv.c_str());
}
