#include "irl1/problem.hpp"

#include "irl1/error.hpp"
#include "irl1/random.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace irl1 {

ProblemInstance::ProblemInstance(Eigen::MatrixXd A, Eigen::VectorXd b,
                                 Penalty penalty, Box box)
    : data_(std::make_shared<const Data>(Data{std::move(A), std::move(b)})),
      penalty_(penalty), box_(std::move(box)) {
  if (data_->A.rows() < 1 || data_->A.cols() < 1)
    throw argument_error("problem requires m >= 1 and n >= 1");
  if (data_->b.size() != data_->A.rows())
    throw argument_error("problem: b has the wrong length");
  if (box_.size() != data_->A.cols())
    throw argument_error("problem: box has the wrong dimension");
  if (!data_->A.allFinite() || !data_->b.allFinite())
    throw argument_error("problem: A and b must be finite");
}

ProblemInstance::ProblemInstance(Eigen::MatrixXd A, Eigen::VectorXd b,
                                 Penalty penalty)
    : data_(std::make_shared<const Data>(Data{std::move(A), std::move(b)})),
      penalty_(penalty), box_(Box::unbounded(data_->A.cols())) {
  if (data_->A.rows() < 1 || data_->A.cols() < 1)
    throw argument_error("problem requires m >= 1 and n >= 1");
  if (data_->b.size() != data_->A.rows())
    throw argument_error("problem: b has the wrong length");
  if (!data_->A.allFinite() || !data_->b.allFinite())
    throw argument_error("problem: A and b must be finite");
}

double ProblemInstance::lipschitz() const {
  if (!lipschitz_)
    throw argument_error("problem has no Lipschitz estimate attached");
  return *lipschitz_;
}

ProblemInstance ProblemInstance::with_penalty(Penalty penalty) const {
  ProblemInstance copy = *this;
  copy.penalty_ = penalty;
  return copy;
}

ProblemInstance ProblemInstance::with_box(Box box) const {
  if (box.size() != cols())
    throw argument_error("problem: box has the wrong dimension");
  ProblemInstance copy = *this;
  copy.box_ = std::move(box);
  return copy;
}

ProblemInstance ProblemInstance::with_lipschitz(double L) const {
  if (!(L > 0.0) || !std::isfinite(L))
    throw argument_error("Lipschitz modulus must be positive and finite");
  ProblemInstance copy = *this;
  copy.lipschitz_ = L;
  return copy;
}

void ProblemInstance::check_dim(
    const Eigen::Ref<const Eigen::VectorXd> &x) const {
  if (x.size() != cols())
    throw argument_error("problem: x has the wrong dimension");
}

double ProblemInstance::smooth_value(
    const Eigen::Ref<const Eigen::VectorXd> &x) const {
  check_dim(x);
  return 0.5 * (data_->A * x - data_->b).squaredNorm();
}

double ProblemInstance::objective(
    const Eigen::Ref<const Eigen::VectorXd> &x) const {
  check_dim(x);
  if (!box_.contains(x))
    return std::numeric_limits<double>::infinity();
  return smooth_value(x) + penalty_.total(x);
}

Eigen::VectorXd
ProblemInstance::grad_f(const Eigen::Ref<const Eigen::VectorXd> &x) const {
  check_dim(x);
  const Eigen::VectorXd r = data_->A * x - data_->b;
  return data_->A.transpose() * r;
}

PowerIterationResult power_iteration_lambda_max(const Eigen::MatrixXd &A,
                                                double rel_tol, int max_iter) {
  const bool use_rows = A.rows() <= A.cols();
  const Eigen::Index dim = use_rows ? A.rows() : A.cols();

  // Fixed pseudo-random start so that no eigenvector is missed by symmetry.
  Rng rng(0x9e3779b97f4a7c15ULL);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v[i] = rng.normal();
  v.normalize();

  PowerIterationResult result;
  Eigen::VectorXd half(use_rows ? A.cols() : A.rows());
  Eigen::VectorXd next(dim);
  double previous = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    // Rayleigh quotient of the normalized iterate: ||A^T v||^2 or ||A v||^2.
    if (use_rows) {
      half.noalias() = A.transpose() * v;
      next.noalias() = A * half;
    } else {
      half.noalias() = A * v;
      next.noalias() = A.transpose() * half;
    }
    const double q = half.squaredNorm();
    result.rayleigh = q;
    result.iterations = it;
    if (it > 1 && std::abs(q - previous) < rel_tol * q) {
      result.converged = true;
      break;
    }
    previous = q;
    const double norm = next.norm();
    if (norm == 0.0)
      break;
    v = next / norm;
  }
  return result;
}

double estimate_lipschitz(const Eigen::MatrixXd &A) {
  if (A.size() == 0 || A.cwiseAbs().maxCoeff() == 0.0)
    throw Error(ErrorKind::Degenerate,
                "estimate_lipschitz: matrix is zero; no positive modulus");
  const PowerIterationResult r = power_iteration_lambda_max(A);
  if (!(r.rayleigh > 0.0))
    throw Error(ErrorKind::Degenerate,
                "estimate_lipschitz: power iteration collapsed to zero");
  return r.rayleigh * (1.0 + 1e-6);
}

Eigen::Index InstanceRecipe::support_size() const {
  if (sparsity)
    return *sparsity;
  return std::max<Eigen::Index>(1, m / 9);
}

ProblemInstance generate_instance(const InstanceRecipe &recipe,
                                  const Penalty &penalty, const Box &box,
                                  Eigen::VectorXd *planted) {
  const Eigen::Index m = recipe.m;
  const Eigen::Index n = recipe.n;
  if (m <= 0 || n <= 0)
    throw argument_error("instance recipe requires m >= 1 and n >= 1");
  const Eigen::Index r = recipe.support_size();
  if (r < 1 || r > n)
    throw argument_error("instance recipe requires 1 <= r <= n");
  if (!(recipe.noise_scale >= 0.0))
    throw argument_error("instance recipe requires noise_scale >= 0");

  Rng rng(recipe.seed);
  Eigen::MatrixXd A(m, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < m; ++i)
      A(i, j) = rng.normal();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = A.col(j).norm();
    A.col(j) /= norm;
  }

  // Partial Fisher-Yates: the first r slots become the support.
  std::vector<Eigen::Index> index(static_cast<std::size_t>(n));
  std::iota(index.begin(), index.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto j = i + static_cast<Eigen::Index>(
                           rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(index[static_cast<std::size_t>(i)],
              index[static_cast<std::size_t>(j)]);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < r; ++i) {
    double value = rng.normal();
    // An exact zero would shrink the support; practically unreachable.
    while (value == 0.0)
      value = rng.normal();
    y[index[static_cast<std::size_t>(i)]] = value;
  }

  Eigen::VectorXd b = A * y;
  for (Eigen::Index i = 0; i < m; ++i)
    b[i] += recipe.noise_scale * rng.normal();

  if (planted)
    *planted = y;
  return ProblemInstance(std::move(A), std::move(b), penalty, box);
}

double stationarity_residual(const ProblemInstance &p,
                             const Eigen::Ref<const Eigen::VectorXd> &x) {
  if (x.size() != p.cols())
    throw argument_error("stationarity_residual: x has the wrong dimension");
  if (!p.box().contains(x))
    throw domain_error("stationarity_residual: x lies outside the box");

  const Eigen::VectorXd g = p.grad_f(x);
  const Penalty &pen = p.penalty();
  const auto &lo = p.box().lower();
  const auto &hi = p.box().upper();

  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double si = pen.weight(std::abs(xi));
    // g_i + s_i * d|x_i| is the interval [left, right].
    double left, right;
    if (xi > 0.0) {
      left = right = g[i] + si;
    } else if (xi < 0.0) {
      left = right = g[i] - si;
    } else {
      left = g[i] - si;
      right = g[i] + si;
    }
    const bool at_lower = xi == lo[i];
    const bool at_upper = xi == hi[i];
    double d;
    if (at_lower && at_upper) {
      d = 0.0; // normal cone is the whole line
    } else if (at_lower) {
      d = std::max(-right, 0.0); // interval extended to -inf
    } else if (at_upper) {
      d = std::max(left, 0.0); // interval extended to +inf
    } else if (left > 0.0) {
      d = left;
    } else if (right < 0.0) {
      d = -right;
    } else {
      d = 0.0;
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

} // namespace irl1
