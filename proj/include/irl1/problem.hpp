#pragma once

#include "irl1/penalty.hpp"
#include "irl1/prox.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace irl1 {

/// min_x 0.5*||Ax - b||^2 + Phi(|x|) + indicator_box(x).
///
/// Immutable. The data (A, b) is shared between copies, so re-targeting an
/// instance to another penalty or attaching a Lipschitz estimate is cheap.
class ProblemInstance {
public:
  ProblemInstance(Eigen::MatrixXd A, Eigen::VectorXd b, Penalty penalty,
                  Box box);
  /// Unbounded box.
  ProblemInstance(Eigen::MatrixXd A, Eigen::VectorXd b, Penalty penalty);

  Eigen::Index rows() const noexcept { return data_->A.rows(); }
  Eigen::Index cols() const noexcept { return data_->A.cols(); }
  const Eigen::MatrixXd &A() const noexcept { return data_->A; }
  const Eigen::VectorXd &b() const noexcept { return data_->b; }
  const Penalty &penalty() const noexcept { return penalty_; }
  const Box &box() const noexcept { return box_; }

  bool has_lipschitz() const noexcept { return lipschitz_.has_value(); }
  /// Lipschitz modulus of grad f; throws if none was attached.
  double lipschitz() const;

  ProblemInstance with_penalty(Penalty penalty) const;
  ProblemInstance with_box(Box box) const;
  ProblemInstance with_lipschitz(double L) const;

  /// f(x) = 0.5*||Ax - b||^2.
  double smooth_value(const Eigen::Ref<const Eigen::VectorXd> &x) const;
  /// F(x) = f(x) + Phi(|x|), or +inf outside the box.
  double objective(const Eigen::Ref<const Eigen::VectorXd> &x) const;
  /// A^T (Ax - b).
  Eigen::VectorXd grad_f(const Eigen::Ref<const Eigen::VectorXd> &x) const;

private:
  struct Data {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
  };

  void check_dim(const Eigen::Ref<const Eigen::VectorXd> &x) const;

  std::shared_ptr<const Data> data_;
  Penalty penalty_;
  Box box_;
  std::optional<double> lipschitz_;
};

struct PowerIterationResult {
  double rayleigh = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration for lambda_max(A^T A), run on whichever of A^T A and A A^T
/// is smaller (applied implicitly). Stops when the Rayleigh quotient changes by
/// less than `rel_tol` relative, or after `max_iter` iterations.
PowerIterationResult power_iteration_lambda_max(const Eigen::MatrixXd &A,
                                                double rel_tol = 1e-10,
                                                int max_iter = 5000);

/// lambda_max(A^T A) from power iteration, inflated by 1e-6 relative so the
/// result majorizes the true modulus. Throws for a zero matrix.
double estimate_lipschitz(const Eigen::MatrixXd &A);

/// Random compressed-sensing instance: Gaussian A with unit-norm columns,
/// an r-sparse Gaussian planted signal y, b = A y + noise_scale * omega.
struct InstanceRecipe {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  /// Support size; floor(m/9) (at least 1) when unset.
  std::optional<Eigen::Index> sparsity;
  double noise_scale = 0.01;
  std::uint64_t seed = 0;

  Eigen::Index support_size() const;
};

/// Draw order from one Rng seeded with `recipe.seed`: A column-major, the
/// support by partial Fisher-Yates, planted values in support order, then the
/// noise vector. `planted` receives y when non-null.
ProblemInstance generate_instance(const InstanceRecipe &recipe,
                                  const Penalty &penalty, const Box &box,
                                  Eigen::VectorXd *planted = nullptr);

/// dist(0, dF(x)) with dF(x) = grad f(x) + N_box(x) + Phi'_+(|x|) o d|x|.
/// Throws a domain error if x is outside the box.
double stationarity_residual(const ProblemInstance &p,
                             const Eigen::Ref<const Eigen::VectorXd> &x);

/// Binary dump: "IRL1", u32 m, u32 n, m*n f64 (A column-major), m f64 (b);
/// everything little-endian.
void save_instance_binary(const ProblemInstance &p, const std::string &path);
/// CSV dump: first line "m,n" with the two sizes, then m rows holding
/// A(i, 0..n-1) followed by b(i).
void save_instance_csv(const ProblemInstance &p, const std::string &path);

struct LeastSquaresData {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

LeastSquaresData load_instance_binary(const std::string &path);
LeastSquaresData load_instance_csv(const std::string &path);

} // namespace irl1
