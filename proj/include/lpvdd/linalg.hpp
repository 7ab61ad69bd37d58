#pragma once

#include <Eigen/Dense>

namespace lpvdd::linalg {

/// Singular values below rel_tol * sigma_max count as zero.
inline constexpr double kRankTol = 1e-9;

[[nodiscard]] Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

/// Numeric rank from a descending list of singular values.
[[nodiscard]] int rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol = kRankTol);

[[nodiscard]] int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = kRankTol);

struct MinNormSolution {
    Eigen::VectorXd x;
    int rank = 0;
    double residual = 0.0;              // ||A x - b||_2
    Eigen::VectorXd singular_values;    // descending
    Eigen::MatrixXd null_basis;         // orthonormal columns spanning ker(A)
};

/// Minimum-norm least-squares solution of A x = b through a thin SVD.
[[nodiscard]] MinNormSolution solve_min_norm(const Eigen::MatrixXd& a,
                                             const Eigen::VectorXd& b,
                                             double rel_tol = kRankTol);

/// Orthonormal basis of {n : n^T M = 0}, one basis vector per row.
[[nodiscard]] Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& m,
                                              double rel_tol = kRankTol);

}  // namespace lpvdd::linalg
