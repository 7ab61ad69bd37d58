#include "lpvdd/linalg.hpp"

namespace lpvdd::linalg {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return Eigen::VectorXd(0);
    return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
}

int rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol) {
    if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
    const double cut = rel_tol * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) ++r;
    }
    return r;
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
    return rank_from_singular_values(singular_values(m), rel_tol);
}

MinNormSolution solve_min_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                               double rel_tol) {
    MinNormSolution out;
    const Eigen::Index n = a.cols();
    out.x = Eigen::VectorXd::Zero(n);
    if (a.rows() == 0 || n == 0) {
        out.residual = b.norm();
        out.singular_values = Eigen::VectorXd(0);
        out.null_basis = Eigen::MatrixXd::Identity(n, n);
        return out;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    out.rank = rank_from_singular_values(out.singular_values, rel_tol);
    const int r = out.rank;
    if (r > 0) {
        const Eigen::VectorXd coeffs =
            (svd.matrixU().leftCols(r).transpose() * b).cwiseQuotient(out.singular_values.head(r));
        out.x = svd.matrixV().leftCols(r) * coeffs;
    }
    out.residual = (a * out.x - b).norm();
    out.null_basis = svd.matrixV().rightCols(n - r);
    return out;
}

Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& m, double rel_tol) {
    const Eigen::Index rows = m.rows();
    if (rows == 0) return Eigen::MatrixXd(0, 0);
    if (m.cols() == 0) return Eigen::MatrixXd::Identity(rows, rows);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
    return svd.matrixU().rightCols(rows - r).transpose();
}

}  // namespace lpvdd::linalg
