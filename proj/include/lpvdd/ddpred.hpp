#pragma once

#include <string>
#include <vector>

#include "lpvdd/models.hpp"

namespace lpvdd {

/// One measured sequence (u, p, y) over a shared interval.
struct DataRecord {
    Trajectory u;
    Trajectory p;
    Trajectory y;
    std::string provenance;

    /// Throws IntervalMismatch if the three signals do not share their interval.
    DataRecord(Trajectory u_, Trajectory p_, Trajectory y_, std::string provenance_ = {});

    [[nodiscard]] int length() const { return u.length(); }
    [[nodiscard]] int n_u() const { return u.dim(); }
    [[nodiscard]] int n_p() const { return p.dim(); }
    [[nodiscard]] int n_y() const { return y.dim(); }
};

/// Row layout of the stacked predictor matrix; each entry is a [begin, begin+count) range.
struct RowPartition {
    struct Range {
        int begin = 0;
        int count = 0;
    };
    Range u;             // H_L(u)
    Range u_constraint;  // H_L(p ⊗ u) - P̄ H_L(u)
    Range y;             // H_L(y)
    Range y_constraint;  // H_L(p ⊗ y) - P̄ H_L(y)
};

/**
 * Stacked matrix
 *   [ H_L(u); H_L(p⊗u) - P̄_{n_u} H_L(u); H_L(y); H_L(p⊗y) - P̄_{n_y} H_L(y) ]
 * with Hankels over the measured data and P̄ built from the query scheduling.
 */
struct PredictorSystem {
    int L = 0;
    Eigen::MatrixXd matrix;
    RowPartition rows;
    int col_count = 0;
};

[[nodiscard]] PredictorSystem build_predictor(const DataRecord& data, const Trajectory& p_query,
                                              int L);

/// Initial window (u_ini, p_ini, y_ini) followed by the future (u_r, p_r).
struct PredictionQuery {
    Trajectory u_ini;
    Trajectory p_ini;
    Trajectory y_ini;
    Trajectory u_r;
    Trajectory p_r;
};

struct PredictOptions {
    double tol = 1e-7;         // absolute residual bound
    double margin_tol = 1e-7;  // uniqueness bound
    /// Window length per solve; 0 picks the longest usable window automatically.
    int window = 0;
};

enum class Verdict { Ok, Ambiguous, Infeasible };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

struct PredictionResult {
    Trajectory y_r{1, Eigen::MatrixXd(0, 1)};
    std::vector<Eigen::VectorXd> g;  // one coefficient vector per solved window
    double residual = 0.0;           // worst window residual
    double output_uniqueness_margin = 0.0;
    double null_leakage = 0.0;  // worst relative ||Y_r N||, N spanning ker(known rows)
    Verdict verdict = Verdict::Ok;
    int window = 0;  // window length L actually used
    int pe_rank = 0;
    int pe_required = 0;
    std::vector<std::string> warnings;
};

/**
 * Output continuation y_r of the query, computed from the data alone.
 *
 * Each window of length L = T_ini + s solves the known rows of the stacked
 * predictor system (inputs, the constraint rows and the first T_ini outputs)
 * for g in the minimum-norm least-squares sense and reads the s unknown
 * outputs off H_L(y) g. When L < T_ini + T_r the windows are chained, each one
 * taking the last T_ini samples (predicted outputs included) as its initial
 * window. The verdict is Ambiguous when the known rows do not pin the output
 * rows (margin or leakage test) and Infeasible when the residual exceeds tol.
 */
[[nodiscard]] PredictionResult predict(const DataRecord& data, const PredictionQuery& query,
                                       const PredictOptions& options = {});

/// Longest window in [min_window, max_window] whose extended data Hankel has
/// linearly dependent columns; max_window when none qualifies.
[[nodiscard]] int select_window(const DataRecord& data, int min_window, int max_window);

struct SpanMembership {
    bool member = false;
    double residual = 0.0;
    Eigen::VectorXd g;
};

/// Whether col(w_test, p_test ⊗ w_test) is a combination of the data Hankel
/// columns that also satisfies the Kronecker constraints at p_test.
[[nodiscard]] SpanMembership span_membership(const DataRecord& data, const Trajectory& w_test,
                                             const Trajectory& p_test, double tol = 1e-7);

struct LeftNullspace {
    Eigen::MatrixXd basis;  // one annihilator per row, in extended window coordinates
    int dimension = 0;
    int hankel_rank = 0;
    int rows = 0;  // (1 + n_p)(n_u + n_y) L
};

/// Left null space of H_L(col(w, p ⊗ w)) with w = col(u, y).
[[nodiscard]] LeftNullspace left_nullspace(const DataRecord& data, int L, double tol = 1e-9);

/// Reads an extended-coordinate row as the shifted-affine kernel Σ r_i ξ^i with
/// r_i depending on p(k + i).
[[nodiscard]] KernelRep annihilator_kernel(const Eigen::RowVectorXd& row, int n_w, int n_p, int L);

/// Max |N H_L(col(w, p ⊗ w))| over all entries.
[[nodiscard]] double annihilation_residual(const Eigen::MatrixXd& basis, const Trajectory& w,
                                           const Trajectory& p, int L);

/// Rows ξ^s R for s = 0 ... L-1-order written in extended window coordinates.
/// Requires every r_i to be affine in p(k + i). Throws InvalidModel otherwise.
[[nodiscard]] Eigen::MatrixXd kernel_rows_extended(const KernelRep& kernel, int L);

}  // namespace lpvdd
