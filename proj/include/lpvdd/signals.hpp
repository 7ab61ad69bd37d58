#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace lpvdd {

/**
 * Finite discrete-time signal w_[t_start, t_end].
 *
 * Samples are stored column-wise, one column per time step. Windows and
 * concatenations keep absolute time indices.
 * A dimension of zero is allowed and stands for the empty scheduling signal of
 * an LTI system.
 */
class Trajectory {
public:
    Trajectory(int t_start, Eigen::MatrixXd samples);

    static Trajectory zeros(int dim, int t_start, int length);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(samples_.rows()); }
    [[nodiscard]] int t_start() const noexcept { return t_start_; }
    [[nodiscard]] int t_end() const noexcept { return t_start_ + length() - 1; }
    [[nodiscard]] int length() const noexcept { return static_cast<int>(samples_.cols()); }
    [[nodiscard]] bool contains(int k) const noexcept { return k >= t_start_ && k <= t_end(); }

    /// Sample w(k). Throws WindowOutOfRange outside the interval.
    [[nodiscard]] Eigen::VectorXd at(int k) const;

    /// Component `c` (0-based) of w(k), unchecked.
    [[nodiscard]] double value(int k, int c) const { return samples_(c, k - t_start_); }

    /// Sub-trajectory over [t1, t2].
    [[nodiscard]] Trajectory window(int t1, int t2) const;

    /// Same samples re-indexed to start at `new_start`.
    [[nodiscard]] Trajectory reindexed(int new_start) const { return {new_start, samples_}; }

    [[nodiscard]] const Eigen::MatrixXd& samples() const noexcept { return samples_; }

    friend bool operator==(const Trajectory& a, const Trajectory& b) {
        return a.t_start_ == b.t_start_ && a.samples_.rows() == b.samples_.rows() &&
               a.samples_.cols() == b.samples_.cols() && a.samples_ == b.samples_;
    }

private:
    int t_start_;
    Eigen::MatrixXd samples_;
};

/// Stacked column [w(t_start); ...; w(t_end)].
[[nodiscard]] Eigen::VectorXd vec(const Trajectory& w);

/// Inverse of vec for a given dimension and start time.
[[nodiscard]] Trajectory unvec(const Eigen::VectorXd& v, int dim, int t_start);

/// w1 ∧ w2; requires w2 to start right after w1 ends.
[[nodiscard]] Trajectory concat(const Trajectory& w1, const Trajectory& w2);

/// Per-sample col(a(k), b(k)); both must cover the same interval.
[[nodiscard]] Trajectory stack(const Trajectory& a, const Trajectory& b);

/// Channels [first, first + count) of w.
[[nodiscard]] Trajectory channels(const Trajectory& w, int first, int count);

struct HankelMatrix {
    int block_rows = 0;
    int cols = 0;
    int block_dim = 0;
    Eigen::MatrixXd data;  // (block_rows * block_dim) x cols
};

/// Block Hankel matrix with t1 block rows and t2 columns; column j holds w over
/// [t_start + j, t_start + j + t1 - 1].
[[nodiscard]] HankelMatrix hankel(const Trajectory& w, int t1, int t2);

/// hankel(w, t1, T - t1 + 1).
[[nodiscard]] HankelMatrix hankel_max(const Trajectory& w, int t1);

/// Per-sample p(k) ⊗ w(k), p-major.
[[nodiscard]] Trajectory kron_part(const Trajectory& w, const Trajectory& p);

/// Per-sample col(w(k), p(k) ⊗ w(k)); dimension (1 + n_p) * n_w.
[[nodiscard]] Trajectory kron_extend(const Trajectory& w, const Trajectory& p);

/// Block-diagonal matrix with k-th diagonal block p_bar(k) ⊗ I_n.
[[nodiscard]] Eigen::MatrixXd sched_block_diag(const Trajectory& p_bar, int n);

struct ExtendedHankelParts {
    Eigen::MatrixXd plain;  // H_L(w)
    Eigen::MatrixXd kron;   // H_L(p ⊗ w)
};

/// Regroups the rows of hankel(kron_extend(w, p), L) into H_L(w) and H_L(p ⊗ w).
[[nodiscard]] ExtendedHankelParts split_extended_hankel(const HankelMatrix& extended, int n_w,
                                                        int n_p);

// CSV trajectory files: header "t,ch1,...,chN", one row per time step.

[[nodiscard]] std::string format_csv(const Trajectory& w);
[[nodiscard]] Trajectory parse_csv(std::string_view text);
[[nodiscard]] Trajectory read_csv(const std::filesystem::path& path);

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] std::string format_double(double v);

}  // namespace lpvdd
