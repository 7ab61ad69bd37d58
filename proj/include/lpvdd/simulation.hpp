#pragma once

#include <optional>
#include <vector>

#include "lpvdd/models.hpp"

namespace lpvdd {

struct SimResult {
    Trajectory y;
    std::optional<Trajectory> x;  // one sample longer than y (terminal state included)
};

/// Recursive simulation of an SS model over u's interval, x(u.t_start) = x0.
[[nodiscard]] SimResult simulate_ss(const LpvSsModel& model, const Eigen::VectorXd& x0,
                                    const Trajectory& u, const Trajectory& p);

/**
 * Forward solution of the IO recursion.
 *
 * y_init holds n_a consecutive outputs; the recursion then runs from
 * y_init.t_end() + 1 up to u.t_end(). The returned trajectory starts at
 * y_init.t_start(). u must cover the input lags and p the coefficient windows.
 */
[[nodiscard]] Trajectory simulate_io(const LpvIoModel& model, const Trajectory& u,
                                     const Trajectory& p, const Trajectory& y_init);

/// n-th impulse response coefficient h_n.
[[nodiscard]] CoeffMatrix impulse_coeff(const LpvSsModel& model, int n);

/// h_0 ... h_{count-1}, sharing intermediate products.
[[nodiscard]] std::vector<CoeffMatrix> impulse_coeffs(const LpvSsModel& model, int count);

/// Lower block-triangular Toeplitz function with block (i, j) = →^j h_{i-j}.
[[nodiscard]] CoeffMatrix toeplitz(const LpvSsModel& model, int t1);

/// vec(y) = (O_T ⋄ p)(t0) x_tilde + (T_T ⋄ p)(t0) vec(u), t0 = u.t_start(), T = u.length().
[[nodiscard]] Eigen::VectorXd response_map(const LpvSsModel& model, const Eigen::VectorXd& x_tilde,
                                           const Trajectory& u, const Trajectory& p);

struct InitialStateEstimate {
    Eigen::VectorXd x;
    double residual = 0.0;   // ||O x - (vec(y) - T vec(u))||_2
    double sigma_min = 0.0;  // of the evaluated observability matrix
    double sigma_max = 0.0;
    int rank = 0;
};

/**
 * Least-squares state at y_ini.t_start() from an initial IO window.
 *
 * Throws RankDeficientObservability when the window is shorter than lag_bound
 * (default n_x) or the evaluated observability matrix loses column rank, and
 * InconsistentTrajectory when the residual exceeds tol * max(1, ||vec(y_ini)||).
 */
[[nodiscard]] InitialStateEstimate estimate_initial_state(const LpvSsModel& model,
                                                          const Trajectory& u_ini,
                                                          const Trajectory& p_ini,
                                                          const Trajectory& y_ini,
                                                          double tol = 1e-8,
                                                          std::optional<int> lag_bound = {});

/// State right after the window: Π A(k) x1 + [r_1 ... r_T] vec(u_ini).
[[nodiscard]] Eigen::VectorXd propagate_state(const LpvSsModel& model, const Eigen::VectorXd& x1,
                                              const Trajectory& u_ini, const Trajectory& p_ini);

}  // namespace lpvdd
