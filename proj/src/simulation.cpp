#include "lpvdd/simulation.hpp"

#include "lpvdd/analysis.hpp"
#include "lpvdd/errors.hpp"
#include "lpvdd/linalg.hpp"

namespace lpvdd {

namespace {

void require_dims(const LpvSsModel& model, const Trajectory& u, const Trajectory& p) {
    if (u.dim() != model.n_u) {
        throw Error(Errc::DimensionMismatch, "input dimension " + std::to_string(u.dim()) +
                                                 " != n_u " + std::to_string(model.n_u));
    }
    if (p.dim() != model.n_p) {
        throw Error(Errc::DimensionMismatch, "scheduling dimension " + std::to_string(p.dim()) +
                                                 " != n_p " + std::to_string(model.n_p));
    }
}

void require_state(const LpvSsModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.n_x) {
        throw Error(Errc::DimensionMismatch, "state has length " + std::to_string(x.size()) +
                                                 ", expected " + std::to_string(model.n_x));
    }
}

}  // namespace

SimResult simulate_ss(const LpvSsModel& model, const Eigen::VectorXd& x0, const Trajectory& u,
                      const Trajectory& p) {
    require_dims(model, u, p);
    require_state(model, x0);
    const int T = u.length();
    Eigen::MatrixXd xs(model.n_x, T + 1);
    Eigen::MatrixXd ys(model.n_y, T);
    xs.col(0) = x0;
    for (int i = 0; i < T; ++i) {
        const int k = u.t_start() + i;
        const Eigen::VectorXd uk = u.at(k);
        ys.col(i) = mat_eval(model.C, p, k) * xs.col(i) + mat_eval(model.D, p, k) * uk;
        xs.col(i + 1) = mat_eval(model.A, p, k) * xs.col(i) + mat_eval(model.B, p, k) * uk;
    }
    return {Trajectory(u.t_start(), std::move(ys)), Trajectory(u.t_start(), std::move(xs))};
}

Trajectory simulate_io(const LpvIoModel& model, const Trajectory& u, const Trajectory& p,
                       const Trajectory& y_init) {
    for (const auto& issue : validate(model)) {
        if (issue.kind != "zero_leading_coefficient") throw Error(Errc::InvalidModel, issue.message);
    }
    if (y_init.length() != model.n_a || y_init.dim() != model.n_y) {
        throw Error(Errc::DimensionMismatch, "y_init must hold n_a samples of dimension n_y");
    }
    if (u.dim() != model.n_u || p.dim() != model.n_p) {
        throw Error(Errc::DimensionMismatch, "input or scheduling dimension mismatch");
    }
    const int first = y_init.t_end() + 1;
    const int last = u.t_end();
    if (last < first) return y_init;
    Eigen::MatrixXd ys(model.n_y, last - y_init.t_start() + 1);
    ys.leftCols(y_init.length()) = y_init.samples();
    const int t0 = y_init.t_start();
    for (int k = first; k <= last; ++k) {
        Eigen::VectorXd yk = Eigen::VectorXd::Zero(model.n_y);
        for (int j = 1; j <= model.n_b; ++j) yk += mat_eval(model.b[j - 1], p, k) * u.at(k - j);
        for (int i = 1; i <= model.n_a; ++i) {
            yk -= mat_eval(model.a[i - 1], p, k) * ys.col(k - i - t0);
        }
        ys.col(k - t0) = yk;
    }
    return {t0, std::move(ys)};
}

std::vector<CoeffMatrix> impulse_coeffs(const LpvSsModel& model, int count) {
    std::vector<CoeffMatrix> h;
    if (count <= 0) return h;
    h.reserve(static_cast<std::size_t>(count));
    h.push_back(model.D);
    // chain = →^{n-1}A ⋯ →A B, so h_n = →^n C · chain.
    CoeffMatrix chain = model.B;
    for (int n = 1; n < count; ++n) {
        if (n >= 2) chain = mat_mul(mat_shift(model.A, n - 1), chain);
        h.push_back(mat_mul(mat_shift(model.C, n), chain));
    }
    return h;
}

CoeffMatrix impulse_coeff(const LpvSsModel& model, int n) {
    if (n < 0) return CoeffMatrix(model.n_y, model.n_u, model.n_p);
    return impulse_coeffs(model, n + 1).back();
}

CoeffMatrix toeplitz(const LpvSsModel& model, int t1) {
    if (t1 < 1) throw Error(Errc::InvalidShape, "toeplitz needs t1 >= 1");
    const auto h = impulse_coeffs(model, t1);
    const int ny = model.n_y;
    const int nu = model.n_u;
    CoeffMatrix out(t1 * ny, t1 * nu, model.n_p);
    for (int i = 0; i < t1; ++i) {
        for (int j = 0; j <= i; ++j) out.set_block(i * ny, j * nu, mat_shift(h[i - j], j));
    }
    return out;
}

Eigen::VectorXd response_map(const LpvSsModel& model, const Eigen::VectorXd& x_tilde,
                             const Trajectory& u, const Trajectory& p) {
    require_dims(model, u, p);
    require_state(model, x_tilde);
    const int T = u.length();
    const int t0 = u.t_start();
    return mat_eval(obsv_matrix(model, T), p, t0) * x_tilde +
           mat_eval(toeplitz(model, T), p, t0) * vec(u);
}

InitialStateEstimate estimate_initial_state(const LpvSsModel& model, const Trajectory& u_ini,
                                            const Trajectory& p_ini, const Trajectory& y_ini,
                                            double tol, std::optional<int> lag_bound) {
    require_dims(model, u_ini, p_ini);
    if (y_ini.dim() != model.n_y || y_ini.t_start() != u_ini.t_start() ||
        y_ini.length() != u_ini.length()) {
        throw Error(Errc::DimensionMismatch, "y_ini must match u_ini's interval and n_y");
    }
    const int T = u_ini.length();
    const int bound = lag_bound.value_or(model.n_x);
    if (T < bound) {
        throw Error(Errc::RankDeficientObservability,
                    "initial window of length " + std::to_string(T) + " is shorter than lag bound " +
                        std::to_string(bound));
    }
    const int t0 = u_ini.t_start();
    const Eigen::MatrixXd obs = mat_eval(obsv_matrix(model, T), p_ini, t0);
    const Eigen::VectorXd rhs = vec(y_ini) - mat_eval(toeplitz(model, T), p_ini, t0) * vec(u_ini);
    const auto sol = linalg::solve_min_norm(obs, rhs);

    InitialStateEstimate est;
    est.x = sol.x;
    est.residual = sol.residual;
    est.rank = sol.rank;
    est.sigma_max = sol.singular_values.size() > 0 ? sol.singular_values(0) : 0.0;
    est.sigma_min = sol.singular_values.size() >= model.n_x ? sol.singular_values(model.n_x - 1)
                                                            : 0.0;
    if (sol.rank < model.n_x) {
        throw Error(Errc::RankDeficientObservability,
                    "observability matrix has rank " + std::to_string(sol.rank) + " < n_x " +
                        std::to_string(model.n_x));
    }
    if (est.residual > tol * std::max(1.0, vec(y_ini).norm())) {
        throw Error(Errc::InconsistentTrajectory,
                    "initial window residual " + format_double(est.residual));
    }
    return est;
}

Eigen::VectorXd propagate_state(const LpvSsModel& model, const Eigen::VectorXd& x1,
                                const Trajectory& u_ini, const Trajectory& p_ini) {
    require_dims(model, u_ini, p_ini);
    require_state(model, x1);
    const int T = u_ini.length();
    const int t_last = u_ini.t_end();
    Eigen::MatrixXd transition = Eigen::MatrixXd::Identity(model.n_x, model.n_x);
    for (int k = u_ini.t_start(); k <= t_last; ++k) {
        transition = mat_eval(model.A, p_ini, k) * transition;
    }
    Eigen::VectorXd x = transition * x1;
    if (model.n_u > 0) {
        // Reachability blocks evaluated at the last sample give
        // [A(T)⋯A(T-i+1) B(T-i)]_{i=0..T-1}, the input taken newest first.
        const Eigen::MatrixXd reach = mat_eval(reach_matrix(model, T), p_ini, t_last);
        for (int i = 0; i < T; ++i) {
            x += reach.middleCols(static_cast<Eigen::Index>(i) * model.n_u, model.n_u) *
                 u_ini.at(t_last - i);
        }
    }
    return x;
}

}  // namespace lpvdd
