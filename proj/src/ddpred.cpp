#include "lpvdd/ddpred.hpp"

#include <algorithm>
#include <limits>

#include "lpvdd/analysis.hpp"
#include "lpvdd/errors.hpp"
#include "lpvdd/linalg.hpp"

namespace lpvdd {

DataRecord::DataRecord(Trajectory u_, Trajectory p_, Trajectory y_, std::string provenance_)
    : u(std::move(u_)), p(std::move(p_)), y(std::move(y_)), provenance(std::move(provenance_)) {
    const auto same = [this](const Trajectory& w) {
        return w.t_start() == u.t_start() && w.length() == u.length();
    };
    if (!same(p) || !same(y)) {
        throw Error(Errc::IntervalMismatch, "data record signals must share one interval");
    }
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Ok: return "ok";
        case Verdict::Ambiguous: return "ambiguous";
        case Verdict::Infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

double spectral_norm(const Eigen::MatrixXd& m) {
    const Eigen::VectorXd sv = linalg::singular_values(m);
    return sv.size() > 0 ? sv(0) : 0.0;
}

// Constraint block H_L(p ⊗ w) - P̄ H_L(w) next to H_L(w).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> signal_blocks(const Trajectory& w, const Trajectory& p,
                                                          const Trajectory& p_query, int L) {
    Eigen::MatrixXd plain = hankel_max(w, L).data;
    Eigen::MatrixXd constraint =
        hankel_max(kron_part(w, p), L).data - sched_block_diag(p_query, w.dim()) * plain;
    return {std::move(plain), std::move(constraint)};
}

struct WindowSolve {
    Eigen::VectorXd y_pred;
    Eigen::VectorXd g;
    double residual = 0.0;
    double margin = 0.0;
    double leakage = 0.0;
};

WindowSolve solve_window(const DataRecord& data, const Trajectory& u_q, const Trajectory& p_q,
                         const Trajectory& y_ini) {
    const int L = u_q.length();
    const int t_ini = y_ini.length();
    const int ny = data.n_y();
    const PredictorSystem sys = build_predictor(data, p_q, L);
    const auto& rp = sys.rows;
    const int known_y = t_ini * ny;
    const int unknown_y = (L - t_ini) * ny;

    Eigen::MatrixXd known(rp.u.count + rp.u_constraint.count + known_y + rp.y_constraint.count,
                          sys.col_count);
    known << sys.matrix.middleRows(rp.u.begin, rp.u.count),
        sys.matrix.middleRows(rp.u_constraint.begin, rp.u_constraint.count),
        sys.matrix.middleRows(rp.y.begin, known_y),
        sys.matrix.middleRows(rp.y_constraint.begin, rp.y_constraint.count);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(known.rows());
    rhs.head(rp.u.count) = vec(u_q);
    rhs.segment(rp.u.count + rp.u_constraint.count, known_y) = vec(y_ini);
    const Eigen::MatrixXd output_rows = sys.matrix.middleRows(rp.y.begin + known_y, unknown_y);

    const auto sol = linalg::solve_min_norm(known, rhs);
    WindowSolve out;
    out.g = sol.x;
    out.y_pred = output_rows * sol.x;
    out.residual = sol.residual;
    out.margin = sol.rank > 0 ? sol.singular_values(sol.rank - 1) / sol.singular_values(0) : 0.0;
    if (sol.null_basis.cols() > 0) {
        const double scale = spectral_norm(output_rows);
        if (scale > 0.0) out.leakage = spectral_norm(output_rows * sol.null_basis) / scale;
    }
    return out;
}

void require_query(const DataRecord& data, const PredictionQuery& q) {
    const auto same = [](const Trajectory& a, const Trajectory& b) {
        return a.t_start() == b.t_start() && a.length() == b.length();
    };
    if (!same(q.u_ini, q.p_ini) || !same(q.u_ini, q.y_ini) || !same(q.u_r, q.p_r)) {
        throw Error(Errc::IntervalMismatch, "query windows must share their intervals");
    }
    if (q.u_r.t_start() != q.u_ini.t_end() + 1) {
        throw Error(Errc::NonAdjacentIntervals, "future window must follow the initial window");
    }
    if (q.u_ini.dim() != data.n_u() || q.u_r.dim() != data.n_u() || q.p_ini.dim() != data.n_p() ||
        q.p_r.dim() != data.n_p() || q.y_ini.dim() != data.n_y()) {
        throw Error(Errc::DimensionMismatch, "query dimensions differ from the data record");
    }
}

}  // namespace

PredictorSystem build_predictor(const DataRecord& data, const Trajectory& p_query, int L) {
    if (L < 1 || data.length() < L) {
        throw Error(Errc::InvalidShape, "build_predictor: need 1 <= L <= T, got L=" +
                                            std::to_string(L) + ", T=" +
                                            std::to_string(data.length()));
    }
    if (p_query.length() != L || p_query.dim() != data.n_p()) {
        throw Error(Errc::InvalidShape, "query scheduling must have L samples of dimension n_p");
    }
    auto [hu, cu] = signal_blocks(data.u, data.p, p_query, L);
    auto [hy, cy] = signal_blocks(data.y, data.p, p_query, L);
    PredictorSystem sys;
    sys.L = L;
    sys.col_count = data.length() - L + 1;
    auto& rp = sys.rows;
    rp.u = {0, static_cast<int>(hu.rows())};
    rp.u_constraint = {rp.u.begin + rp.u.count, static_cast<int>(cu.rows())};
    rp.y = {rp.u_constraint.begin + rp.u_constraint.count, static_cast<int>(hy.rows())};
    rp.y_constraint = {rp.y.begin + rp.y.count, static_cast<int>(cy.rows())};
    sys.matrix.resize(rp.y_constraint.begin + rp.y_constraint.count, sys.col_count);
    sys.matrix << hu, cu, hy, cy;
    return sys;
}

int select_window(const DataRecord& data, int min_window, int max_window) {
    const Trajectory w = stack(data.u, data.y);
    for (int L = std::min(max_window, data.length()); L >= min_window; --L) {
        const auto h = hankel_max(kron_extend(w, data.p), L);
        if (linalg::numeric_rank(h.data) < h.cols) return L;
    }
    return max_window;
}

PredictionResult predict(const DataRecord& data, const PredictionQuery& query,
                         const PredictOptions& options) {
    require_query(data, query);
    const int t_ini = query.u_ini.length();
    const int t_r = query.u_r.length();
    const int full = t_ini + t_r;
    const int window = options.window > 0 ? options.window : select_window(data, t_ini + 1, full);
    if (window <= t_ini || window > full) {
        throw Error(Errc::InvalidShape, "window length " + std::to_string(window) +
                                            " must lie in [T_ini+1, T_ini+T_r]");
    }
    if (window > data.length()) {
        throw Error(Errc::InvalidShape, "window length " + std::to_string(window) +
                                            " exceeds the data length");
    }

    const Trajectory u_all = concat(query.u_ini, query.u_r);
    const Trajectory p_all = concat(query.p_ini, query.p_r);
    Eigen::MatrixXd y_all(data.n_y(), full);
    y_all.leftCols(t_ini) = query.y_ini.samples();
    const int t0 = query.u_ini.t_start();

    PredictionResult result;
    result.window = window;
    result.output_uniqueness_margin = std::numeric_limits<double>::infinity();

    int done = 0;  // predicted samples so far
    while (done < t_r) {
        const int steps = std::min(window - t_ini, t_r - done);
        const int start = t0 + done;  // first sample of this window's initial part
        const int end = start + t_ini + steps - 1;
        const Trajectory y_ini(start, y_all.middleCols(done, t_ini));
        const WindowSolve ws = solve_window(data, u_all.window(start, end).reindexed(1),
                                            p_all.window(start, end).reindexed(1),
                                            y_ini.reindexed(1));
        y_all.middleCols(t_ini + done, steps) =
            Eigen::Map<const Eigen::MatrixXd>(ws.y_pred.data(), data.n_y(), steps);
        result.g.push_back(ws.g);
        result.residual = std::max(result.residual, ws.residual);
        result.output_uniqueness_margin = std::min(result.output_uniqueness_margin, ws.margin);
        result.null_leakage = std::max(result.null_leakage, ws.leakage);
        done += steps;
    }
    result.y_r = Trajectory(query.u_r.t_start(), y_all.rightCols(t_r));

    const PeReport pe = check_pe(data.u, data.p, window);
    result.pe_rank = pe.extended_input_rank;
    result.pe_required = pe.required;
    if (!pe.verdict) {
        result.warnings.push_back("extended input Hankel of order " + std::to_string(window) +
                                  " has rank " + std::to_string(pe.extended_input_rank) + " < " +
                                  std::to_string(pe.required));
    }
    if (window < full) {
        result.warnings.push_back("data too short for one window of length " +
                                  std::to_string(full) + "; chained windows of length " +
                                  std::to_string(window));
    }

    if (result.output_uniqueness_margin <= options.margin_tol ||
        result.null_leakage > options.margin_tol) {
        result.verdict = Verdict::Ambiguous;
    } else if (result.residual > options.tol) {
        result.verdict = Verdict::Infeasible;
    } else {
        result.verdict = Verdict::Ok;
    }
    return result;
}

SpanMembership span_membership(const DataRecord& data, const Trajectory& w_test,
                               const Trajectory& p_test, double tol) {
    const int L = w_test.length();
    if (L < 1 || data.length() < L) {
        throw Error(Errc::InvalidShape, "span_membership: test window longer than data");
    }
    if (w_test.dim() != data.n_u() + data.n_y() || p_test.dim() != data.n_p() ||
        p_test.length() != L) {
        throw Error(Errc::InvalidShape, "span_membership: test signal shape mismatch");
    }
    const Trajectory w = stack(data.u, data.y);
    auto [plain, constraint] = signal_blocks(w, data.p, p_test.reindexed(1), L);
    Eigen::MatrixXd m(plain.rows() + constraint.rows(), plain.cols());
    m << plain, constraint;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m.rows());
    rhs.head(plain.rows()) = vec(w_test);
    const auto sol = linalg::solve_min_norm(m, rhs);
    return {sol.residual <= tol, sol.residual, sol.x};
}

LeftNullspace left_nullspace(const DataRecord& data, int L, double tol) {
    if (L < 1 || data.length() < L) {
        throw Error(Errc::InvalidShape, "left_nullspace: need 1 <= L <= T");
    }
    const auto h = hankel_max(kron_extend(stack(data.u, data.y), data.p), L);
    LeftNullspace out;
    out.basis = linalg::left_null_space(h.data, tol);
    out.rows = static_cast<int>(h.data.rows());
    out.dimension = static_cast<int>(out.basis.rows());
    out.hankel_rank = out.rows - out.dimension;
    return out;
}

KernelRep annihilator_kernel(const Eigen::RowVectorXd& row, int n_w, int n_p, int L) {
    const int block = (1 + n_p) * n_w;
    if (row.size() != static_cast<Eigen::Index>(block) * L) {
        throw Error(Errc::DimensionMismatch, "annihilator row length != (1+n_p) n_w L");
    }
    KernelRep kernel;
    for (int i = 0; i < L; ++i) {
        CoeffMatrix ri(1, n_w, n_p);
        for (int c = 0; c < n_w; ++c) {
            std::vector<Term> terms{Term{row(i * block + c), {}}};
            for (int j = 0; j < n_p; ++j) {
                terms.push_back(Term{row(i * block + n_w + j * n_w + c), {VarPower{{j + 1, i}, 1}}});
            }
            ri.set(0, c, PolyCoeff(n_p, std::move(terms)));
        }
        kernel.r.push_back(std::move(ri));
    }
    return kernel;
}

double annihilation_residual(const Eigen::MatrixXd& basis, const Trajectory& w, const Trajectory& p,
                             int L) {
    if (basis.rows() == 0) return 0.0;
    return (basis * hankel_max(kron_extend(w, p), L).data).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd kernel_rows_extended(const KernelRep& kernel, int L) {
    const int n = kernel.order();
    const int n_w = kernel.n_w();
    const int n_p = kernel.r.front().n_p();
    const int block = (1 + n_p) * n_w;
    const int shifts = std::max(0, L - n);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(shifts) * kernel.rows(),
                                                static_cast<Eigen::Index>(block) * L);
    for (int s = 0; s < shifts; ++s) {
        for (int rho = 0; rho < kernel.rows(); ++rho) {
            const auto out_row = static_cast<Eigen::Index>(s) * kernel.rows() + rho;
            for (int i = 0; i <= n; ++i) {
                const int pos = i + s;
                for (int c = 0; c < n_w; ++c) {
                    for (const auto& t : kernel.r[i](rho, c).terms()) {
                        if (t.monomial.empty()) {
                            out(out_row, pos * block + c) += t.coeff;
                            continue;
                        }
                        const auto& vp = t.monomial.front();
                        if (t.monomial.size() != 1 || vp.power != 1 || vp.var.offset != i) {
                            throw Error(Errc::InvalidModel,
                                        "kernel coefficient r" + std::to_string(i) +
                                            " is not affine in p(k+" + std::to_string(i) + ")");
                        }
                        out(out_row, pos * block + n_w + (vp.var.component - 1) * n_w + c) +=
                            t.coeff;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace lpvdd
