#include "lpvdd/analysis.hpp"

#include <algorithm>

#include "lpvdd/errors.hpp"
#include "lpvdd/linalg.hpp"
#include "lpvdd/rng.hpp"

namespace lpvdd {

CoeffMatrix obsv_matrix(const LpvSsModel& model, int n) {
    if (n < 1) throw Error(Errc::InvalidShape, "obsv_matrix needs n >= 1");
    std::vector<CoeffMatrix> blocks{model.C};
    blocks.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) blocks.push_back(mat_mul(mat_shift_fwd(blocks.back()), model.A));
    return vstack(blocks);
}

CoeffMatrix reach_matrix(const LpvSsModel& model, int n) {
    if (n < 1) throw Error(Errc::InvalidShape, "reach_matrix needs n >= 1");
    std::vector<CoeffMatrix> blocks{model.B};
    blocks.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) blocks.push_back(mat_mul(model.A, mat_shift_bwd(blocks.back())));
    return hstack(blocks);
}

StructuralRankReport structural_rank(const CoeffMatrix& m, int required,
                                     const StructuralRankOptions& options) {
    if (options.trials < 1) throw Error(Errc::InvalidShape, "structural_rank needs trials >= 1");
    const int np = m.n_p();
    if (!options.box.empty() && static_cast<int>(options.box.size()) != np) {
        throw Error(Errc::DimensionMismatch, "scheduling box must have one interval per component");
    }
    const Window w = m.window().value_or(Window{0, 0});
    const int lo = std::min(w.lo, 0);
    const int hi = std::max(w.hi, 0);

    StructuralRankReport report;
    report.required_rank = required;
    report.num_trials = options.trials;
    report.tolerance = options.tol;
    report.tested_rank = std::min(m.rows(), m.cols());
    const Rng base(options.seed);
    for (int t = 0; t < options.trials; ++t) {
        Rng rng = base.split(static_cast<std::uint64_t>(t));
        Eigen::MatrixXd samples(np, hi - lo + 1);
        for (int col = 0; col < samples.cols(); ++col) {
            for (int c = 0; c < np; ++c) {
                const auto [a, b] = options.box.empty() ? std::pair{-1.0, 1.0} : options.box[c];
                samples(c, col) = rng.uniform(a, b);
            }
        }
        const Trajectory p(lo, std::move(samples));
        const int rank = linalg::numeric_rank(mat_eval(m, p, 0), options.tol);
        report.tested_rank = std::min(report.tested_rank, rank);
        if (rank >= required) ++report.pass_count;
    }
    report.verdict = required >= 0 && report.pass_count == report.num_trials;
    return report;
}

StructuralRankReport is_struct_observable(const LpvSsModel& model,
                                          const StructuralRankOptions& options) {
    return structural_rank(obsv_matrix(model, model.n_x), model.n_x, options);
}

StructuralRankReport is_struct_reachable(const LpvSsModel& model,
                                         const StructuralRankOptions& options) {
    if (model.n_u == 0) {
        // Autonomous systems cannot be state-reachable.
        StructuralRankReport r;
        r.required_rank = model.n_x;
        r.num_trials = options.trials;
        r.tolerance = options.tol;
        return r;
    }
    return structural_rank(reach_matrix(model, model.n_x), model.n_x, options);
}

MinimalityReport minimality_report(const LpvSsModel& model, const StructuralRankOptions& options) {
    MinimalityReport r{is_struct_observable(model, options), is_struct_reachable(model, options),
                       false};
    r.minimal = r.observability.verdict && r.reachability.verdict;
    return r;
}

namespace {

void require_pe_shapes(const Trajectory& u, const Trajectory& p, int L) {
    if (u.t_start() != p.t_start() || u.length() != p.length()) {
        throw Error(Errc::IntervalMismatch, "check_pe: u and p must share their interval");
    }
    if (L < 1 || u.length() < L) {
        throw Error(Errc::InvalidShape, "check_pe: need 1 <= L <= T, got L=" + std::to_string(L) +
                                            ", T=" + std::to_string(u.length()));
    }
}

}  // namespace

PeReport check_pe(const Trajectory& u, const Trajectory& p, int L, double tol) {
    require_pe_shapes(u, p, L);
    PeReport report;
    report.order_L = L;
    report.required = (1 + p.dim()) * u.dim() * L;
    const Eigen::VectorXd sv = linalg::singular_values(hankel_max(kron_extend(u, p), L).data);
    report.singular_values.assign(sv.data(), sv.data() + sv.size());
    report.extended_input_rank = linalg::rank_from_singular_values(sv, tol);
    report.verdict = report.extended_input_rank == report.required;
    return report;
}

PeReport check_pe(const Trajectory& u, const Trajectory& p, const Trajectory& y, int L, int n_x,
                  double tol) {
    PeReport report = check_pe(u, p, L, tol);
    const Trajectory w = stack(u, y);
    report.hankel_rank = linalg::numeric_rank(hankel_max(kron_extend(w, p), L).data, tol);
    report.hankel_rank_expected = (1 + p.dim()) * u.dim() * L + p.dim() * y.dim() * L + n_x;
    return report;
}

}  // namespace lpvdd
