#pragma once

#include <cmath>

#include "lpvdd/analysis.hpp"
#include "lpvdd/rng.hpp"
#include "lpvdd/schedcalc.hpp"
#include "lpvdd/signals.hpp"

namespace lpvdd::testing {

inline Trajectory random_traj(Rng& rng, int dim, int t_start, int length, double lo = -1.0,
                              double hi = 1.0) {
    Eigen::MatrixXd s(dim, length);
    for (int k = 0; k < length; ++k) {
        for (int c = 0; c < dim; ++c) s(c, k) = rng.uniform(lo, hi);
    }
    return {t_start, std::move(s)};
}

/// Random sparse polynomial with offsets in [lo, hi], up to `max_terms` terms of degree <= max_deg.
inline PolyCoeff random_poly(Rng& rng, int n_p, int lo, int hi, int max_terms = 4, int max_deg = 2) {
    std::vector<Term> terms;
    const int count = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_terms));
    for (int t = 0; t < count; ++t) {
        Term term{rng.uniform(-2.0, 2.0), {}};
        const int deg = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_deg + 1));
        for (int d = 0; d < deg && n_p > 0; ++d) {
            const int comp = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_p));
            const int off = lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
            term.monomial.push_back({{comp, off}, 1});
        }
        terms.push_back(std::move(term));
    }
    return PolyCoeff(n_p, std::move(terms));
}

/// Entries c0 + Σ_j c_j p_j(k) with c0 scaled by `scale` and the p-terms by `scale / 2`.
inline CoeffMatrix random_affine_matrix(Rng& rng, int rows, int cols, int n_p, double scale) {
    CoeffMatrix m(rows, cols, n_p);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            std::vector<Term> terms{Term{rng.uniform(-scale, scale), {}}};
            for (int c = 1; c <= n_p; ++c) {
                terms.push_back(Term{rng.uniform(-scale / 2, scale / 2), {VarPower{{c, 0}, 1}}});
            }
            m.set(i, j, PolyCoeff(n_p, std::move(terms)));
        }
    }
    return m;
}

inline LpvSsModel random_affine_ss(Rng& rng, int n_x, int n_u, int n_y, int n_p) {
    LpvSsModel m{n_x, n_u, n_y, n_p, {}, {}, {}, {}};
    m.A = random_affine_matrix(rng, n_x, n_x, n_p, 0.6);
    m.B = random_affine_matrix(rng, n_x, n_u, n_p, 1.0);
    m.C = random_affine_matrix(rng, n_y, n_x, n_p, 1.0);
    m.D = random_affine_matrix(rng, n_y, n_u, n_p, 1.0);
    return m;
}

/// Draws until the model passes the randomized minimality test.
inline LpvSsModel random_minimal_ss(Rng& rng, int n_x, int n_u, int n_y, int n_p) {
    for (;;) {
        LpvSsModel m = random_affine_ss(rng, n_x, n_u, n_y, n_p);
        if (minimality_report(m).minimal) return m;
    }
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace lpvdd::testing
