#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lpvdd/models.hpp"

namespace lpvdd {

/// n-step observability matrix function: o_1 = C, o_{i+1} = →o_i A.
[[nodiscard]] CoeffMatrix obsv_matrix(const LpvSsModel& model, int n);

/// n-step reachability matrix function: r_1 = B, r_{i+1} = A ←r_i.
[[nodiscard]] CoeffMatrix reach_matrix(const LpvSsModel& model, int n);

struct StructuralRankOptions {
    int trials = 20;
    double tol = 1e-9;  // relative to sigma_max
    std::uint64_t seed = 0;
    /// Per scheduling component [lo, hi]; empty means [-1, 1] for every component.
    std::vector<std::pair<double, double>> box;
};

struct StructuralRankReport {
    int tested_rank = 0;  // smallest rank seen over the trials
    int required_rank = 0;
    int num_trials = 0;
    int pass_count = 0;
    double tolerance = 0.0;
    bool verdict = false;  // passes on every trial
};

/**
 * Generic ("almost everywhere") rank test for a coefficient matrix.
 *
 * Each trial draws the scheduling samples M needs around k = 0 uniformly from
 * the box and evaluates (M ⋄ p)(0). Trial t uses Rng(seed).split(t).
 */
[[nodiscard]] StructuralRankReport structural_rank(const CoeffMatrix& m, int required,
                                                   const StructuralRankOptions& options = {});

[[nodiscard]] StructuralRankReport is_struct_observable(const LpvSsModel& model,
                                                        const StructuralRankOptions& options = {});
[[nodiscard]] StructuralRankReport is_struct_reachable(const LpvSsModel& model,
                                                       const StructuralRankOptions& options = {});

struct MinimalityReport {
    StructuralRankReport observability;
    StructuralRankReport reachability;
    bool minimal = false;
};

[[nodiscard]] MinimalityReport minimality_report(const LpvSsModel& model,
                                                 const StructuralRankOptions& options = {});

struct PeReport {
    int order_L = 0;
    int extended_input_rank = 0;
    int required = 0;  // (1 + n_p) * n_u * L
    std::optional<int> hankel_rank;           // rank of H_L(col(w, p ⊗ w)), w = col(u, y)
    std::optional<int> hankel_rank_expected;  // (1 + n_p) n_u L + n_p n_y L + n_x
    bool verdict = false;
    std::vector<double> singular_values;  // of H_L(col(u, p ⊗ u))
};

/// Rank test of H_L(col(u, p ⊗ u)) for the shifted-affine class.
[[nodiscard]] PeReport check_pe(const Trajectory& u, const Trajectory& p, int L,
                                double tol = 1e-9);

/// As above, and additionally reports the rank of the extended signal Hankel
/// against the dimension implied by a state-order hypothesis n_x.
[[nodiscard]] PeReport check_pe(const Trajectory& u, const Trajectory& p, const Trajectory& y,
                                int L, int n_x, double tol = 1e-9);

}  // namespace lpvdd
