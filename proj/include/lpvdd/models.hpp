#pragma once

#include <string>
#include <vector>

#include "lpvdd/schedcalc.hpp"

namespace lpvdd {

/// q x = (A ⋄ p) x + (B ⋄ p) u,  y = (C ⋄ p) x + (D ⋄ p) u.
struct LpvSsModel {
    int n_x = 0;
    int n_u = 0;
    int n_y = 0;
    int n_p = 0;
    CoeffMatrix A;
    CoeffMatrix B;
    CoeffMatrix C;
    CoeffMatrix D;
};

/**
 * y(k) + Σ_{i=1}^{n_a} a_i y(k-i) = Σ_{j=1}^{n_b} b_j u(k-j), with a_0 = I.
 *
 * Coefficient a_i (and b_i) may only depend on scheduling samples at offset -i.
 */
struct LpvIoModel {
    int n_u = 0;
    int n_y = 0;
    int n_p = 0;
    int n_a = 0;
    int n_b = 0;
    std::vector<CoeffMatrix> a;  // a_1 ... a_{n_a}, each n_y x n_y
    std::vector<CoeffMatrix> b;  // b_1 ... b_{n_b}, each n_y x n_u

    /// All coefficient entries have degree <= 1.
    [[nodiscard]] bool is_affine() const;
};

/// R(ξ) = Σ r_i ξ^i acting as (R(q) ⋄ p) w = Σ (r_i ⋄ p) q^i w.
struct KernelRep {
    std::vector<CoeffMatrix> r;  // r_0 ... r_n

    [[nodiscard]] int order() const { return static_cast<int>(r.size()) - 1; }
    [[nodiscard]] int rows() const { return r.empty() ? 0 : r.front().rows(); }
    [[nodiscard]] int n_w() const { return r.empty() ? 0 : r.front().cols(); }
};

struct ValidationIssue {
    std::string kind;  // "dimension", "offset_locality", "zero_leading_coefficient"
    std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

[[nodiscard]] ValidationReport validate(const LpvSsModel& model);
[[nodiscard]] ValidationReport validate(const LpvIoModel& model);
[[nodiscard]] ValidationReport validate(const KernelRep& kernel);

/// SISO second-order example with affine dependence on two scheduling channels.
[[nodiscard]] LpvIoModel example_verhoek();

/**
 * Kernel form of an IO model with w = col(u, y).
 *
 * Returns R(ξ) = [-R_u(ξ) | R_y(ξ)] with R_y = I ξ^{n_a} + Σ →^{n_a} a_i ξ^{n_a - i} and
 * R_u = Σ →^{n_a} b_j ξ^{n_a - j}, so the residual at k is the IO equation at k + n_a.
 */
[[nodiscard]] KernelRep io_to_kernel(const LpvIoModel& model);

/// ((R(q) ⋄ p) w)(k) = Σ_i (r_i ⋄ p)(k) w(k + i).
[[nodiscard]] Eigen::VectorXd kernel_residual(const KernelRep& kernel, const Trajectory& w,
                                              const Trajectory& p, int k);

}  // namespace lpvdd
