#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lpvdd/signals.hpp"

namespace lpvdd {

/// Stands for p_component(k + offset); component is 1-based.
struct SchedVar {
    int component = 1;
    int offset = 0;

    friend bool operator==(const SchedVar&, const SchedVar&) = default;
};

struct VarPower {
    SchedVar var;
    int power = 1;

    friend bool operator==(const VarPower&, const VarPower&) = default;
};

/// Product of powers of shifted scheduling samples, sorted by (component, offset).
using Monomial = std::vector<VarPower>;

struct Term {
    double coeff = 0.0;
    Monomial monomial;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Closed interval of time offsets [lo, hi].
struct Window {
    int lo = 0;
    int hi = 0;

    friend bool operator==(const Window&, const Window&) = default;
};

/**
 * Scalar coefficient function: a polynomial in shifted scheduling samples.
 *
 * Always held in canonical form: variables inside a monomial are sorted by
 * (component, offset) with repeated variables merged into powers, terms are
 * sorted by monomial, equal monomials are merged, and only coefficients that
 * are exactly zero are dropped. The zero function has no terms.
 */
class PolyCoeff {
public:
    PolyCoeff() = default;

    /// Normalizes `terms`. Throws InvalidShape on a component outside
    /// [1, n_p] or a non-positive power.
    PolyCoeff(int n_p, std::vector<Term> terms);

    static PolyCoeff zero(int n_p) { return PolyCoeff(n_p, {}); }
    static PolyCoeff constant(int n_p, double value);
    static PolyCoeff variable(int n_p, int component, int offset, double coeff = 1.0);

    [[nodiscard]] int n_p() const noexcept { return n_p_; }
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }

    /// Tight hull of all offsets; empty for constant functions.
    [[nodiscard]] std::optional<Window> window() const;

    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const noexcept;
    /// Coefficient of the empty monomial.
    [[nodiscard]] double constant_term() const noexcept;
    /// Total degree; 0 for constants and for zero.
    [[nodiscard]] int degree() const noexcept;
    /// True when every variable has exactly this offset.
    [[nodiscard]] bool uses_only_offset(int offset) const noexcept;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const PolyCoeff&, const PolyCoeff&) = default;

private:
    struct Canonical {};
    PolyCoeff(int n_p, std::vector<Term> terms, Canonical) : n_p_(n_p), terms_(std::move(terms)) {}

    friend PolyCoeff add(const PolyCoeff&, const PolyCoeff&);
    friend PolyCoeff mul(const PolyCoeff&, const PolyCoeff&);
    friend PolyCoeff scale(const PolyCoeff&, double);
    friend PolyCoeff shift(const PolyCoeff&, int);
    friend PolyCoeff sum_of_products(int, const std::vector<std::pair<const PolyCoeff*, const PolyCoeff*>>&);

    int n_p_ = 0;
    std::vector<Term> terms_;
};

[[nodiscard]] PolyCoeff add(const PolyCoeff& a, const PolyCoeff& b);
[[nodiscard]] PolyCoeff mul(const PolyCoeff& a, const PolyCoeff& b);
[[nodiscard]] PolyCoeff scale(const PolyCoeff& c, double factor);
[[nodiscard]] PolyCoeff negate(const PolyCoeff& c);

/// Σ a_i * b_i, normalized once.
[[nodiscard]] PolyCoeff sum_of_products(
    int n_p, const std::vector<std::pair<const PolyCoeff*, const PolyCoeff*>>& pairs);

/// Adds `steps` to every offset: shift(c, 1) is →c, shift(c, -1) is ←c.
[[nodiscard]] PolyCoeff shift(const PolyCoeff& c, int steps);
[[nodiscard]] inline PolyCoeff shift_fwd(const PolyCoeff& c) { return shift(c, 1); }
[[nodiscard]] inline PolyCoeff shift_bwd(const PolyCoeff& c) { return shift(c, -1); }

inline PolyCoeff operator+(const PolyCoeff& a, const PolyCoeff& b) { return add(a, b); }
inline PolyCoeff operator-(const PolyCoeff& a) { return negate(a); }
inline PolyCoeff operator-(const PolyCoeff& a, const PolyCoeff& b) { return add(a, negate(b)); }
inline PolyCoeff operator*(const PolyCoeff& a, const PolyCoeff& b) { return mul(a, b); }
inline PolyCoeff operator*(double s, const PolyCoeff& c) { return scale(c, s); }

/// (c ⋄ p)(k) = Σ coeff · Π p_component(k + offset)^power.
[[nodiscard]] double eval_diamond(const PolyCoeff& c, const Trajectory& p, int k);

/// Row-major matrix of coefficient functions sharing one scheduling dimension.
class CoeffMatrix {
public:
    CoeffMatrix() = default;
    /// Zero matrix.
    CoeffMatrix(int rows, int cols, int n_p);
    CoeffMatrix(int rows, int cols, int n_p, std::vector<PolyCoeff> entries);

    static CoeffMatrix identity(int n, int n_p);
    static CoeffMatrix from_constant(const Eigen::MatrixXd& m, int n_p);

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] int n_p() const noexcept { return n_p_; }

    [[nodiscard]] const PolyCoeff& operator()(int i, int j) const { return entries_[index(i, j)]; }
    void set(int i, int j, PolyCoeff value);

    [[nodiscard]] const std::vector<PolyCoeff>& entries() const noexcept { return entries_; }

    [[nodiscard]] std::optional<Window> window() const;
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] int degree() const noexcept;

    [[nodiscard]] CoeffMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const CoeffMatrix& b);

    friend bool operator==(const CoeffMatrix&, const CoeffMatrix&) = default;

private:
    [[nodiscard]] std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_ = 0;
    int cols_ = 0;
    int n_p_ = 0;
    std::vector<PolyCoeff> entries_;
};

[[nodiscard]] CoeffMatrix mat_add(const CoeffMatrix& a, const CoeffMatrix& b);
[[nodiscard]] CoeffMatrix mat_mul(const CoeffMatrix& a, const CoeffMatrix& b);
[[nodiscard]] CoeffMatrix mat_scale(const CoeffMatrix& m, double factor);
[[nodiscard]] CoeffMatrix mat_shift(const CoeffMatrix& m, int steps);
[[nodiscard]] inline CoeffMatrix mat_shift_fwd(const CoeffMatrix& m) { return mat_shift(m, 1); }
[[nodiscard]] inline CoeffMatrix mat_shift_bwd(const CoeffMatrix& m) { return mat_shift(m, -1); }
[[nodiscard]] CoeffMatrix vstack(const std::vector<CoeffMatrix>& blocks);
[[nodiscard]] CoeffMatrix hstack(const std::vector<CoeffMatrix>& blocks);

/// Entrywise (M ⋄ p)(k).
[[nodiscard]] Eigen::MatrixXd mat_eval(const CoeffMatrix& m, const Trajectory& p, int k);

}  // namespace lpvdd
