#include "lpvdd/schedcalc.hpp"

#include <algorithm>
#include <sstream>

#include "lpvdd/errors.hpp"

namespace lpvdd {

namespace {

bool var_less(const SchedVar& a, const SchedVar& b) {
    return a.component != b.component ? a.component < b.component : a.offset < b.offset;
}

bool mono_less(const Monomial& a, const Monomial& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](const VarPower& x, const VarPower& y) {
            if (!(x.var == y.var)) return var_less(x.var, y.var);
            return x.power < y.power;
        });
}

void normalize_monomial(Monomial& m) {
    std::stable_sort(m.begin(), m.end(),
                     [](const VarPower& x, const VarPower& y) { return var_less(x.var, y.var); });
    std::size_t out = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (out > 0 && m[out - 1].var == m[i].var) {
            m[out - 1].power += m[i].power;
        } else {
            m[out++] = m[i];
        }
    }
    m.resize(out);
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].var == b[j].var) {
            out.push_back({a[i].var, a[i].power + b[j].power});
            ++i;
            ++j;
        } else if (var_less(a[i].var, b[j].var)) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

// Sorts terms with canonical monomials and merges duplicates.
std::vector<Term> merge_terms(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& x, const Term& y) { return mono_less(x.monomial, y.monomial); });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().monomial == t.monomial) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0.0; });
    return out;
}

void require_same_np(int a, int b, const char* op) {
    if (a != b) {
        throw Error(Errc::DimensionMismatch, std::string(op) + ": n_p " + std::to_string(a) +
                                                 " vs " + std::to_string(b));
    }
}

std::optional<Window> hull(std::optional<Window> a, std::optional<Window> b) {
    if (!a) return b;
    if (!b) return a;
    return Window{std::min(a->lo, b->lo), std::max(a->hi, b->hi)};
}

}  // namespace

PolyCoeff::PolyCoeff(int n_p, std::vector<Term> terms) : n_p_(n_p) {
    if (n_p < 0) throw Error(Errc::InvalidShape, "n_p must be non-negative");
    for (auto& t : terms) {
        for (const auto& vp : t.monomial) {
            if (vp.var.component < 1 || vp.var.component > n_p) {
                throw Error(Errc::InvalidShape, "scheduling component " +
                                                    std::to_string(vp.var.component) +
                                                    " outside [1," + std::to_string(n_p) + "]");
            }
            if (vp.power < 1) throw Error(Errc::InvalidShape, "powers must be positive");
        }
        normalize_monomial(t.monomial);
    }
    terms_ = merge_terms(std::move(terms));
}

PolyCoeff PolyCoeff::constant(int n_p, double value) {
    return PolyCoeff(n_p, {Term{value, {}}});
}

PolyCoeff PolyCoeff::variable(int n_p, int component, int offset, double coeff) {
    return PolyCoeff(n_p, {Term{coeff, {VarPower{{component, offset}, 1}}}});
}

std::optional<Window> PolyCoeff::window() const {
    std::optional<Window> w;
    for (const auto& t : terms_) {
        for (const auto& vp : t.monomial) {
            w = hull(w, Window{vp.var.offset, vp.var.offset});
        }
    }
    return w;
}

bool PolyCoeff::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.empty());
}

double PolyCoeff::constant_term() const noexcept {
    if (!terms_.empty() && terms_.front().monomial.empty()) return terms_.front().coeff;
    return 0.0;
}

int PolyCoeff::degree() const noexcept {
    int d = 0;
    for (const auto& t : terms_) {
        int td = 0;
        for (const auto& vp : t.monomial) td += vp.power;
        d = std::max(d, td);
    }
    return d;
}

bool PolyCoeff::uses_only_offset(int offset) const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [offset](const Term& t) {
        return std::all_of(t.monomial.begin(), t.monomial.end(),
                           [offset](const VarPower& vp) { return vp.var.offset == offset; });
    });
}

std::string PolyCoeff::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << format_double(t.coeff);
        for (const auto& vp : t.monomial) {
            os << "*p" << vp.var.component << "(k";
            if (vp.var.offset > 0) os << "+" << vp.var.offset;
            if (vp.var.offset < 0) os << vp.var.offset;
            os << ")";
            if (vp.power != 1) os << "^" << vp.power;
        }
    }
    return os.str();
}

PolyCoeff add(const PolyCoeff& a, const PolyCoeff& b) {
    require_same_np(a.n_p_, b.n_p_, "add");
    std::vector<Term> terms;
    terms.reserve(a.terms_.size() + b.terms_.size());
    terms.insert(terms.end(), a.terms_.begin(), a.terms_.end());
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return {a.n_p_, merge_terms(std::move(terms)), PolyCoeff::Canonical{}};
}

PolyCoeff mul(const PolyCoeff& a, const PolyCoeff& b) {
    require_same_np(a.n_p_, b.n_p_, "mul");
    return sum_of_products(a.n_p_, {{&a, &b}});
}

PolyCoeff sum_of_products(int n_p,
                          const std::vector<std::pair<const PolyCoeff*, const PolyCoeff*>>& pairs) {
    std::size_t count = 0;
    for (const auto& [a, b] : pairs) {
        require_same_np(a->n_p_, n_p, "mul");
        require_same_np(b->n_p_, n_p, "mul");
        count += a->terms_.size() * b->terms_.size();
    }
    std::vector<Term> terms;
    terms.reserve(count);
    for (const auto& [a, b] : pairs) {
        for (const auto& ta : a->terms_) {
            for (const auto& tb : b->terms_) {
                terms.push_back({ta.coeff * tb.coeff, multiply(ta.monomial, tb.monomial)});
            }
        }
    }
    return {n_p, merge_terms(std::move(terms)), PolyCoeff::Canonical{}};
}

PolyCoeff scale(const PolyCoeff& c, double factor) {
    std::vector<Term> terms = c.terms_;
    for (auto& t : terms) t.coeff *= factor;
    std::erase_if(terms, [](const Term& t) { return t.coeff == 0.0; });
    return {c.n_p_, std::move(terms), PolyCoeff::Canonical{}};
}

PolyCoeff negate(const PolyCoeff& c) { return scale(c, -1.0); }

PolyCoeff shift(const PolyCoeff& c, int steps) {
    std::vector<Term> terms = c.terms_;
    for (auto& t : terms) {
        for (auto& vp : t.monomial) vp.var.offset += steps;
    }
    return {c.n_p_, std::move(terms), PolyCoeff::Canonical{}};
}

namespace {

void check_eval_domain(int n_p, const std::optional<Window>& w, const Trajectory& p, int k) {
    if (p.dim() != n_p) {
        throw Error(Errc::DimensionMismatch, "scheduling dimension " + std::to_string(p.dim()) +
                                                 " != n_p " + std::to_string(n_p));
    }
    if (w && (!p.contains(k + w->lo) || !p.contains(k + w->hi))) {
        throw Error(Errc::WindowOutOfRange,
                    "evaluation at k=" + std::to_string(k) + " needs p over [" +
                        std::to_string(k + w->lo) + "," + std::to_string(k + w->hi) +
                        "], have [" + std::to_string(p.t_start()) + "," +
                        std::to_string(p.t_end()) + "]");
    }
}

double eval_unchecked(const PolyCoeff& c, const Trajectory& p, int k) {
    double sum = 0.0;
    for (const auto& t : c.terms()) {
        double prod = t.coeff;
        for (const auto& vp : t.monomial) {
            const double x = p.value(k + vp.var.offset, vp.var.component - 1);
            for (int i = 0; i < vp.power; ++i) prod *= x;
        }
        sum += prod;
    }
    return sum;
}

}  // namespace

double eval_diamond(const PolyCoeff& c, const Trajectory& p, int k) {
    check_eval_domain(c.n_p(), c.window(), p, k);
    return eval_unchecked(c, p, k);
}

// CoeffMatrix

CoeffMatrix::CoeffMatrix(int rows, int cols, int n_p)
    : rows_(rows), cols_(cols), n_p_(n_p),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               PolyCoeff::zero(n_p)) {
    if (rows < 0 || cols < 0) throw Error(Errc::InvalidShape, "negative matrix size");
}

CoeffMatrix::CoeffMatrix(int rows, int cols, int n_p, std::vector<PolyCoeff> entries)
    : rows_(rows), cols_(cols), n_p_(n_p), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0 ||
        entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw Error(Errc::InvalidShape, "entry count does not match rows*cols");
    }
    for (const auto& e : entries_) require_same_np(e.n_p(), n_p, "CoeffMatrix");
}

CoeffMatrix CoeffMatrix::identity(int n, int n_p) {
    CoeffMatrix m(n, n, n_p);
    for (int i = 0; i < n; ++i) m.set(i, i, PolyCoeff::constant(n_p, 1.0));
    return m;
}

CoeffMatrix CoeffMatrix::from_constant(const Eigen::MatrixXd& c, int n_p) {
    CoeffMatrix m(static_cast<int>(c.rows()), static_cast<int>(c.cols()), n_p);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) m.set(i, j, PolyCoeff::constant(n_p, c(i, j)));
    }
    return m;
}

void CoeffMatrix::set(int i, int j, PolyCoeff value) {
    if (i < 0 || j < 0 || i >= rows_ || j >= cols_) {
        throw Error(Errc::InvalidShape, "CoeffMatrix::set index out of range");
    }
    require_same_np(value.n_p(), n_p_, "CoeffMatrix::set");
    entries_[index(i, j)] = std::move(value);
}

std::optional<Window> CoeffMatrix::window() const {
    std::optional<Window> w;
    for (const auto& e : entries_) w = hull(w, e.window());
    return w;
}

bool CoeffMatrix::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const PolyCoeff& e) { return e.is_zero(); });
}

int CoeffMatrix::degree() const noexcept {
    int d = 0;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
}

CoeffMatrix CoeffMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > rows_ || c0 + nc > cols_) {
        throw Error(Errc::InvalidShape, "CoeffMatrix::block out of range");
    }
    CoeffMatrix out(nr, nc, n_p_);
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nc; ++j) out.entries_[out.index(i, j)] = (*this)(r0 + i, c0 + j);
    }
    return out;
}

void CoeffMatrix::set_block(int r0, int c0, const CoeffMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
        throw Error(Errc::InvalidShape, "CoeffMatrix::set_block out of range");
    }
    require_same_np(b.n_p_, n_p_, "CoeffMatrix::set_block");
    for (int i = 0; i < b.rows_; ++i) {
        for (int j = 0; j < b.cols_; ++j) entries_[index(r0 + i, c0 + j)] = b(i, j);
    }
}

CoeffMatrix mat_add(const CoeffMatrix& a, const CoeffMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(Errc::DimensionMismatch, "mat_add: shapes differ");
    }
    require_same_np(a.n_p(), b.n_p(), "mat_add");
    CoeffMatrix out(a.rows(), a.cols(), a.n_p());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, add(a(i, j), b(i, j)));
    }
    return out;
}

CoeffMatrix mat_mul(const CoeffMatrix& a, const CoeffMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(Errc::DimensionMismatch, "mat_mul: " + std::to_string(a.rows()) + "x" +
                                                 std::to_string(a.cols()) + " times " +
                                                 std::to_string(b.rows()) + "x" +
                                                 std::to_string(b.cols()));
    }
    require_same_np(a.n_p(), b.n_p(), "mat_mul");
    CoeffMatrix out(a.rows(), b.cols(), a.n_p());
    std::vector<std::pair<const PolyCoeff*, const PolyCoeff*>> pairs;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            pairs.clear();
            for (int l = 0; l < a.cols(); ++l) {
                if (!a(i, l).is_zero() && !b(l, j).is_zero()) pairs.emplace_back(&a(i, l), &b(l, j));
            }
            if (!pairs.empty()) out.set(i, j, sum_of_products(a.n_p(), pairs));
        }
    }
    return out;
}

CoeffMatrix mat_scale(const CoeffMatrix& m, double factor) {
    CoeffMatrix out(m.rows(), m.cols(), m.n_p());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out.set(i, j, scale(m(i, j), factor));
    }
    return out;
}

CoeffMatrix mat_shift(const CoeffMatrix& m, int steps) {
    std::vector<PolyCoeff> entries;
    entries.reserve(m.entries().size());
    for (const auto& e : m.entries()) entries.push_back(shift(e, steps));
    return {m.rows(), m.cols(), m.n_p(), std::move(entries)};
}

CoeffMatrix vstack(const std::vector<CoeffMatrix>& blocks) {
    if (blocks.empty()) throw Error(Errc::InvalidShape, "vstack of nothing");
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != blocks.front().cols()) {
            throw Error(Errc::DimensionMismatch, "vstack: column counts differ");
        }
        rows += b.rows();
    }
    CoeffMatrix out(rows, blocks.front().cols(), blocks.front().n_p());
    int r = 0;
    for (const auto& b : blocks) {
        out.set_block(r, 0, b);
        r += b.rows();
    }
    return out;
}

CoeffMatrix hstack(const std::vector<CoeffMatrix>& blocks) {
    if (blocks.empty()) throw Error(Errc::InvalidShape, "hstack of nothing");
    int cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != blocks.front().rows()) {
            throw Error(Errc::DimensionMismatch, "hstack: row counts differ");
        }
        cols += b.cols();
    }
    CoeffMatrix out(blocks.front().rows(), cols, blocks.front().n_p());
    int c = 0;
    for (const auto& b : blocks) {
        out.set_block(0, c, b);
        c += b.cols();
    }
    return out;
}

Eigen::MatrixXd mat_eval(const CoeffMatrix& m, const Trajectory& p, int k) {
    check_eval_domain(m.n_p(), m.window(), p, k);
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out(i, j) = eval_unchecked(m(i, j), p, k);
    }
    return out;
}

}  // namespace lpvdd
