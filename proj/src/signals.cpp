#include "lpvdd/signals.hpp"

#include "lpvdd/errors.hpp"

namespace lpvdd {

namespace {

std::string interval_text(const Trajectory& w) {
    return "[" + std::to_string(w.t_start()) + "," + std::to_string(w.t_end()) + "]";
}

void require_same_interval(const Trajectory& a, const Trajectory& b, const char* what) {
    if (a.t_start() != b.t_start() || a.length() != b.length()) {
        throw Error(Errc::IntervalMismatch,
                    std::string(what) + ": " + interval_text(a) + " vs " + interval_text(b));
    }
}

}  // namespace

Trajectory::Trajectory(int t_start, Eigen::MatrixXd samples)
    : t_start_(t_start), samples_(std::move(samples)) {
    if (samples_.cols() < 1) {
        throw Error(Errc::InvalidShape, "trajectory needs at least one sample");
    }
}

Trajectory Trajectory::zeros(int dim, int t_start, int length) {
    if (dim < 0 || length < 1) {
        throw Error(Errc::InvalidShape, "zeros: dim must be >= 0 and length >= 1");
    }
    return {t_start, Eigen::MatrixXd::Zero(dim, length)};
}

Eigen::VectorXd Trajectory::at(int k) const {
    if (!contains(k)) {
        throw Error(Errc::WindowOutOfRange,
                    "sample " + std::to_string(k) + " outside " + interval_text(*this));
    }
    return samples_.col(k - t_start_);
}

Trajectory Trajectory::window(int t1, int t2) const {
    if (t1 > t2 || !contains(t1) || !contains(t2)) {
        throw Error(Errc::WindowOutOfRange, "window [" + std::to_string(t1) + "," +
                                                std::to_string(t2) + "] outside " +
                                                interval_text(*this));
    }
    return {t1, samples_.middleCols(t1 - t_start_, t2 - t1 + 1)};
}

Eigen::VectorXd vec(const Trajectory& w) {
    return Eigen::Map<const Eigen::VectorXd>(w.samples().data(), w.samples().size());
}

Trajectory unvec(const Eigen::VectorXd& v, int dim, int t_start) {
    if (dim <= 0 || v.size() == 0 || v.size() % dim != 0) {
        throw Error(Errc::DimensionMismatch, "unvec: length is not a multiple of dim");
    }
    return {t_start, Eigen::Map<const Eigen::MatrixXd>(v.data(), dim, v.size() / dim)};
}

Trajectory concat(const Trajectory& w1, const Trajectory& w2) {
    if (w1.dim() != w2.dim()) {
        throw Error(Errc::DimensionMismatch, "concat: dims " + std::to_string(w1.dim()) +
                                                 " and " + std::to_string(w2.dim()));
    }
    if (w2.t_start() != w1.t_end() + 1) {
        throw Error(Errc::NonAdjacentIntervals,
                    "concat: " + interval_text(w1) + " and " + interval_text(w2));
    }
    Eigen::MatrixXd s(w1.dim(), w1.length() + w2.length());
    s << w1.samples(), w2.samples();
    return {w1.t_start(), std::move(s)};
}

Trajectory stack(const Trajectory& a, const Trajectory& b) {
    require_same_interval(a, b, "stack");
    Eigen::MatrixXd s(a.dim() + b.dim(), a.length());
    s.topRows(a.dim()) = a.samples();
    s.bottomRows(b.dim()) = b.samples();
    return {a.t_start(), std::move(s)};
}

Trajectory channels(const Trajectory& w, int first, int count) {
    if (first < 0 || count < 0 || first + count > w.dim()) {
        throw Error(Errc::DimensionMismatch, "channels: range outside signal dimension");
    }
    return {w.t_start(), w.samples().middleRows(first, count)};
}

HankelMatrix hankel(const Trajectory& w, int t1, int t2) {
    const int T = w.length();
    if (t1 <= 0 || t2 <= 0 || t1 > T || t2 > T - t1 + 1) {
        throw Error(Errc::InvalidShape, "hankel: t1=" + std::to_string(t1) +
                                            ", t2=" + std::to_string(t2) +
                                            " incompatible with length " + std::to_string(T));
    }
    const int n = w.dim();
    HankelMatrix h{t1, t2, n, Eigen::MatrixXd(static_cast<Eigen::Index>(t1) * n, t2)};
    for (int i = 0; i < t1; ++i) {
        h.data.middleRows(static_cast<Eigen::Index>(i) * n, n) = w.samples().middleCols(i, t2);
    }
    return h;
}

HankelMatrix hankel_max(const Trajectory& w, int t1) {
    return hankel(w, t1, w.length() - t1 + 1);
}

Trajectory kron_part(const Trajectory& w, const Trajectory& p) {
    require_same_interval(w, p, "kron_extend");
    const int nw = w.dim();
    const int np = p.dim();
    Eigen::MatrixXd s(static_cast<Eigen::Index>(np) * nw, w.length());
    for (int j = 0; j < np; ++j) {
        s.middleRows(static_cast<Eigen::Index>(j) * nw, nw) =
            w.samples() * p.samples().row(j).asDiagonal();
    }
    return {w.t_start(), std::move(s)};
}

Trajectory kron_extend(const Trajectory& w, const Trajectory& p) {
    return stack(w, kron_part(w, p));
}

Eigen::MatrixXd sched_block_diag(const Trajectory& p_bar, int n) {
    const int L = p_bar.length();
    const int np = p_bar.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L) * np * n,
                                              static_cast<Eigen::Index>(L) * n);
    for (int k = 0; k < L; ++k) {
        for (int j = 0; j < np; ++j) {
            const double pj = p_bar.samples()(j, k);
            for (int i = 0; i < n; ++i) {
                m(static_cast<Eigen::Index>(k) * np * n + j * n + i,
                  static_cast<Eigen::Index>(k) * n + i) = pj;
            }
        }
    }
    return m;
}

ExtendedHankelParts split_extended_hankel(const HankelMatrix& extended, int n_w, int n_p) {
    const int block = (1 + n_p) * n_w;
    if (extended.block_dim != block) {
        throw Error(Errc::DimensionMismatch, "split_extended_hankel: block dim " +
                                                 std::to_string(extended.block_dim) +
                                                 " != (1+n_p)*n_w");
    }
    const int L = extended.block_rows;
    ExtendedHankelParts parts{Eigen::MatrixXd(static_cast<Eigen::Index>(L) * n_w, extended.cols),
                              Eigen::MatrixXd(static_cast<Eigen::Index>(L) * n_p * n_w,
                                              extended.cols)};
    for (int i = 0; i < L; ++i) {
        const auto base = static_cast<Eigen::Index>(i) * block;
        parts.plain.middleRows(static_cast<Eigen::Index>(i) * n_w, n_w) =
            extended.data.middleRows(base, n_w);
        parts.kron.middleRows(static_cast<Eigen::Index>(i) * n_p * n_w, n_p * n_w) =
            extended.data.middleRows(base + n_w, static_cast<Eigen::Index>(n_p) * n_w);
    }
    return parts;
}

}  // namespace lpvdd
