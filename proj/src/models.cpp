#include "lpvdd/models.hpp"

#include "lpvdd/errors.hpp"

namespace lpvdd {

namespace {

void check_shape(ValidationReport& report, const CoeffMatrix& m, const std::string& name, int rows,
                 int cols, int n_p) {
    if (m.rows() != rows || m.cols() != cols) {
        report.push_back({"dimension", name + " is " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()) + ", expected " +
                                           std::to_string(rows) + "x" + std::to_string(cols)});
    }
    if (m.n_p() != n_p) {
        report.push_back({"dimension", name + " has n_p " + std::to_string(m.n_p()) +
                                           ", expected " + std::to_string(n_p)});
    }
}

void check_locality(ValidationReport& report, const CoeffMatrix& m, const std::string& name,
                    int offset) {
    for (const auto& e : m.entries()) {
        if (!e.uses_only_offset(offset)) {
            report.push_back({"offset_locality", name + " must depend only on p(k" +
                                                     std::to_string(offset) + ")"});
            return;
        }
    }
}

}  // namespace

bool LpvIoModel::is_affine() const {
    for (const auto& m : a) {
        if (m.degree() > 1) return false;
    }
    for (const auto& m : b) {
        if (m.degree() > 1) return false;
    }
    return true;
}

ValidationReport validate(const LpvSsModel& m) {
    ValidationReport report;
    if (m.n_x < 1 || m.n_u < 0 || m.n_y < 1 || m.n_p < 0) {
        report.push_back({"dimension", "need n_x >= 1, n_y >= 1, n_u >= 0, n_p >= 0"});
        return report;
    }
    check_shape(report, m.A, "A", m.n_x, m.n_x, m.n_p);
    check_shape(report, m.B, "B", m.n_x, m.n_u, m.n_p);
    check_shape(report, m.C, "C", m.n_y, m.n_x, m.n_p);
    check_shape(report, m.D, "D", m.n_y, m.n_u, m.n_p);
    return report;
}

ValidationReport validate(const LpvIoModel& m) {
    ValidationReport report;
    if (m.n_u < 1 || m.n_y < 1 || m.n_p < 0) {
        report.push_back({"dimension", "need n_u >= 1, n_y >= 1, n_p >= 0"});
    }
    if (!(m.n_a >= m.n_b && m.n_b >= 1)) {
        report.push_back({"dimension", "need n_a >= n_b >= 1, got n_a=" + std::to_string(m.n_a) +
                                           ", n_b=" + std::to_string(m.n_b)});
    }
    if (static_cast<int>(m.a.size()) != m.n_a) {
        report.push_back({"dimension", "expected " + std::to_string(m.n_a) + " a-coefficients"});
    }
    if (static_cast<int>(m.b.size()) != m.n_b) {
        report.push_back({"dimension", "expected " + std::to_string(m.n_b) + " b-coefficients"});
    }
    if (!report.empty()) return report;
    for (int i = 0; i < m.n_a; ++i) {
        const std::string name = "a" + std::to_string(i + 1);
        check_shape(report, m.a[i], name, m.n_y, m.n_y, m.n_p);
        check_locality(report, m.a[i], name, -(i + 1));
    }
    for (int j = 0; j < m.n_b; ++j) {
        const std::string name = "b" + std::to_string(j + 1);
        check_shape(report, m.b[j], name, m.n_y, m.n_u, m.n_p);
        check_locality(report, m.b[j], name, -(j + 1));
    }
    if (m.b.back().is_zero()) {
        report.push_back({"zero_leading_coefficient",
                          "b" + std::to_string(m.n_b) + " is identically zero"});
    }
    return report;
}

ValidationReport validate(const KernelRep& kernel) {
    ValidationReport report;
    if (kernel.r.empty()) {
        report.push_back({"dimension", "kernel has no coefficients"});
        return report;
    }
    const auto& first = kernel.r.front();
    for (std::size_t i = 0; i < kernel.r.size(); ++i) {
        check_shape(report, kernel.r[i], "r" + std::to_string(i), first.rows(), first.cols(),
                    first.n_p());
    }
    if (kernel.r.back().is_zero()) {
        report.push_back({"zero_leading_coefficient",
                          "r" + std::to_string(kernel.order()) + " is identically zero"});
    }
    return report;
}

LpvIoModel example_verhoek() {
    constexpr int n_p = 2;
    // Rows: {c0, c1, c2} for c0 + c1 p1(k-i) + c2 p2(k-i).
    const double a_rows[2][3] = {{1, -0.5, -0.1}, {0.5, -0.7, -0.1}};
    const double b_rows[2][3] = {{0.5, -0.4, 0.01}, {0.2, -0.3, -0.2}};
    auto affine = [](const double (&c)[3], int lag) {
        CoeffMatrix m(1, 1, n_p);
        m.set(0, 0,
              PolyCoeff(n_p, {Term{c[0], {}}, Term{c[1], {VarPower{{1, -lag}, 1}}},
                              Term{c[2], {VarPower{{2, -lag}, 1}}}}));
        return m;
    };
    LpvIoModel model;
    model.n_u = 1;
    model.n_y = 1;
    model.n_p = n_p;
    model.n_a = 2;
    model.n_b = 2;
    for (int i = 0; i < 2; ++i) {
        model.a.push_back(affine(a_rows[i], i + 1));
        model.b.push_back(affine(b_rows[i], i + 1));
    }
    return model;
}

KernelRep io_to_kernel(const LpvIoModel& model) {
    if (const auto report = validate(model); !report.empty()) {
        throw Error(Errc::InvalidModel, report.front().message);
    }
    const int na = model.n_a;
    const int nu = model.n_u;
    const int ny = model.n_y;
    KernelRep kernel;
    kernel.r.reserve(static_cast<std::size_t>(na) + 1);
    for (int m = 0; m <= na; ++m) {
        const int lag = na - m;
        CoeffMatrix rm(ny, nu + ny, model.n_p);
        if (lag >= 1 && lag <= model.n_b) {
            rm.set_block(0, 0, mat_scale(mat_shift(model.b[lag - 1], na), -1.0));
        }
        if (lag == 0) {
            rm.set_block(0, nu, CoeffMatrix::identity(ny, model.n_p));
        } else {
            rm.set_block(0, nu, mat_shift(model.a[lag - 1], na));
        }
        kernel.r.push_back(std::move(rm));
    }
    return kernel;
}

Eigen::VectorXd kernel_residual(const KernelRep& kernel, const Trajectory& w, const Trajectory& p,
                                int k) {
    if (w.dim() != kernel.n_w()) {
        throw Error(Errc::DimensionMismatch, "kernel_residual: signal dimension mismatch");
    }
    Eigen::VectorXd res = Eigen::VectorXd::Zero(kernel.rows());
    for (int i = 0; i <= kernel.order(); ++i) {
        res += mat_eval(kernel.r[i], p, k) * w.at(k + i);
    }
    return res;
}

}  // namespace lpvdd
