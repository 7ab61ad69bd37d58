#include "lpvdd/json_io.hpp"

#include <fstream>

#include "lpvdd/errors.hpp"

namespace lpvdd {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidFormat, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

double number(const Json& v, const char* what) {
    if (!v.is_number()) bad(std::string(what) + " must be a number");
    return v.get<double>();
}

std::vector<CoeffMatrix> matrix_list(const Json& j, int count, int rows, int cols, int n_p,
                                     const char* key) {
    if (!j.is_array() || static_cast<int>(j.size()) != count) {
        bad(std::string("field \"") + key + "\" must list " + std::to_string(count) + " matrices");
    }
    std::vector<CoeffMatrix> out;
    for (const auto& m : j) out.push_back(coeff_matrix_from_json(m, rows, cols, n_p));
    return out;
}

void require_valid(const ValidationReport& report) {
    if (report.empty()) return;
    std::string msg = "invalid model:";
    for (const auto& issue : report) msg += " [" + issue.kind + "] " + issue.message + ";";
    throw Error(Errc::InvalidModel, msg);
}

}  // namespace

Json to_json(const PolyCoeff& c) {
    Json terms = Json::array();
    for (const auto& t : c.terms()) {
        Json vars = Json::array();
        for (const auto& vp : t.monomial) {
            vars.push_back({{"comp", vp.var.component}, {"offset", vp.var.offset}, {"power", vp.power}});
        }
        terms.push_back({{"coeff", t.coeff}, {"vars", std::move(vars)}});
    }
    return terms;
}

PolyCoeff poly_from_json(const Json& j, int n_p) {
    if (!j.is_array()) bad("coefficient entry must be a list of terms");
    std::vector<Term> terms;
    for (const auto& jt : j) {
        Term t;
        t.coeff = number(field(jt, "coeff"), "term coeff");
        const Json& vars = field(jt, "vars");
        if (!vars.is_array()) bad("term vars must be a list");
        for (const auto& jv : vars) {
            t.monomial.push_back(
                VarPower{{int_field(jv, "comp"), int_field(jv, "offset")}, int_field(jv, "power")});
        }
        terms.push_back(std::move(t));
    }
    try {
        return PolyCoeff(n_p, std::move(terms));
    } catch (const Error& e) {
        bad(e.what());
    }
}

Json to_json(const CoeffMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CoeffMatrix coeff_matrix_from_json(const Json& j, int rows, int cols, int n_p) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) {
        bad("matrix must have " + std::to_string(rows) + " rows");
    }
    CoeffMatrix m(rows, cols, n_p);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            bad("matrix row must have " + std::to_string(cols) + " entries");
        }
        for (int k = 0; k < cols; ++k) m.set(i, k, poly_from_json(row[k], n_p));
    }
    return m;
}

Json to_json(const LpvSsModel& model) {
    return {{"kind", "ss"},         {"n_x", model.n_x},     {"n_u", model.n_u},
            {"n_y", model.n_y},     {"n_p", model.n_p},     {"A", to_json(model.A)},
            {"B", to_json(model.B)}, {"C", to_json(model.C)}, {"D", to_json(model.D)}};
}

Json to_json(const LpvIoModel& model) {
    Json a = Json::array();
    for (const auto& m : model.a) a.push_back(to_json(m));
    Json b = Json::array();
    for (const auto& m : model.b) b.push_back(to_json(m));
    return {{"kind", "io"},     {"n_u", model.n_u}, {"n_y", model.n_y}, {"n_p", model.n_p},
            {"n_a", model.n_a}, {"n_b", model.n_b}, {"a", std::move(a)}, {"b", std::move(b)}};
}

AnyModel model_from_json(const Json& j) {
    const Json& kind = field(j, "kind");
    if (kind == "ss") {
        LpvSsModel m;
        m.n_x = int_field(j, "n_x");
        m.n_u = int_field(j, "n_u");
        m.n_y = int_field(j, "n_y");
        m.n_p = int_field(j, "n_p");
        if (m.n_x < 0 || m.n_u < 0 || m.n_y < 0 || m.n_p < 0) bad("negative dimension");
        m.A = coeff_matrix_from_json(field(j, "A"), m.n_x, m.n_x, m.n_p);
        m.B = coeff_matrix_from_json(field(j, "B"), m.n_x, m.n_u, m.n_p);
        m.C = coeff_matrix_from_json(field(j, "C"), m.n_y, m.n_x, m.n_p);
        m.D = coeff_matrix_from_json(field(j, "D"), m.n_y, m.n_u, m.n_p);
        require_valid(validate(m));
        return m;
    }
    if (kind == "io") {
        LpvIoModel m;
        m.n_u = int_field(j, "n_u");
        m.n_y = int_field(j, "n_y");
        m.n_p = int_field(j, "n_p");
        m.n_a = int_field(j, "n_a");
        m.n_b = int_field(j, "n_b");
        if (m.n_u < 0 || m.n_y < 0 || m.n_p < 0 || m.n_a < 0 || m.n_b < 0) bad("negative dimension");
        m.a = matrix_list(field(j, "a"), m.n_a, m.n_y, m.n_y, m.n_p, "a");
        m.b = matrix_list(field(j, "b"), m.n_b, m.n_y, m.n_u, m.n_p, "b");
        require_valid(validate(m));
        return m;
    }
    bad("model kind must be \"ss\" or \"io\"");
}

AnyModel load_model(const std::string& source) {
    if (source == "builtin:verhoek") return example_verhoek();
    if (source.rfind("builtin:", 0) == 0) bad("unknown builtin model " + source);
    return model_from_json(read_json_file(source));
}

Json to_json(const Trajectory& w) {
    Json samples = Json::array();
    for (int k = 0; k < w.length(); ++k) {
        Json s = Json::array();
        for (int c = 0; c < w.dim(); ++c) s.push_back(w.samples()(c, k));
        samples.push_back(std::move(s));
    }
    return {{"t_start", w.t_start()}, {"samples", std::move(samples)}};
}

Trajectory trajectory_from_json(const Json& j) {
    const int t_start = int_field(j, "t_start");
    const Json& samples = field(j, "samples");
    if (!samples.is_array() || samples.empty()) bad("trajectory needs at least one sample");
    const auto dim = samples.front().is_array() ? samples.front().size() : 0;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(samples.size()));
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (!samples[k].is_array() || samples[k].size() != dim) bad("ragged trajectory samples");
        for (std::size_t c = 0; c < dim; ++c) {
            m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k)) =
                number(samples[k][c], "sample");
        }
    }
    return {t_start, std::move(m)};
}

Json to_json(const DataRecord& data) {
    return {{"u", to_json(data.u)},
            {"p", to_json(data.p)},
            {"y", to_json(data.y)},
            {"provenance", data.provenance}};
}

DataRecord data_record_from_json(const Json& j) {
    std::string provenance;
    if (j.is_object() && j.contains("provenance") && j["provenance"].is_string()) {
        provenance = j["provenance"].get<std::string>();
    }
    return {trajectory_from_json(field(j, "u")), trajectory_from_json(field(j, "p")),
            trajectory_from_json(field(j, "y")), provenance};
}

Json to_json(const ValidationReport& report) {
    Json out = Json::array();
    for (const auto& issue : report) out.push_back({{"kind", issue.kind}, {"message", issue.message}});
    return out;
}

Json to_json(const StructuralRankReport& r) {
    return {{"tested_rank", r.tested_rank}, {"required_rank", r.required_rank},
            {"num_trials", r.num_trials},   {"pass_count", r.pass_count},
            {"tolerance", r.tolerance},     {"verdict", r.verdict}};
}

Json to_json(const MinimalityReport& r) {
    return {{"observability", to_json(r.observability)},
            {"reachability", to_json(r.reachability)},
            {"minimal", r.minimal}};
}

Json to_json(const PeReport& r) {
    Json out = {{"order_L", r.order_L},
                {"extended_input_rank", r.extended_input_rank},
                {"required", r.required}};
    out["hankel_rank"] = r.hankel_rank ? Json(*r.hankel_rank) : Json(nullptr);
    out["hankel_rank_expected"] = r.hankel_rank_expected ? Json(*r.hankel_rank_expected) : Json(nullptr);
    out["verdict"] = r.verdict;
    out["singular_values"] = r.singular_values;
    return out;
}

Json to_json(const PredictionResult& r) {
    Json g = Json::array();
    for (const auto& v : r.g) g.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    return {{"y_r", to_json(r.y_r)},
            {"g", std::move(g)},
            {"residual", r.residual},
            {"output_uniqueness_margin", r.output_uniqueness_margin},
            {"null_leakage", r.null_leakage},
            {"verdict", std::string(to_string(r.verdict))},
            {"window", r.window},
            {"pe_rank", r.pe_rank},
            {"pe_required", r.pe_required},
            {"warnings", r.warnings}};
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(path.string() + ": " + e.what());
    }
}

}  // namespace lpvdd
