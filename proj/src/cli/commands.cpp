#include "lpvdd/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpvdd/errors.hpp"
#include "lpvdd/rng.hpp"
#include "lpvdd/simulation.hpp"

namespace lpvdd::cli {

namespace fs = std::filesystem;

namespace {

// Random streams per seed.
constexpr std::uint64_t kStreamDataU = 1;
constexpr std::uint64_t kStreamDataP = 2;
constexpr std::uint64_t kStreamQueryU = 3;
constexpr std::uint64_t kStreamQueryP = 4;
constexpr std::uint64_t kStreamQueryInit = 5;

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::InvalidFormat, what); }

Trajectory draw(Rng rng, const std::vector<Box>& boxes, int t_start, int length) {
    const int dim = static_cast<int>(boxes.size());
    Eigen::MatrixXd s(dim, length);
    for (int k = 0; k < length; ++k) {
        for (int c = 0; c < dim; ++c) s(c, k) = rng.uniform(boxes[c].lo, boxes[c].hi);
    }
    return {t_start, std::move(s)};
}

std::vector<Box> sched_boxes(const ExperimentConfig& config, int n_p) {
    if (config.sched_box.empty()) return std::vector<Box>(n_p);
    if (config.sched_box.size() == 1) return std::vector<Box>(n_p, config.sched_box.front());
    if (static_cast<int>(config.sched_box.size()) != n_p) {
        config_error("sched_box lists " + std::to_string(config.sched_box.size()) +
                     " boxes for n_p = " + std::to_string(n_p));
    }
    return config.sched_box;
}

struct Dims {
    int n_u, n_y, n_p;
};

Dims dims_of(const AnyModel& model) {
    return std::visit([](const auto& m) { return Dims{m.n_u, m.n_y, m.n_p}; }, model);
}

std::string model_kind(const AnyModel& model) {
    return std::holds_alternative<LpvSsModel>(model) ? "ss" : "io";
}

// Everything is rendered first, then written to temporaries and renamed into place.
using FileSet = std::vector<std::pair<std::string, std::string>>;

void write_files(const fs::path& dir, const FileSet& files) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) config_error("cannot create " + dir.string() + ": " + ec.message());
    std::vector<fs::path> temps;
    const auto cleanup = [&temps] {
        std::error_code ignored;
        for (const auto& t : temps) fs::remove(t, ignored);
    };
    for (const auto& [name, text] : files) {
        const fs::path tmp = dir / (name + ".tmp");
        temps.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        out.close();
        if (!out) {
            cleanup();
            config_error("cannot write " + tmp.string());
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        fs::rename(temps[i], dir / files[i].first, ec);
        if (ec) {
            cleanup();
            config_error("cannot rename " + temps[i].string() + ": " + ec.message());
        }
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json meta_json(const ExperimentConfig& config, const AnyModel& model) {
    Json boxes = Json::array();
    for (const auto& b : sched_boxes(config, dims_of(model).n_p)) boxes.push_back({b.lo, b.hi});
    return {{"rng", std::string(Rng::kName)},
            {"seed", config.seed},
            {"model", config.model},
            {"kind", model_kind(model)},
            {"T", config.T},
            {"input_box", {config.input_box.lo, config.input_box.hi}},
            {"sched_box", std::move(boxes)}};
}

std::string plot_csv(const Trajectory& truth, const Trajectory& pred) {
    std::ostringstream out;
    out << "t";
    const bool single = truth.dim() == 1;
    for (int c = 1; c <= truth.dim(); ++c) out << ",y_true" << (single ? "" : std::to_string(c));
    for (int c = 1; c <= pred.dim(); ++c) out << ",y_pred" << (single ? "" : std::to_string(c));
    out << "\n";
    for (int k = truth.t_start(); k <= truth.t_end(); ++k) {
        out << k;
        for (int c = 0; c < truth.dim(); ++c) out << ',' << format_double(truth.value(k, c));
        for (int c = 0; c < pred.dim(); ++c) out << ',' << format_double(pred.value(k, c));
        out << "\n";
    }
    return out.str();
}

double max_abs_diff(const Trajectory& a, const Trajectory& b) {
    return (a.samples() - b.samples()).cwiseAbs().maxCoeff();
}

DataRecord load_data(const fs::path& dir) {
    if (!fs::exists(dir / "u.csv") && fs::exists(dir / "data.json")) {
        return data_record_from_json(read_json_file(dir / "data.json"));
    }
    return {read_csv(dir / "u.csv"), read_csv(dir / "p.csv"), read_csv(dir / "y.csv"),
            dir.string()};
}

void require_dims(const DataRecord& data, const Dims& d) {
    if (data.n_u() != d.n_u || data.n_y() != d.n_y || data.n_p() != d.n_p) {
        throw Error(Errc::DimensionMismatch, "data dimensions (n_u, n_p, n_y) = (" +
                                                 std::to_string(data.n_u()) + ", " +
                                                 std::to_string(data.n_p()) + ", " +
                                                 std::to_string(data.n_y()) +
                                                 ") do not match the model");
    }
}

PredictOptions predict_options(const ExperimentConfig& config) {
    PredictOptions o;
    o.tol = config.tol;
    o.margin_tol = config.margin_tol;
    o.window = config.L.value_or(0);
    return o;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Ok: return kOk;
        case Verdict::Ambiguous: return kAmbiguous;
        case Verdict::Infeasible: return kInfeasible;
    }
    return kNumericFailure;
}

std::string prediction_report(const PredictionResult& r, std::optional<double> max_error) {
    std::ostringstream out;
    out << "verdict: " << to_string(r.verdict) << "\n"
        << "window length: " << r.window << " (" << r.g.size() << " solve"
        << (r.g.size() == 1 ? "" : "s") << ")\n"
        << "residual: " << r.residual << "\n"
        << "uniqueness margin: " << r.output_uniqueness_margin << "\n"
        << "null leakage: " << r.null_leakage << "\n"
        << "extended input rank: " << r.pe_rank << " / " << r.pe_required << "\n";
    if (max_error) out << "max error vs truth: " << *max_error << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    return out.str();
}

Json prediction_summary(const std::string& command, const PredictionResult& r,
                        std::optional<double> max_error) {
    Json s = {{"command", command},
              {"status", std::string(to_string(r.verdict))},
              {"exit_code", verdict_exit(r.verdict)},
              {"window", r.window},
              {"residual", r.residual},
              {"output_uniqueness_margin", r.output_uniqueness_margin},
              {"pe_rank", r.pe_rank}};
    if (max_error) s["max_error"] = *max_error;
    return s;
}

void add_prediction_files(FileSet& files, const ExperimentConfig& config, const PredictionResult& r,
                          const std::optional<Trajectory>& truth) {
    Json j = to_json(r);
    if (truth) {
        j["max_error"] = max_abs_diff(*truth, r.y_r);
        if (config.format == "json") j["plot"] = {{"truth", to_json(*truth)}, {"predicted", to_json(r.y_r)}};
    }
    files.emplace_back("prediction.json", dump(j));
    if (config.format == "csv") {
        files.emplace_back("y_r.csv", format_csv(r.y_r));
        if (truth) files.emplace_back("plot.csv", plot_csv(*truth, r.y_r));
    }
}

template <class Fn>
CommandOutcome guarded(const char* command, Fn&& fn) {
    const auto started = std::chrono::steady_clock::now();
    CommandOutcome out;
    const auto fail = [&](int code, const std::string& kind, const std::string& message) {
        out.exit_code = code;
        out.summary = {{"command", command},
                       {"status", "error"},
                       {"exit_code", code},
                       {"error", kind},
                       {"message", message}};
        out.report = std::string("error: ") + message + "\n";
    };
    try {
        out = fn();
    } catch (const Error& e) {
        const bool numeric = e.code() == Errc::RankDeficientObservability ||
                             e.code() == Errc::InconsistentTrajectory;
        fail(numeric ? kNumericFailure : kConfigError, std::string(to_string(e.code())), e.what());
    } catch (const fs::filesystem_error& e) {
        fail(kConfigError, "Filesystem", e.what());
    } catch (const std::exception& e) {
        fail(kNumericFailure, "Numeric", e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    std::ostringstream timing;
    timing << command << " finished in " << ms << " ms\n";
    out.report += timing.str();
    return out;
}

Box parse_box(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) config_error("box \"" + text + "\" must read lo,hi");
    try {
        std::size_t used = 0;
        const std::string lo = text.substr(0, comma);
        const std::string hi = text.substr(comma + 1);
        Box b{std::stod(lo, &used), 0.0};
        if (used != lo.size()) throw std::invalid_argument(lo);
        b.hi = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(hi);
        return b;
    } catch (const std::logic_error&) {
        config_error("box \"" + text + "\" must read lo,hi");
    }
}

Box box_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        config_error("box must be [lo, hi]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

void apply_config_json(ExperimentConfig& c, const Json& j) {
    if (!j.is_object()) config_error("config must be a JSON object");
    const auto get_int = [&j](const char* key, int& dst) {
        if (!j.contains(key)) return;
        if (!j[key].is_number_integer()) config_error(std::string(key) + " must be an integer");
        dst = j[key].get<int>();
    };
    const auto get_num = [&j](const char* key, double& dst) {
        if (!j.contains(key)) return;
        if (!j[key].is_number()) config_error(std::string(key) + " must be a number");
        dst = j[key].get<double>();
    };
    const auto get_str = [&j](const char* key, auto& dst) {
        if (!j.contains(key)) return;
        if (!j[key].is_string()) config_error(std::string(key) + " must be a string");
        dst = j[key].get<std::string>();
    };
    get_str("model", c.model);
    get_int("T", c.T);
    get_int("T_ini", c.T_ini);
    get_int("T_r", c.T_r);
    if (j.contains("L")) {
        if (j["L"].is_null()) {
            c.L.reset();
        } else {
            int L = 0;
            get_int("L", L);
            c.L = L;
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) config_error("seed must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("input_box")) c.input_box = box_from_json(j["input_box"]);
    if (j.contains("sched_box")) {
        const Json& sb = j["sched_box"];
        if (!sb.is_array()) config_error("sched_box must be a list of [lo, hi] boxes");
        c.sched_box.clear();
        if (sb.size() == 2 && sb[0].is_number()) {
            c.sched_box.push_back(box_from_json(sb));
        } else {
            for (const auto& b : sb) c.sched_box.push_back(box_from_json(b));
        }
    }
    get_num("tol", c.tol);
    get_num("margin_tol", c.margin_tol);
    get_str("format", c.format);
    get_str("data_dir", c.data_dir);
    get_str("query_dir", c.query_dir);
    get_str("out_dir", c.out_dir);
}

void check_config(const ExperimentConfig& c, bool need_horizon) {
    if (c.T < 1) config_error("T must be positive, got " + std::to_string(c.T));
    if (c.T_ini < 1) config_error("T_ini must be positive");
    if (c.T_r < 1) config_error("T_r must be positive");
    if (c.L && (*c.L <= c.T_ini || *c.L > c.T_ini + c.T_r)) {
        config_error("L must lie in [T_ini + 1, T_ini + T_r]");
    }
    if (need_horizon && c.T < c.T_ini + c.T_r) config_error("T must be at least T_ini + T_r");
    const auto good = [](const Box& b) { return std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo <= b.hi; };
    if (!good(c.input_box)) config_error("input_box must satisfy lo <= hi");
    for (const auto& b : c.sched_box) {
        if (!good(b)) config_error("sched_box entries must satisfy lo <= hi");
    }
    if (!(c.tol > 0.0) || !(c.margin_tol > 0.0)) config_error("tolerances must be positive");
    if (c.format != "csv" && c.format != "json") config_error("format must be csv or json");
}

SimulatedData simulate_data(const AnyModel& model, const ExperimentConfig& config) {
    const Dims d = dims_of(model);
    const std::vector<Box> u_box(d.n_u, config.input_box);
    const std::vector<Box> p_box = sched_boxes(config, d.n_p);
    const Rng root(config.seed);
    if (const auto* io = std::get_if<LpvIoModel>(&model)) {
        const int lead = io->n_a;
        const Trajectory u = draw(root.split(kStreamDataU), u_box, 1 - lead, config.T + lead);
        const Trajectory p = draw(root.split(kStreamDataP), p_box, 1 - lead, config.T + lead);
        const Trajectory y = simulate_io(*io, u, p, Trajectory::zeros(d.n_y, 1 - lead, lead));
        return {DataRecord(u.window(1, config.T), p.window(1, config.T), y.window(1, config.T),
                           "simulated " + config.model + " seed " + std::to_string(config.seed)),
                std::nullopt};
    }
    const auto& ss = std::get<LpvSsModel>(model);
    const Trajectory u = draw(root.split(kStreamDataU), u_box, 1, config.T);
    const Trajectory p = draw(root.split(kStreamDataP), p_box, 1, config.T);
    SimResult sim = simulate_ss(ss, Eigen::VectorXd::Zero(ss.n_x), u, p);
    return {DataRecord(u, p, sim.y,
                       "simulated " + config.model + " seed " + std::to_string(config.seed)),
            std::move(sim.x)};
}

QueryCase simulate_query(const AnyModel& model, const ExperimentConfig& config) {
    const Dims d = dims_of(model);
    const int horizon = config.T_ini + config.T_r;
    const std::vector<Box> u_box(d.n_u, config.input_box);
    const std::vector<Box> p_box = sched_boxes(config, d.n_p);
    const Rng root(config.seed);
    Trajectory u = Trajectory::zeros(d.n_u, 1, 1);
    Trajectory p = u;
    Trajectory y = u;
    if (const auto* io = std::get_if<LpvIoModel>(&model)) {
        const int lead = io->n_a;
        const Trajectory u_full = draw(root.split(kStreamQueryU), u_box, 1 - lead, horizon + lead);
        const Trajectory p_full = draw(root.split(kStreamQueryP), p_box, 1 - lead, horizon + lead);
        const Trajectory y_init =
            draw(root.split(kStreamQueryInit), std::vector<Box>(d.n_y), 1 - lead, lead);
        y = simulate_io(*io, u_full, p_full, y_init).window(1, horizon);
        u = u_full.window(1, horizon);
        p = p_full.window(1, horizon);
    } else {
        const auto& ss = std::get<LpvSsModel>(model);
        u = draw(root.split(kStreamQueryU), u_box, 1, horizon);
        p = draw(root.split(kStreamQueryP), p_box, 1, horizon);
        const Trajectory x0 = draw(root.split(kStreamQueryInit), std::vector<Box>(ss.n_x), 1, 1);
        y = simulate_ss(ss, x0.samples().col(0), u, p).y;
    }
    const int t_ini = config.T_ini;
    return {PredictionQuery{u.window(1, t_ini), p.window(1, t_ini), y.window(1, t_ini),
                            u.window(t_ini + 1, horizon), p.window(t_ini + 1, horizon)},
            y.window(t_ini + 1, horizon)};
}

CommandOutcome cmd_simulate(const ExperimentConfig& config) {
    return guarded("simulate", [&] {
        check_config(config, false);
        const AnyModel model = load_model(config.model);
        const SimulatedData sim = simulate_data(model, config);
        FileSet files;
        if (config.format == "csv") {
            files.emplace_back("u.csv", format_csv(sim.data.u));
            files.emplace_back("p.csv", format_csv(sim.data.p));
            files.emplace_back("y.csv", format_csv(sim.data.y));
            if (sim.x) files.emplace_back("x.csv", format_csv(*sim.x));
        } else {
            Json bundle = to_json(sim.data);
            if (sim.x) bundle["x"] = to_json(*sim.x);
            files.emplace_back("data.json", dump(bundle));
        }
        files.emplace_back("meta.json", dump(meta_json(config, model)));
        write_files(config.out_dir, files);

        CommandOutcome out;
        Json names = Json::array();
        for (const auto& f : files) names.push_back(f.first);
        out.summary = {{"command", "simulate"}, {"status", "ok"},      {"exit_code", kOk},
                       {"T", config.T},         {"seed", config.seed}, {"files", std::move(names)}};
        out.report = "simulated " + config.model + " over [1, " + std::to_string(config.T) +
                     "] into " + config.out_dir.string() + "\n";
        return out;
    });
}

CommandOutcome cmd_predict(const ExperimentConfig& config) {
    return guarded("predict", [&] {
        check_config(config, false);
        const DataRecord data = load_data(config.data_dir);
        const Trajectory u = read_csv(config.query_dir / "u.csv");
        const Trajectory p = read_csv(config.query_dir / "p.csv");
        const Trajectory y = read_csv(config.query_dir / "y.csv");
        const int t_ini = config.T_ini;
        if (u.t_start() != p.t_start() || u.length() != p.length() || y.t_start() != u.t_start()) {
            throw Error(Errc::IntervalMismatch, "query u, p and y must start together and u, p share a length");
        }
        if (u.length() <= t_ini) config_error("query covers no samples after the initial window");
        if (y.length() < t_ini) config_error("query y is shorter than T_ini");
        const int t0 = u.t_start();
        const PredictionQuery query{u.window(t0, t0 + t_ini - 1), p.window(t0, t0 + t_ini - 1),
                                    y.window(t0, t0 + t_ini - 1), u.window(t0 + t_ini, u.t_end()),
                                    p.window(t0 + t_ini, p.t_end())};
        const PredictionResult r = predict(data, query, predict_options(config));

        std::optional<Trajectory> truth;
        if (y.length() >= u.length()) truth = y.window(t0 + t_ini, u.t_end());
        std::optional<double> max_error;
        if (truth) max_error = max_abs_diff(*truth, r.y_r);

        FileSet files;
        add_prediction_files(files, config, r, truth);
        write_files(config.out_dir, files);
        return CommandOutcome{verdict_exit(r.verdict), prediction_summary("predict", r, max_error),
                              prediction_report(r, max_error)};
    });
}

CommandOutcome cmd_check(const ExperimentConfig& config) {
    return guarded("check", [&] {
        check_config(config, false);
        const AnyModel model = load_model(config.model);
        const DataRecord data = load_data(config.data_dir);
        require_dims(data, dims_of(model));
        const int L = config.L.value_or(config.T_ini + config.T_r);

        Json report;
        PeReport pe;
        if (const auto* ss = std::get_if<LpvSsModel>(&model)) {
            pe = check_pe(data.u, data.p, data.y, L, ss->n_x);
            StructuralRankOptions opts;
            opts.seed = config.seed;
            report["pe"] = pe.verdict;
            report["pe_report"] = to_json(pe);
            report["structural"] = to_json(minimality_report(*ss, opts));
        } else {
            const auto& io = std::get<LpvIoModel>(model);
            pe = check_pe(data.u, data.p, data.y, L, io.n_a * io.n_y);
            report["pe"] = pe.verdict;
            report["pe_report"] = to_json(pe);
            report["lag"] = {{"n_a", io.n_a},
                             {"note", "structural checks need a state-space model"}};
        }
        write_files(config.out_dir, {{"check.json", dump(report)}});

        CommandOutcome out;
        out.summary = {{"command", "check"},
                       {"status", "ok"},
                       {"exit_code", kOk},
                       {"pe", pe.verdict},
                       {"extended_input_rank", pe.extended_input_rank},
                       {"required", pe.required}};
        std::ostringstream text;
        text << "order L = " << L << ": extended input rank " << pe.extended_input_rank << " / "
             << pe.required << (pe.verdict ? " (persistently exciting)" : " (not exciting)") << "\n";
        if (pe.hankel_rank) {
            text << "extended signal Hankel rank " << *pe.hankel_rank << ", expected "
                 << *pe.hankel_rank_expected << "\n";
        }
        out.report = text.str();
        return out;
    });
}

CommandOutcome cmd_experiment(const ExperimentConfig& config) {
    return guarded("experiment", [&] {
        check_config(config, true);
        const AnyModel model = load_model(config.model);
        const SimulatedData sim = simulate_data(model, config);
        const QueryCase qc = simulate_query(model, config);
        const PredictionResult r = predict(sim.data, qc.query, predict_options(config));
        const double max_error = max_abs_diff(qc.y_truth, r.y_r);

        FileSet files;
        if (config.format == "csv") {
            files.emplace_back("u.csv", format_csv(sim.data.u));
            files.emplace_back("p.csv", format_csv(sim.data.p));
            files.emplace_back("y.csv", format_csv(sim.data.y));
        } else {
            files.emplace_back("data.json", dump(to_json(sim.data)));
        }
        const Json query = {{"u", to_json(concat(qc.query.u_ini, qc.query.u_r))},
                            {"p", to_json(concat(qc.query.p_ini, qc.query.p_r))},
                            {"y", to_json(concat(qc.query.y_ini, qc.y_truth))},
                            {"T_ini", config.T_ini}};
        files.emplace_back("query.json", dump(query));
        files.emplace_back("meta.json", dump(meta_json(config, model)));
        add_prediction_files(files, config, r, qc.y_truth);
        write_files(config.out_dir, files);
        return CommandOutcome{verdict_exit(r.verdict), prediction_summary("experiment", r, max_error),
                              prediction_report(r, max_error)};
    });
}

int run(int argc, char** argv) {
    CLI::App app{"Data-driven simulation and prediction for LPV systems"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, model, data_dir, query_dir, out_dir, format, input_box, sched_box;
    std::uint64_t seed = 0;
    int T = 0, T_ini = 0, T_r = 0, L = 0;
    double tol = 0.0, margin_tol = 0.0;
    auto* o_config = app.add_option("--config", config_path, "JSON config file; flags override it");
    auto* o_model = app.add_option("--model", model, "model JSON path or builtin:verhoek");
    auto* o_data = app.add_option("--data-dir", data_dir, "directory with u.csv, p.csv, y.csv or data.json");
    auto* o_query = app.add_option("--query-dir", query_dir, "directory with the query u.csv, p.csv, y.csv");
    auto* o_out = app.add_option("--out-dir", out_dir, "output directory");
    auto* o_seed = app.add_option("--seed", seed, "random seed");
    auto* o_T = app.add_option("--T", T, "data length");
    auto* o_T_ini = app.add_option("--T-ini", T_ini, "initial window length");
    auto* o_T_r = app.add_option("--T-r", T_r, "prediction horizon");
    auto* o_L = app.add_option("--L", L, "window length per solve (default: automatic)");
    auto* o_tol = app.add_option("--tol", tol, "residual tolerance");
    auto* o_margin = app.add_option("--margin-tol", margin_tol, "uniqueness margin tolerance");
    auto* o_format = app.add_option("--format", format, "artifact format")
                         ->check(CLI::IsMember({"csv", "json"}));
    auto* o_ibox = app.add_option("--input-box", input_box, "input range lo,hi");
    auto* o_sbox = app.add_option("--sched-box", sched_box, "scheduling range lo,hi[;lo,hi...]");

    auto* simulate = app.add_subcommand("simulate", "simulate a model with seeded random signals");
    auto* predict_cmd = app.add_subcommand("predict", "predict outputs of a query from data");
    auto* check = app.add_subcommand("check", "excitation and structural checks on data");
    auto* experiment = app.add_subcommand("experiment", "simulate, predict and compare in one run");

    const auto fail = [](const std::string& message) {
        std::cout << Json{{"status", "error"}, {"exit_code", kConfigError}, {"error", "Config"},
                          {"message", message}}.dump()
                  << "\n";
        std::cerr << "error: " << message << "\n";
        return static_cast<int>(kConfigError);
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail(e.what());
    }

    ExperimentConfig config;
    try {
        if (*o_config) apply_config_json(config, read_json_file(config_path));
        if (*o_model) config.model = model;
        if (*o_data) config.data_dir = data_dir;
        if (*o_query) config.query_dir = query_dir;
        if (*o_out) config.out_dir = out_dir;
        if (*o_seed) config.seed = seed;
        if (*o_T) config.T = T;
        if (*o_T_ini) config.T_ini = T_ini;
        if (*o_T_r) config.T_r = T_r;
        if (*o_L) config.L = L;
        if (*o_tol) config.tol = tol;
        if (*o_margin) config.margin_tol = margin_tol;
        if (*o_format) config.format = format;
        if (*o_ibox) config.input_box = parse_box(input_box);
        if (*o_sbox) {
            config.sched_box.clear();
            std::stringstream parts(sched_box);
            for (std::string part; std::getline(parts, part, ';');) {
                config.sched_box.push_back(parse_box(part));
            }
        }
    } catch (const Error& e) {
        return fail(e.what());
    }

    CommandOutcome out;
    if (*simulate) {
        out = cmd_simulate(config);
    } else if (*predict_cmd) {
        out = cmd_predict(config);
    } else if (*check) {
        out = cmd_check(config);
    } else if (*experiment) {
        out = cmd_experiment(config);
    }
    std::cout << out.summary.dump() << "\n";
    std::cerr << out.report;
    return out.exit_code;
}

}  // namespace lpvdd::cli
