#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpvdd/cli.hpp"
#include "support.hpp"

using namespace lpvdd;
using namespace lpvdd::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path("cli_scratch") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ExperimentConfig sim_config(const fs::path& out, std::uint64_t seed, int T) {
    ExperimentConfig c;
    c.out_dir = out;
    c.seed = seed;
    c.T = T;
    return c;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char ch : text) n += ch == '\n';
    return n;
}

}  // namespace

TEST_CASE("simulate writes deterministic csv files") {
    const fs::path base = scratch("simulate");
    const auto r1 = cmd_simulate(sim_config(base / "a", 1, 40));
    const auto r2 = cmd_simulate(sim_config(base / "b", 1, 40));
    REQUIRE(r1.exit_code == kOk);
    REQUIRE(r2.exit_code == kOk);
    for (const char* f : {"u.csv", "p.csv", "y.csv", "meta.json"}) {
        CHECK(slurp(base / "a" / f) == slurp(base / "b" / f));
    }
    CHECK(count_lines(slurp(base / "a" / "y.csv")) == 41);
    const auto y = read_csv(base / "a" / "y.csv");
    CHECK(y.t_start() == 1);
    CHECK(y.length() == 40);
    CHECK(read_json_file(base / "a" / "meta.json")["rng"] == std::string(Rng::kName));
    CHECK(r1.summary["status"] == "ok");
    CHECK(r1.summary.dump().find('\n') == std::string::npos);

    const auto r3 = cmd_simulate(sim_config(base / "c", 2, 40));
    CHECK(slurp(base / "a" / "u.csv") != slurp(base / "c" / "u.csv"));
}

TEST_CASE("simulate rejects bad configurations") {
    const fs::path base = scratch("bad");
    CHECK(cmd_simulate(sim_config(base / "t0", 1, 0)).exit_code == kConfigError);
    CHECK_FALSE(fs::exists(base / "t0"));
    ExperimentConfig c = sim_config(base / "box", 1, 10);
    c.input_box = {1.0, -1.0};
    CHECK(cmd_simulate(c).exit_code == kConfigError);
    c = sim_config(base / "model", 1, 10);
    c.model = (base / "missing.json").string();
    CHECK(cmd_simulate(c).exit_code == kConfigError);
    c.model = "builtin:nothing";
    CHECK(cmd_simulate(c).exit_code == kConfigError);
}

TEST_CASE("zero input box gives zero output") {
    const fs::path base = scratch("zero");
    ExperimentConfig c = sim_config(base, 1, 20);
    c.input_box = {0.0, 0.0};
    REQUIRE(cmd_simulate(c).exit_code == kOk);
    CHECK(read_csv(base / "y.csv").samples().isZero());
}

TEST_CASE("json format bundles the data") {
    const fs::path base = scratch("json");
    ExperimentConfig c = sim_config(base, 3, 15);
    c.format = "json";
    REQUIRE(cmd_simulate(c).exit_code == kOk);
    const DataRecord d = data_record_from_json(read_json_file(base / "data.json"));
    CHECK(d.length() == 15);
    CHECK(d.n_p() == 2);
}

TEST_CASE("predict end to end") {
    const fs::path base = scratch("predict");
    REQUIRE(cmd_simulate(sim_config(base / "data", 1, 40)).exit_code == kOk);
    REQUIRE(cmd_simulate(sim_config(base / "query", 2, 10)).exit_code == kOk);
    ExperimentConfig c;
    c.data_dir = base / "data";
    c.query_dir = base / "query";
    c.out_dir = base / "out";
    const auto r = cmd_predict(c);
    CHECK(r.exit_code == kOk);
    REQUIRE(r.summary.contains("max_error"));
    CHECK(r.summary["max_error"].get<double>() <= 1e-8);
    const Json pred = read_json_file(base / "out" / "prediction.json");
    CHECK(pred["verdict"] == "ok");
    CHECK(pred["max_error"].get<double>() <= 1e-8);
    CHECK(read_csv(base / "out" / "y_r.csv").t_start() == 4);
    const std::string plot = slurp(base / "out" / "plot.csv");
    CHECK(plot.rfind("t,y_true,y_pred\n", 0) == 0);
    CHECK(count_lines(plot) == 8);

    c.out_dir = base / "out2";
    (void)cmd_predict(c);
    CHECK(slurp(base / "out" / "prediction.json") == slurp(base / "out2" / "prediction.json"));
    CHECK(slurp(base / "out" / "y_r.csv") == slurp(base / "out2" / "y_r.csv"));
}

TEST_CASE("predict exit codes") {
    const fs::path base = scratch("predict_codes");
    ExperimentConfig dead = sim_config(base / "dead", 1, 40);
    dead.input_box = {0.0, 0.0};
    REQUIRE(cmd_simulate(dead).exit_code == kOk);
    REQUIRE(cmd_simulate(sim_config(base / "query", 2, 10)).exit_code == kOk);
    ExperimentConfig c;
    c.data_dir = base / "dead";
    c.query_dir = base / "query";
    c.out_dir = base / "out";
    CHECK(cmd_predict(c).exit_code == kAmbiguous);

    // A query that no trajectory of the system can produce.
    REQUIRE(cmd_simulate(sim_config(base / "data", 1, 40)).exit_code == kOk);
    fs::create_directories(base / "bad_query");
    for (const char* f : {"u.csv", "p.csv"}) fs::copy_file(base / "query" / f, base / "bad_query" / f);
    Eigen::MatrixXd y = read_csv(base / "query" / "y.csv").samples();
    y(0, 1) += 1.0;
    std::ofstream(base / "bad_query" / "y.csv") << format_csv(Trajectory(1, y));
    c.data_dir = base / "data";
    c.query_dir = base / "bad_query";
    c.out_dir = base / "out_bad";
    CHECK(cmd_predict(c).exit_code == kInfeasible);

    // Two output channels in the data against a single-output query.
    fs::create_directories(base / "mismatch");
    for (const char* f : {"u.csv", "p.csv"}) fs::copy_file(base / "data" / f, base / "mismatch" / f);
    std::ofstream(base / "mismatch" / "y.csv") << format_csv(Trajectory::zeros(2, 1, 40));
    c.data_dir = base / "mismatch";
    c.query_dir = base / "query";
    c.out_dir = base / "out_mismatch";
    CHECK(cmd_predict(c).exit_code == kConfigError);
    CHECK_FALSE(fs::exists(base / "out_mismatch"));

    c.data_dir = base / "nowhere";
    CHECK(cmd_predict(c).exit_code == kConfigError);
}

TEST_CASE("check reports excitation and lag") {
    const fs::path base = scratch("check");
    REQUIRE(cmd_simulate(sim_config(base / "data", 1, 40)).exit_code == kOk);
    ExperimentConfig c;
    c.data_dir = base / "data";
    c.out_dir = base / "out";
    c.L = 7;
    const auto r = cmd_check(c);
    REQUIRE(r.exit_code == kOk);
    CHECK(r.summary["pe"] == true);
    const Json report = read_json_file(base / "out" / "check.json");
    CHECK(report["pe"] == true);
    CHECK(report["pe_report"]["extended_input_rank"] == 21);
    CHECK(report["lag"]["n_a"] == 2);
    CHECK_FALSE(report.contains("structural"));

    c.data_dir = base / "missing";
    CHECK(cmd_check(c).exit_code == kConfigError);
}

TEST_CASE("check runs structural tests on state-space models") {
    const fs::path base = scratch("check_ss");
    Rng rng(3);
    const LpvSsModel m = testing::random_minimal_ss(rng, 2, 1, 1, 2);
    std::ofstream(base / "model.json") << to_json(m).dump(2);
    ExperimentConfig c = sim_config(base / "data", 4, 30);
    c.model = (base / "model.json").string();
    REQUIRE(cmd_simulate(c).exit_code == kOk);
    CHECK(fs::exists(base / "data" / "x.csv"));
    c.data_dir = base / "data";
    c.out_dir = base / "out";
    c.L = 5;
    REQUIRE(cmd_check(c).exit_code == kOk);
    const Json report = read_json_file(base / "out" / "check.json");
    CHECK(report["structural"]["minimal"] == true);
    CHECK(report["pe_report"]["hankel_rank_expected"] == 3 * 5 + 2 * 5 + 2);

    // Affine state-space dependence is outside the class the predictor handles exactly;
    // the run must still finish with a verdict and an error figure.
    c.out_dir = base / "exp";
    const auto e = cmd_experiment(c);
    CHECK((e.exit_code == kOk || e.exit_code == kAmbiguous || e.exit_code == kInfeasible));
    CHECK(e.summary.contains("max_error"));
}

TEST_CASE("experiment reproduces the worked example") {
    const fs::path base = scratch("experiment");
    ExperimentConfig c;
    c.out_dir = base / "a";
    const auto r = cmd_experiment(c);
    CHECK(r.exit_code == kOk);
    CHECK(r.summary["max_error"].get<double>() <= 1e-8);
    c.out_dir = base / "b";
    (void)cmd_experiment(c);
    for (const char* f : {"u.csv", "p.csv", "y.csv", "query.json", "prediction.json", "y_r.csv", "plot.csv"}) {
        CHECK(slurp(base / "a" / f) == slurp(base / "b" / f));
    }
    c.T = 5;
    CHECK(cmd_experiment(c).exit_code == kConfigError);
}

TEST_CASE("command line parsing and config files") {
    const fs::path base = scratch("argv");
    std::ofstream(base / "config.json") << R"({"T": 12, "seed": 9, "out_dir": ")" << (base / "from_config").string()
                                        << R"(", "sched_box": [[-0.5, 0.5], [0, 1]]})";
    const auto call = [](std::vector<std::string> args) {
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        return run(static_cast<int>(argv.size()), argv.data());
    };
    CHECK(call({"lpvdd", "simulate", "--config", (base / "config.json").string()}) == 0);
    CHECK(read_csv(base / "from_config" / "y.csv").length() == 12);
    const auto p = read_csv(base / "from_config" / "p.csv");
    CHECK(p.samples().row(1).minCoeff() >= 0.0);
    CHECK(p.samples().row(0).cwiseAbs().maxCoeff() <= 0.5);

    CHECK(call({"lpvdd", "simulate", "--config", (base / "config.json").string(), "--T", "7", "--out-dir",
                (base / "flag").string()}) == 0);
    CHECK(read_csv(base / "flag" / "y.csv").length() == 7);

    CHECK(call({"lpvdd", "simulate", "--T", "0", "--out-dir", (base / "zero").string()}) == 2);
    CHECK(call({"lpvdd", "simulate", "--format", "xml"}) == 2);
    CHECK(call({"lpvdd", "simulate", "--input-box", "1"}) == 2);
    CHECK(call({"lpvdd"}) == 2);
    CHECK(call({"lpvdd", "simulate", "--config", (base / "none.json").string()}) == 2);
}
