#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpvdd/json_io.hpp"

namespace lpvdd::cli {

struct Box {
    double lo = -1.0;
    double hi = 1.0;
};

struct ExperimentConfig {
    std::string model = "builtin:verhoek";
    int T = 40;
    int T_ini = 3;
    int T_r = 7;
    std::optional<int> L;  // window length per solve; unset picks it from the data
    std::uint64_t seed = 1;
    Box input_box;
    std::vector<Box> sched_box;  // per component; empty means [-1, 1] everywhere
    double tol = 1e-7;
    double margin_tol = 1e-7;
    std::string format = "csv";  // "csv" or "json"
    std::filesystem::path data_dir = "data";
    std::filesystem::path query_dir = "query";
    std::filesystem::path out_dir = "out";
};

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericFailure = 3,
    kAmbiguous = 4,
    kInfeasible = 5,
};

struct CommandOutcome {
    int exit_code = kOk;
    Json summary;        // one line on stdout
    std::string report;  // human-readable, stderr
};

/// Overlays the fields present in a JSON config object. Throws InvalidFormat.
void apply_config_json(ExperimentConfig& config, const Json& j);

/// Throws InvalidFormat on inconsistent settings. `need_horizon` also demands T >= T_ini + T_r.
void check_config(const ExperimentConfig& config, bool need_horizon);

/// Seeded measurement of the configured model over [1, T]. IO models start from rest with
/// the input and scheduling also drawn over the n_a samples before time 1; SS models start at x = 0.
struct SimulatedData {
    DataRecord data;
    std::optional<Trajectory> x;
};
[[nodiscard]] SimulatedData simulate_data(const AnyModel& model, const ExperimentConfig& config);

/// Fresh trajectory over [1, T_ini + T_r] from a random initial condition, split into a
/// prediction query and the true future output.
struct QueryCase {
    PredictionQuery query;
    Trajectory y_truth;
};
[[nodiscard]] QueryCase simulate_query(const AnyModel& model, const ExperimentConfig& config);

// Commands never throw; failures map to exit codes.
[[nodiscard]] CommandOutcome cmd_simulate(const ExperimentConfig& config);
[[nodiscard]] CommandOutcome cmd_predict(const ExperimentConfig& config);
[[nodiscard]] CommandOutcome cmd_check(const ExperimentConfig& config);
[[nodiscard]] CommandOutcome cmd_experiment(const ExperimentConfig& config);

/// Argument parsing, dispatch and printing.
int run(int argc, char** argv);

}  // namespace lpvdd::cli
