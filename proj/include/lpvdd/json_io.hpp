#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "lpvdd/analysis.hpp"
#include "lpvdd/ddpred.hpp"
#include "lpvdd/models.hpp"

namespace lpvdd {

using Json = nlohmann::ordered_json;

// Coefficient entry = list of terms; term = {"coeff", "vars": [{"comp", "offset", "power"}]}.
[[nodiscard]] Json to_json(const PolyCoeff& c);
[[nodiscard]] PolyCoeff poly_from_json(const Json& j, int n_p);

/// Array of rows, each row an array of entries.
[[nodiscard]] Json to_json(const CoeffMatrix& m);
[[nodiscard]] CoeffMatrix coeff_matrix_from_json(const Json& j, int rows, int cols, int n_p);

[[nodiscard]] Json to_json(const LpvSsModel& model);
[[nodiscard]] Json to_json(const LpvIoModel& model);

using AnyModel = std::variant<LpvSsModel, LpvIoModel>;

/// Parses either model kind. Throws InvalidFormat on malformed JSON and
/// InvalidModel when the parsed model fails validation.
[[nodiscard]] AnyModel model_from_json(const Json& j);

/// File path or "builtin:verhoek".
[[nodiscard]] AnyModel load_model(const std::string& source);

/// {"t_start": k, "samples": [[w(k)...], ...]}, one inner array per time step.
[[nodiscard]] Json to_json(const Trajectory& w);
[[nodiscard]] Trajectory trajectory_from_json(const Json& j);

/// Bundle {"u": trajectory, "p": trajectory, "y": trajectory, "provenance": "..."}.
[[nodiscard]] Json to_json(const DataRecord& data);
[[nodiscard]] DataRecord data_record_from_json(const Json& j);

[[nodiscard]] Json to_json(const ValidationReport& report);
[[nodiscard]] Json to_json(const StructuralRankReport& report);
[[nodiscard]] Json to_json(const MinimalityReport& report);
[[nodiscard]] Json to_json(const PeReport& report);
[[nodiscard]] Json to_json(const PredictionResult& result);

[[nodiscard]] Json read_json_file(const std::filesystem::path& path);

}  // namespace lpvdd
