#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpvdd {

enum class Errc {
    WindowOutOfRange,
    DimensionMismatch,
    NonAdjacentIntervals,
    IntervalMismatch,
    InvalidShape,
    InvalidModel,
    InvalidFormat,
    RankDeficientObservability,
    InconsistentTrajectory,
    Infeasible,
    Ambiguous,
};

[[nodiscard]] std::string_view to_string(Errc code) noexcept;

/// Exception carrying one of the library's error codes.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::WindowOutOfRange: return "WindowOutOfRange";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NonAdjacentIntervals: return "NonAdjacentIntervals";
        case Errc::IntervalMismatch: return "IntervalMismatch";
        case Errc::InvalidShape: return "InvalidShape";
        case Errc::InvalidModel: return "InvalidModel";
        case Errc::InvalidFormat: return "InvalidFormat";
        case Errc::RankDeficientObservability: return "RankDeficientObservability";
        case Errc::InconsistentTrajectory: return "InconsistentTrajectory";
        case Errc::Infeasible: return "Infeasible";
        case Errc::Ambiguous: return "Ambiguous";
    }
    return "Unknown";
}

}  // namespace lpvdd
