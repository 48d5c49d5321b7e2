#pragma once

#include <stdexcept>
#include <string>

namespace efl {

/// Failure categories surfaced by the library.  CLI maps these to exit
/// code 1 with a machine-readable reason; bad user input maps to 2.
enum class errc {
    empty_space,
    invalid_space,
    not_a_subset,
    not_open,
    not_saturated,
    invalid_tower,
    not_a_top_cell,
    invalid_orbit,
    insufficient_horizon,
    non_finite,
    degenerate_grid,
    unknown_fixture,
    config_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::empty_space: return "EmptySpace";
        case errc::invalid_space: return "InvalidSpace";
        case errc::not_a_subset: return "NotASubset";
        case errc::not_open: return "NotOpen";
        case errc::not_saturated: return "NotSaturated";
        case errc::invalid_tower: return "InvalidTower";
        case errc::not_a_top_cell: return "NotATopCell";
        case errc::invalid_orbit: return "InvalidOrbit";
        case errc::insufficient_horizon: return "InsufficientHorizon";
        case errc::non_finite: return "NonFinite";
        case errc::degenerate_grid: return "DegenerateGrid";
        case errc::unknown_fixture: return "UnknownFixture";
        case errc::config_error: return "ConfigError";
    }
    return "Unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

}  // namespace efl
