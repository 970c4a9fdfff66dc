#pragma once

// Command-line front end and file formats.
//
//   pair.json        pair metadata, symbolic terms and provenance
//   signals.csv      t, plus_re, plus_im, minus_re, minus_im (one row per sample)
//   report.json      verify output: lattice agreement, distinctness,
//                    separation, decay and property battery
//   battery.json     property battery output
//   spectrogram.csv  line 1 "x,<x values>", line 2 "omega,<omega values>",
//                    then one row of magnitudes per x value
//
// Reals are written with 17 significant digits. Exit codes: 0 all checks
// pass, 1 a check failed, 2 usage or configuration error.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaborcx/counterexample.hpp"
#include "gaborcx/gabor.hpp"
#include "gaborcx/verifier.hpp"

namespace gaborcx {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Inclusive lo:hi:step axis.
struct AxisSpec {
    double lo = -3.0;
    double hi = 3.0;
    double step = 0.125;

    std::vector<double> values() const;
    friend bool operator==(const AxisSpec&, const AxisSpec&) = default;
};

struct RunConfig {
    double a = 1.0;
    double alpha = 0.0;
    double lambda_x = 0.0;
    double lambda_w = 0.0;
    double b = 0.1;
    IndexRange jrange{-4, 4};
    IndexRange krange{-4, 4};
    GridSpec grid = default_grid();
    double tol_oracle = 1e-12;
    double tol_numeric = 1e-5;
    double tol_phase = 1e-8;
    double epsilon = 0.1;
    Evaluator evaluator = Evaluator::Both;
    std::string out = "gaborcx-out";
    std::uint64_t seed = 20210515;
    /// Band-limited interpolation for off-grid x0.
    bool interpolate = true;
    /// Refuse lattices that do not belong to the pair.
    bool guard = true;
    /// Lattice offset when it should differ from lambda (requires guard off).
    std::optional<double> lattice_offset_x;
    std::optional<double> lattice_offset_w;
    Sign signal = Sign::Plus;
    SpectrogramMode mode = SpectrogramMode::ClosedForm;
    AxisSpec xs;
    AxisSpec ws;
    /// Load the pair from this directory instead of generating it.
    std::optional<std::string> pair_dir;
    /// battery subcommand: property selection and tolerance override.
    std::optional<std::vector<std::string>> properties;
    std::optional<double> battery_tol;

    /// Throws ParameterError / ConfigError on violated constraints.
    void validate() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Radians, optionally written with pi: "0.5", "pi", "-pi/3", "3pi/4", "2*pi".
double parse_angle(const std::string& text);
/// "lo:hi" inclusive.
IndexRange parse_range(const std::string& text);
/// "lo:hi:step".
AxisSpec parse_axis(const std::string& text);

nlohmann::json to_json(const RunConfig& cfg);
/// Applies the keys in `j` on top of `base`; unknown keys throw ConfigError.
RunConfig apply_config_json(const nlohmann::json& j, RunConfig base);

nlohmann::json to_json(const MagnitudeReport& r);
nlohmann::json to_json(const DistinctnessReport& r);
nlohmann::json to_json(const SeparationReport& r);
nlohmann::json to_json(const DecayReport& r);
nlohmann::json to_json(const BatteryReport& r);

void write_pair(const std::filesystem::path& dir, const CounterexamplePair& pair);
CounterexamplePair read_pair(const std::filesystem::path& dir);

void write_spectrogram_csv(const std::filesystem::path& file, const std::vector<double>& xs,
                           const std::vector<double>& ws, const std::vector<double>& magnitudes);

/// Builds the pair described by the configuration (or loads `pair_dir`).
CounterexamplePair pair_from_config(const RunConfig& cfg);

int cmd_generate(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_spectrogram(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_battery(const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// Full CLI: parses argv, dispatches and maps errors to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace gaborcx
