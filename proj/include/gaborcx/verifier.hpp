#pragma once

// Certification checks for counterexample pairs. Every check is a pure
// function of its inputs and returns a report; nothing here performs I/O.
// Pass conditions compare residuals strictly against their tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaborcx/counterexample.hpp"

namespace gaborcx {

enum class Evaluator { Oracle, Numeric, Both };

const char* to_string(Evaluator e);
/// Throws ParameterError for an unknown tag.
Evaluator parse_evaluator(const std::string& s);

struct MagnitudeRecord {
    TFPoint point;
    double plus = 0.0;   // oracle value for Oracle/Both, numeric otherwise
    double minus = 0.0;
    double abs_diff = 0.0;
    std::optional<double> numeric_plus;  // Both only
    std::optional<double> numeric_minus;
};

struct MagnitudeReport {
    TFLattice lattice;
    Evaluator evaluator = Evaluator::Oracle;
    std::vector<MagnitudeRecord> records;
    /// For Both this also folds in the numeric +/- difference and the
    /// numeric-vs-oracle deviation.
    double max_abs_diff = 0.0;
    double max_cross_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Evaluates |V f_+| and |V f_-| at every lattice point. Throws ContractError
/// when `enforce_contract` is set and the lattice's (a, alpha, lambda) differ
/// from the pair's.
MagnitudeReport check_lattice_agreement(const CounterexamplePair& pair, const TFLattice& lattice, double tol,
                                        Evaluator evaluator, bool enforce_contract = true);

struct Region {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
};

struct SeparationReport {
    Region region;
    double spacing = 0.0;
    TFPoint argmax;
    double gap = 0.0;
    double min_gap = 0.0;
    bool passed = false;
};

/// Largest | |V f_+| - |V f_-| | (exact oracle) over a uniform search grid
/// of spacing min(a, 1)/64 unless `spacing` is given. Degenerate ranges are
/// allowed.
SeparationReport check_offlattice_separation(const CounterexamplePair& pair, const Region& region, double min_gap,
                                             std::optional<double> spacing = std::nullopt);

/// | |V f_+(p)| - |V f_-(p)| | from one evaluator (Both is rejected).
double separation_gap_at(const CounterexamplePair& pair, TFPoint p, Evaluator evaluator);

struct PointWitness {
    double t = 0.0;
    cplx f_value;
    cplx g_value;
};

struct DistinctnessReport {
    double norm_f = 0.0;
    double norm_g = 0.0;
    double inner_product_modulus = 0.0;
    double cosine_similarity = 0.0;
    double tol_phase = 0.0;
    bool phase_equivalent = false;
    std::optional<PointWitness> witness;

    bool passed() const { return !phase_equivalent; }
};

/// Cauchy-Schwarz test: f = e^{i mu} g for some mu iff |<f,g>| = |f||g|.
/// Throws DegenerateInputError if either norm is below 1e-10.
DistinctnessReport check_global_phase_distinct(const SampledSignal& f, const SampledSignal& g, double tol_phase);

/// Pair version; the base pair additionally records the t = a/4 witness.
DistinctnessReport check_global_phase_distinct(const CounterexamplePair& pair, double tol_phase);

struct DecayReport {
    double epsilon = 0.0;
    double C_epsilon = 0.0;
    SquareGrid grid;
    std::size_t points_checked = 0;
    std::size_t violation_count = 0;
    double worst_ratio = 0.0;
    std::optional<TFPoint> first_violation;
    bool passed = false;
};

/// Checks mag_oracle <= C e^{-(pi/2 - eps)|p|^2} for both signs. Throws
/// ContractError if the envelope was built for a different (a, lambda).
DecayReport check_decay(const CounterexamplePair& pair, const DecayEnvelope& envelope, const SquareGrid& grid);

/// Raw-constant variant; accepts C < 1 so undersized envelopes can be probed.
DecayReport check_decay(const CounterexamplePair& pair, double epsilon, double C, const SquareGrid& grid);

struct PropertyResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct BatteryConfig {
    std::uint64_t seed = 20210515;
    /// nullopt runs every registered property; an empty list runs none.
    std::optional<std::vector<std::string>> properties;
    /// Replaces every per-property tolerance when set.
    std::optional<double> tolerance_override;
    GridSpec grid = default_grid();
};

struct BatteryReport {
    std::vector<PropertyResult> results;
    bool passed = false;
    std::string note;
};

std::vector<std::string> registered_properties();

/// Throws ParameterError for an unknown property name.
BatteryReport run_property_battery(const BatteryConfig& config);

}  // namespace gaborcx
