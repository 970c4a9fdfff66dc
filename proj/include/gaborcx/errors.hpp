#pragma once

#include <stdexcept>
#include <string>

namespace gaborcx {

/// Base of every error raised by the library. `kind()` is a short stable tag
/// used in machine-readable error records.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error("parameter", m) {}
};

struct EmptyLatticeError : Error {
    explicit EmptyLatticeError(const std::string& m) : Error("empty-lattice", m) {}
};

/// Angle within the exactness threshold of a multiple of pi where only the
/// exact branches are defined.
struct BranchError : Error {
    explicit BranchError(const std::string& m) : Error("branch", m) {}
};

/// |sin alpha| below the floor of the generic FrFT kernel.
struct NearSingularAngleError : Error {
    explicit NearSingularAngleError(const std::string& m) : Error("near-singular-angle", m) {}
};

/// Sampling grid too short or too coarse for the requested evaluation.
struct ResolutionError : Error {
    explicit ResolutionError(const std::string& m) : Error("resolution", m) {}
};

struct ModeError : Error {
    explicit ModeError(const std::string& m) : Error("mode", m) {}
};

struct AlignmentError : Error {
    explicit AlignmentError(const std::string& m) : Error("alignment", m) {}
};

/// A check was asked to certify a claim that does not apply to its inputs.
struct ContractError : Error {
    explicit ContractError(const std::string& m) : Error("contract", m) {}
};

struct DegenerateInputError : Error {
    explicit DegenerateInputError(const std::string& m) : Error("degenerate-input", m) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error("config", m) {}
};

}  // namespace gaborcx
