#pragma once

#include <stdexcept>
#include <string>

namespace macrovar {

/// Bad or missing input data: schema problems, gaps that cannot be filled,
/// sample spans that do not overlap. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce a result (singular matrices,
/// failed factorisations, degenerate regressions). Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pipeline stage failed; carries the stage name alongside the cause.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& cause, bool numeric)
        : std::runtime_error("stage '" + stage + "' failed: " + cause),
          stage_(std::move(stage)),
          numeric_(numeric) {}

    const std::string& stage() const noexcept { return stage_; }
    bool numeric() const noexcept { return numeric_; }

private:
    std::string stage_;
    bool numeric_;
};

}  // namespace macrovar
