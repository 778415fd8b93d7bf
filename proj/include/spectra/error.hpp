#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectra {

enum class ErrorKind {
    DivisionByZero,
    TowerMismatch,
    DegenerateRadicand,
    ReducibleRelation,
    DuplicateLabel,
    SubstitutionSingularity,
    NotTranscendental,
    TrivialSolution,
    NotOnCurve,
    InconsistentSpec,
    InvalidRecipe,
    UnknownLabel,
    ParseError,
    InvalidArgument,
    Unsupported,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the workbench; callers switch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace spectra
