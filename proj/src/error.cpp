#include "spectra/error.hpp"

namespace spectra {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::TowerMismatch: return "TowerMismatch";
    case ErrorKind::DegenerateRadicand: return "DegenerateRadicand";
    case ErrorKind::ReducibleRelation: return "ReducibleRelation";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::SubstitutionSingularity: return "SubstitutionSingularity";
    case ErrorKind::NotTranscendental: return "NotTranscendental";
    case ErrorKind::TrivialSolution: return "TrivialSolution";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::InconsistentSpec: return "InconsistentSpec";
    case ErrorKind::InvalidRecipe: return "InvalidRecipe";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

}  // namespace spectra
