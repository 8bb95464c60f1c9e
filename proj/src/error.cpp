#include "subplanck/error.hpp"

namespace subplanck {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonUniformGrid: return "NonUniformGrid";
    case Errc::NegativeDensity: return "NegativeDensity";
    case Errc::ZeroMass: return "ZeroMass";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NoInteriorMaximum: return "NoInteriorMaximum";
    case Errc::WindowOutOfRange: return "WindowOutOfRange";
    case Errc::InsufficientSupport: return "InsufficientSupport";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::DegenerateResult: return "DegenerateResult";
    case Errc::GridTooNarrow: return "GridTooNarrow";
    case Errc::InvalidPopulations: return "InvalidPopulations";
    case Errc::InvalidState: return "InvalidState";
    case Errc::UnsupportedAngle: return "UnsupportedAngle";
    case Errc::ZeroMassCondition: return "ZeroMassCondition";
    case Errc::FlatMaximum: return "FlatMaximum";
    case Errc::NonPositiveVariance: return "NonPositiveVariance";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::NoSqueezingAtZero: return "NoSqueezingAtZero";
    case Errc::NoRootInBracket: return "NoRootInBracket";
    case Errc::CutoffTooSmall: return "CutoffTooSmall";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::FitDiverged: return "FitDiverged";
    case Errc::NoAcceptedSamples: return "NoAcceptedSamples";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorClass classify(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidConfig:
    case Errc::ParseError:
    case Errc::IoError:
      return ErrorClass::Config;
    case Errc::NoRootInBracket:
    case Errc::FitDiverged:
    case Errc::NoAcceptedSamples:
      return ErrorClass::Solver;
    default:
      return ErrorClass::Numeric;
  }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace subplanck
