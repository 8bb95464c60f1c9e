#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subplanck {

enum class Errc {
  // density
  NonUniformGrid,
  NegativeDensity,
  ZeroMass,
  TooFewPoints,
  NoInteriorMaximum,
  WindowOutOfRange,
  InsufficientSupport,
  NotPowerOfTwo,
  DegenerateResult,
  // states
  GridTooNarrow,
  InvalidPopulations,
  InvalidState,
  UnsupportedAngle,
  // distill
  ZeroMassCondition,
  FlatMaximum,
  NonPositiveVariance,
  InvalidConfig,
  // depth
  NoSqueezingAtZero,
  NoRootInBracket,
  CutoffTooSmall,
  // phonon
  InsufficientData,
  FitDiverged,
  // oracle
  NoAcceptedSamples,
  TooFewSamples,
  // shared
  InvalidArgument,
  ParseError,
  IoError,
};

/// Coarse grouping used for process exit codes.
enum class ErrorClass { Config, Numeric, Solver };

std::string_view to_string(Errc code) noexcept;
ErrorClass classify(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace subplanck
