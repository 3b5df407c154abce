#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace finstar {

/// Base class for all domain errors. Carries a stable machine-readable
/// kind (e.g. "NotPositive") and a numeric payload for serialization.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message,
        std::map<std::string, double> data = {})
      : std::runtime_error(kind + ": " + message),
        kind_(std::move(kind)),
        data_(std::move(data)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::map<std::string, double>& data() const noexcept { return data_; }

 private:
  std::string kind_;
  std::map<std::string, double> data_;
};

#define FINSTAR_DEFINE_ERROR(NAME)                                    \
  class NAME : public Error {                                         \
   public:                                                            \
    explicit NAME(const std::string& message,                         \
                  std::map<std::string, double> data = {})            \
        : Error(#NAME, message, std::move(data)) {}                   \
  }

FINSTAR_DEFINE_ERROR(InvalidShape);
FINSTAR_DEFINE_ERROR(InvalidInput);
FINSTAR_DEFINE_ERROR(NoConvergence);
FINSTAR_DEFINE_ERROR(AssociativityViolation);
FINSTAR_DEFINE_ERROR(InvolutionViolation);
FINSTAR_DEFINE_ERROR(NormViolation);
FINSTAR_DEFINE_ERROR(NotCommutative);
FINSTAR_DEFINE_ERROR(NotSemisimple);
FINSTAR_DEFINE_ERROR(SpectralRadiusTooLarge);
FINSTAR_DEFINE_ERROR(NotPositive);
FINSTAR_DEFINE_ERROR(NotInvertible);
FINSTAR_DEFINE_ERROR(NotHermitian);
FINSTAR_DEFINE_ERROR(NotNormal);
FINSTAR_DEFINE_ERROR(MuTooSmall);
FINSTAR_DEFINE_ERROR(PoleOnSpectrum);
FINSTAR_DEFINE_ERROR(TransformVanishes);
FINSTAR_DEFINE_ERROR(ZeroFunctional);
FINSTAR_DEFINE_ERROR(GammaTooSmall);
FINSTAR_DEFINE_ERROR(NotAState);
FINSTAR_DEFINE_ERROR(MissingPoint);
FINSTAR_DEFINE_ERROR(ZeroRepresentation);
FINSTAR_DEFINE_ERROR(ZeroVector);
FINSTAR_DEFINE_ERROR(NotCyclic);
FINSTAR_DEFINE_ERROR(SupportExceedsTruncation);
FINSTAR_DEFINE_ERROR(UnknownCommand);

#undef FINSTAR_DEFINE_ERROR

}  // namespace finstar
