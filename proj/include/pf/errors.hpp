#pragma once

#include <stdexcept>
#include <string>

namespace pf {

enum class ErrorKind { input = 4, negative = 2, unsupported = 3, internal = 1 };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

#define PF_DEFINE_ERROR(Name, Kind)                                            \
  struct Name : Error {                                                        \
    explicit Name(const std::string& w = "") : Error(ErrorKind::Kind, #Name, w) {} \
  };

PF_DEFINE_ERROR(VariableMismatch, input)
PF_DEFINE_ERROR(NotAUnit, negative)
PF_DEFINE_ERROR(ConstantTermNonzero, input)
PF_DEFINE_ERROR(BaseFieldRootMissing, unsupported)
PF_DEFINE_ERROR(NotRegular, negative)
PF_DEFINE_ERROR(ZeroUpToCap, negative)
PF_DEFINE_ERROR(DenominatorMismatch, input)
PF_DEFINE_ERROR(NotWeightedHomogeneous, input)
PF_DEFINE_ERROR(PrimitiveCheckFailed, unsupported)
PF_DEFINE_ERROR(NonPureUnsupported, unsupported)
PF_DEFINE_ERROR(CyclotomicUnsupported, unsupported)
PF_DEFINE_ERROR(NotCoprime, negative)
PF_DEFINE_ERROR(BaseFieldFactorizationUnsupported, unsupported)
PF_DEFINE_ERROR(NotReduced, negative)
PF_DEFINE_ERROR(NotQuasiOrdinary, negative)
PF_DEFINE_ERROR(NoMatch, negative)
PF_DEFINE_ERROR(DepthExceeded, negative)
PF_DEFINE_ERROR(FiberRootUnsupported, unsupported)
PF_DEFINE_ERROR(OnStrictTransformOfH, input)
PF_DEFINE_ERROR(NotSupported, unsupported)
PF_DEFINE_ERROR(CapTooSmall, input)
PF_DEFINE_ERROR(HypothesisViolated, negative)
PF_DEFINE_ERROR(PairingAmbiguous, negative)
PF_DEFINE_ERROR(FactorCountMismatch, internal)
PF_DEFINE_ERROR(FormatError, input)
PF_DEFINE_ERROR(PrecisionExhausted, unsupported)

#undef PF_DEFINE_ERROR

}  // namespace pf
