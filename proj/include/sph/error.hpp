#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sph {

/// Stable error codes. The string forms are part of the CLI contract and are
/// checked against a golden list in the tests.
enum class ErrorCode {
  UnsupportedType,
  DegenerateInput,
  NotDominant,
  DimensionCap,
  NotSubalgebra,
  NonNilpotent,
  NonReductive,
  NotAdapted,
  NoIntertwiner,
  QuaternionicObstruction,
  Inconclusive,
  BandLimit,
  NonOrthonormal,
  Parse,
  UnknownSymbol,
  Provenance,
  Usage,
  Internal,
};

inline constexpr ErrorCode kAllErrorCodes[] = {
    ErrorCode::UnsupportedType, ErrorCode::DegenerateInput, ErrorCode::NotDominant, ErrorCode::DimensionCap,
    ErrorCode::NotSubalgebra,   ErrorCode::NonNilpotent,    ErrorCode::NonReductive, ErrorCode::NotAdapted,
    ErrorCode::NoIntertwiner,   ErrorCode::QuaternionicObstruction, ErrorCode::Inconclusive, ErrorCode::BandLimit,
    ErrorCode::NonOrthonormal,  ErrorCode::Parse,           ErrorCode::UnknownSymbol, ErrorCode::Provenance,
    ErrorCode::Usage,           ErrorCode::Internal};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedType: return "E_UNSUPPORTED_TYPE";
    case ErrorCode::DegenerateInput: return "E_DEGENERATE_INPUT";
    case ErrorCode::NotDominant: return "E_NOT_DOMINANT";
    case ErrorCode::DimensionCap: return "E_DIM_CAP";
    case ErrorCode::NotSubalgebra: return "E_NOT_SUBALGEBRA";
    case ErrorCode::NonNilpotent: return "E_NON_NILPOTENT";
    case ErrorCode::NonReductive: return "E_NON_REDUCTIVE";
    case ErrorCode::NotAdapted: return "E_NOT_ADAPTED";
    case ErrorCode::NoIntertwiner: return "E_NO_INTERTWINER";
    case ErrorCode::QuaternionicObstruction: return "E_QUATERNIONIC";
    case ErrorCode::Inconclusive: return "E_INCONCLUSIVE";
    case ErrorCode::BandLimit: return "E_BAND_LIMIT";
    case ErrorCode::NonOrthonormal: return "E_NON_ORTHONORMAL";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::UnknownSymbol: return "E_UNKNOWN_SYMBOL";
    case ErrorCode::Provenance: return "E_PROVENANCE";
    case ErrorCode::Usage: return "E_USAGE";
    case ErrorCode::Internal: return "E_INTERNAL";
  }
  return "E_INTERNAL";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace sph
