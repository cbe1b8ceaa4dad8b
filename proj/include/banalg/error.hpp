#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace banalg {

enum class ErrorCode {
  rejected,
  algebra_mismatch,
  shape_mismatch,
  invalid_action,
  not_homomorphism,
  not_contractive,
  ill_conditioned,
  no_normalizer,
  not_a_multiplier,
  relations_violated,
  undefined_at,
  rank_deficient_characters,
  empty_character_set,
  not_without_order,
  phi_not_surjective,
  span_condition_failed,
  parse_error,
  schema_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status or a report
/// record without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::rejected: return "REJECTED";
    case ErrorCode::algebra_mismatch: return "ALGEBRA_MISMATCH";
    case ErrorCode::shape_mismatch: return "SHAPE_MISMATCH";
    case ErrorCode::invalid_action: return "INVALID_ACTION";
    case ErrorCode::not_homomorphism: return "NOT_HOMOMORPHISM";
    case ErrorCode::not_contractive: return "NOT_CONTRACTIVE";
    case ErrorCode::ill_conditioned: return "ILL_CONDITIONED";
    case ErrorCode::no_normalizer: return "NO_NORMALIZER";
    case ErrorCode::not_a_multiplier: return "NOT_A_MULTIPLIER";
    case ErrorCode::relations_violated: return "RELATIONS_VIOLATED";
    case ErrorCode::undefined_at: return "UNDEFINED_AT";
    case ErrorCode::rank_deficient_characters: return "RANK_DEFICIENT_CHARACTERS";
    case ErrorCode::empty_character_set: return "EMPTY_CHARACTER_SET";
    case ErrorCode::not_without_order: return "NOT_WITHOUT_ORDER";
    case ErrorCode::phi_not_surjective: return "PHI_NOT_SURJECTIVE";
    case ErrorCode::span_condition_failed: return "SPAN_CONDITION_FAILED";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::schema_error: return "SCHEMA_ERROR";
    case ErrorCode::io_error: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace banalg
