#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace depseq {

enum class ErrorCode {
  kInvalidGraph,
  kInvalidSchema,
  kInvalidConfig,
  kUnknownRelation,
  kMalformedUnit,
  kWordMismatch,
  kPositionOutOfRange,
  kDuplicateArc,
  kDuplicateSurface,
  kNotATree,
  kMalformed,
  kNonTreeResult,
  kUnbalanced,
  kPositionConflict,
  kEmptyBracket,
  kPrecondition,
  kLengthMismatch,
  kMixedKinds,
  kBadColumnCount,
  kNonIntegerHead,
  kHeadOutOfRange,
  kEmptyFile,
  kIsolatedNotAllowed,
  kIncompatibleFormat,
};

// Upper-case hyphenated name, e.g. "POSITION-OUT-OF-RANGE".
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace depseq
