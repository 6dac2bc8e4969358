#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xfrag {

enum class ErrorKind {
  kParse,
  kUnsupportedFeature,
  kLabelingConflict,
  kAddressSyntax,
  kPatternSyntax,
  kPredicateSyntax,
  kEmptyProjection,
  kInvalidSelector,
  kInvalidArgument,
  kInvalidK,
  kUnknownElement,
  kUnknownPath,
  kAllocationIncomplete,
  kStrategyMismatch,
  kIncompleteSet,
  kLinkResolution,
  kInvalidCut,
  kDuplicateCut,
  kIncompleteStream,
  kCycle,
  kEmptyInput,
  kIo,
};

std::string_view error_kind_name(ErrorKind kind);

// Every module reports failures through this type; the kind is stable and
// tested, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::kParse,
              "parse error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace xfrag
