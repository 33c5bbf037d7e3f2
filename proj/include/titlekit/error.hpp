#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace titlekit {

enum class ErrorKind {
  EmptyTitle,
  NoBehaviorFound,
  AmbiguousParse,
  NoSlotAssignment,
  UnknownPhrase,
  MissingVariant,
  BadTitleSet,
  EmptyCorpus,
  DegenerateTable,
  MissingCell,
  InconsistentAnswers,
  InvalidInput,
};

inline constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyTitle: return "EmptyTitle";
    case ErrorKind::NoBehaviorFound: return "NoBehaviorFound";
    case ErrorKind::AmbiguousParse: return "AmbiguousParse";
    case ErrorKind::NoSlotAssignment: return "NoSlotAssignment";
    case ErrorKind::UnknownPhrase: return "UnknownPhrase";
    case ErrorKind::MissingVariant: return "MissingVariant";
    case ErrorKind::BadTitleSet: return "BadTitleSet";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::DegenerateTable: return "DegenerateTable";
    case ErrorKind::MissingCell: return "MissingCell";
    case ErrorKind::InconsistentAnswers: return "InconsistentAnswers";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind; the
/// message names the offending input where there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace titlekit
