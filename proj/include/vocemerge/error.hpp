#pragma once

#include <stdexcept>
#include <string>

namespace vocemerge {

enum class ErrorCode {
  Parse,
  Validation,
  Cycle,
  DanglingParent,
  UnknownId,
  Inconsistency,
  EmptyCorpus,
  MissingFeature,
  InsufficientChildren,
  ImageMismatch,
  MissingGroundTruth,
  Config,
  Io,
};

class VocabError : public std::runtime_error {
 public:
  VocabError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  const char* codeName() const {
    switch (code_) {
      case ErrorCode::Parse: return "parse";
      case ErrorCode::Validation: return "validation";
      case ErrorCode::Cycle: return "cycle";
      case ErrorCode::DanglingParent: return "dangling_parent";
      case ErrorCode::UnknownId: return "unknown_id";
      case ErrorCode::Inconsistency: return "inconsistency";
      case ErrorCode::EmptyCorpus: return "empty_corpus";
      case ErrorCode::MissingFeature: return "missing_feature";
      case ErrorCode::InsufficientChildren: return "insufficient_children";
      case ErrorCode::ImageMismatch: return "image_mismatch";
      case ErrorCode::MissingGroundTruth: return "missing_ground_truth";
      case ErrorCode::Config: return "config";
      case ErrorCode::Io: return "io";
    }
    return "unknown";
  }

 private:
  ErrorCode code_;
};

}  // namespace vocemerge
