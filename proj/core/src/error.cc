// Copyright 2026 The CCL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccl/error.h"

namespace ccl {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kMissingDomainTag: return "MissingDomainTag";
    case ErrorCode::kDomainTooSmall: return "DomainTooSmall";
    case ErrorCode::kEmptyRandomPool: return "EmptyRandomPool";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEncoderUnavailable: return "EncoderUnavailable";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kNormError: return "NormError";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kEmptyHistory: return "EmptyHistory";
    case ErrorCode::kNotAPermutation: return "NotAPermutation";
    case ErrorCode::kTooManyGoals: return "TooManyGoals";
    case ErrorCode::kDuplicateCandidate: return "DuplicateCandidate";
    case ErrorCode::kCandidateFileMissing: return "CandidateFileMissing";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kPrecondition: return "Precondition";
  }
  return "Unknown";
}

namespace {

std::string Format(ErrorCode code, const std::string &message, long location) {
  std::string out(ErrorCodeName(code));
  if (location >= 0) out += "(" + std::to_string(location) + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string &message, long location)
    : std::runtime_error(Format(code, message, location)),
      code_(code),
      location_(location) {}

}  // namespace ccl
