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

#ifndef CCL_ERROR_H_
#define CCL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccl {

enum class ErrorCode {
  kEmptyCorpus,
  kParseError,
  kSchemaError,
  kMissingDomainTag,
  kDomainTooSmall,
  kEmptyRandomPool,
  kIoError,
  kEncoderUnavailable,
  kFormatError,
  kNormError,
  kDimMismatch,
  kEmptyHistory,
  kNotAPermutation,
  kTooManyGoals,
  kDuplicateCandidate,
  kCandidateFileMissing,
  kMissingEmbedding,
  kPrecondition,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `location` is
// the 1-based line number for parse/schema errors, the row index for norm
// errors, and -1 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, long location = -1);

  ErrorCode code() const { return code_; }
  long location() const { return location_; }

 private:
  ErrorCode code_;
  long location_;
};

}  // namespace ccl

#endif  // CCL_ERROR_H_
