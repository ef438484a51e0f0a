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

#include "ccl/encoding_mode.h"

#include <string>

#include "ccl/error.h"

namespace ccl {

std::string_view Prefix(EncodingMode mode) {
  if (!mode.valid()) {
    throw Error(ErrorCode::kPrecondition, "speaker token on an after-mode text");
  }
  if (mode.direction == Direction::kAfter) return kAfterPrefix;
  switch (mode.speaker) {
    case SpeakerToken::kNone: return kBeforePrefix;
    case SpeakerToken::kE: return kEvenBeforePrefix;
    case SpeakerToken::kO: return kOddBeforePrefix;
  }
  return kBeforePrefix;
}

std::string_view DirectionName(Direction d) {
  return d == Direction::kBefore ? "before" : "after";
}

std::string_view SpeakerName(SpeakerToken s) {
  switch (s) {
    case SpeakerToken::kNone: return "none";
    case SpeakerToken::kE: return "E";
    case SpeakerToken::kO: return "O";
  }
  return "none";
}

Direction ParseDirection(std::string_view name) {
  if (name == "before") return Direction::kBefore;
  if (name == "after") return Direction::kAfter;
  throw Error(ErrorCode::kFormatError, "bad direction \"" + std::string(name) + "\"");
}

SpeakerToken ParseSpeaker(std::string_view name) {
  if (name == "none" || name.empty()) return SpeakerToken::kNone;
  if (name == "E") return SpeakerToken::kE;
  if (name == "O") return SpeakerToken::kO;
  throw Error(ErrorCode::kFormatError, "bad speaker \"" + std::string(name) + "\"");
}

}  // namespace ccl
