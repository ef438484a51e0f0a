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

#ifndef CCL_ENCODING_MODE_H_
#define CCL_ENCODING_MODE_H_

#include <compare>
#include <string_view>

namespace ccl {

enum class Direction { kBefore, kAfter };
enum class SpeakerToken { kNone, kE, kO };

// How a text is presented to the encoder. Speaker tokens only ever decorate
// the before side.
struct EncodingMode {
  Direction direction = Direction::kBefore;
  SpeakerToken speaker = SpeakerToken::kNone;

  static EncodingMode Before() { return {Direction::kBefore, SpeakerToken::kNone}; }
  static EncodingMode After() { return {Direction::kAfter, SpeakerToken::kNone}; }
  // [E] for even turn distances, [O] for odd.
  static EncodingMode BeforeForDistance(long distance) {
    return {Direction::kBefore, distance % 2 == 0 ? SpeakerToken::kE : SpeakerToken::kO};
  }

  bool valid() const {
    return speaker == SpeakerToken::kNone || direction == Direction::kBefore;
  }

  auto operator<=>(const EncodingMode &) const = default;
};

inline constexpr std::string_view kBeforePrefix = "[BEFORE] ";
inline constexpr std::string_view kAfterPrefix = "[AFTER] ";
inline constexpr std::string_view kEvenBeforePrefix = "[E] [BEFORE] ";
inline constexpr std::string_view kOddBeforePrefix = "[O] [BEFORE] ";

// Canonical encoder-input prefix for a mode. Throws Error(kPrecondition) for
// an invalid mode.
std::string_view Prefix(EncodingMode mode);

// Wire names: "before"/"after" and "none"/"E"/"O".
std::string_view DirectionName(Direction d);
std::string_view SpeakerName(SpeakerToken s);
Direction ParseDirection(std::string_view name);
SpeakerToken ParseSpeaker(std::string_view name);

}  // namespace ccl

#endif  // CCL_ENCODING_MODE_H_
