// Copyright 2026 The Riwaya Authors.
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

#ifndef RIWAYA_LEXICON_MATCHER_H_
#define RIWAYA_LEXICON_MATCHER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "riwaya/markup.h"

namespace riwaya {

// Byte trie over every surface form and transmission term of a lexicon.
// A form that is both a name and a term is treated as a name.
class LexiconMatcher {
 public:
  explicit LexiconMatcher(const Lexicon& lexicon);

  struct Match {
    size_t end = 0;
    SpanKind kind = SpanKind::kName;
    std::vector<Id> candidates;
  };

  // Longest form starting at `pos` and ending at or before `limit`, with a
  // word boundary on both sides.
  std::optional<Match> LongestAt(std::string_view text, size_t pos,
                                 size_t limit) const;

  // Leftmost-longest tagging of text[begin, end). `spans` is sorted by start
  // on entry and on exit; new spans never overlap existing ones.
  void TagRegion(std::string_view text, size_t begin, size_t end,
                 std::vector<Span>& spans) const;

 private:
  struct Node {
    std::map<unsigned char, int> next;
    std::vector<Id> ids;
    bool term = false;
  };

  std::vector<Node> nodes_;
};

}  // namespace riwaya

#endif  // RIWAYA_LEXICON_MATCHER_H_
