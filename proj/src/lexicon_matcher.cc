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

#include "lexicon_matcher.h"

#include <algorithm>

#include "utf8.h"

namespace riwaya {
namespace {

bool WordCharBefore(std::string_view text, size_t pos) {
  if (pos == 0) return false;
  return utf8::IsWordChar(utf8::DecodeAt(text, utf8::PreviousStart(text, pos)));
}

bool WordCharAt(std::string_view text, size_t pos) {
  if (pos >= text.size()) return false;
  return utf8::IsWordChar(utf8::DecodeAt(text, pos));
}

}  // namespace

LexiconMatcher::LexiconMatcher(const Lexicon& lexicon) : nodes_(1) {
  auto insert = [this](std::string_view form) -> Node& {
    int node = 0;
    for (char c : form) {
      const auto byte = static_cast<unsigned char>(c);
      auto it = nodes_[node].next.find(byte);
      if (it == nodes_[node].next.end()) {
        nodes_.emplace_back();
        it = nodes_[node].next.emplace(byte, static_cast<int>(nodes_.size()) - 1)
                 .first;
      }
      node = it->second;
    }
    return nodes_[node];
  };
  for (const auto& entry : lexicon.names) {
    for (const auto& form : entry.surface_forms) {
      if (form.empty()) continue;
      Node& node = insert(form);
      if (std::find(node.ids.begin(), node.ids.end(), entry.transmitter_id) ==
          node.ids.end()) {
        node.ids.push_back(entry.transmitter_id);
      }
    }
  }
  for (const auto& term : lexicon.transmission_terms) {
    if (!term.empty()) insert(term).term = true;
  }
  for (auto& node : nodes_) std::sort(node.ids.begin(), node.ids.end());
}

std::optional<LexiconMatcher::Match> LexiconMatcher::LongestAt(
    std::string_view text, size_t pos, size_t limit) const {
  const bool starts_in_word = WordCharAt(text, pos);
  if (starts_in_word && WordCharBefore(text, pos)) return std::nullopt;

  std::optional<Match> best;
  int node = 0;
  for (size_t i = pos; i < limit; ++i) {
    const auto it = nodes_[node].next.find(static_cast<unsigned char>(text[i]));
    if (it == nodes_[node].next.end()) break;
    node = it->second;
    const Node& n = nodes_[node];
    if (n.ids.empty() && !n.term) continue;
    const size_t end = i + 1;
    if (end < text.size() &&
        (static_cast<unsigned char>(text[end]) & 0xC0) == 0x80) {
      continue;  // ends inside a code point
    }
    if (WordCharBefore(text, end) && WordCharAt(text, end)) continue;
    Match match;
    match.end = end;
    if (!n.ids.empty()) {
      match.kind = SpanKind::kName;
      match.candidates = n.ids;
    } else {
      match.kind = SpanKind::kTransmissionTerm;
    }
    best = std::move(match);
  }
  return best;
}

void LexiconMatcher::TagRegion(std::string_view text, size_t begin,
                               size_t end, std::vector<Span>& spans) const {
  std::vector<Span> added;
  size_t next = 0;  // first existing span that ends after pos
  size_t pos = begin;
  while (pos < end) {
    while (next < spans.size() && spans[next].end <= pos) ++next;
    if (next < spans.size() && spans[next].start <= pos) {
      pos = spans[next].end;
      continue;
    }
    const size_t limit =
        next < spans.size() ? std::min(end, spans[next].start) : end;
    if (auto match = LongestAt(text, pos, limit)) {
      Span span;
      span.start = pos;
      span.end = match->end;
      span.kind = match->kind;
      span.candidates = std::move(match->candidates);
      added.push_back(std::move(span));
      pos = match->end;
    } else {
      pos += utf8::SequenceLength(text, pos);
    }
  }
  if (added.empty()) return;
  std::vector<Span> merged;
  merged.reserve(spans.size() + added.size());
  std::merge(spans.begin(), spans.end(), added.begin(), added.end(),
             std::back_inserter(merged),
             [](const Span& a, const Span& b) { return a.start < b.start; });
  spans = std::move(merged);
}

}  // namespace riwaya
