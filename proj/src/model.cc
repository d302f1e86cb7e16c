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

#include "riwaya/model.h"

#include <algorithm>

namespace riwaya {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kZeroTotal: return "ZeroTotal";
    case ErrorKind::kEmptyWork: return "EmptyWork";
    case ErrorKind::kSyntaxError: return "SyntaxError";
    case ErrorKind::kDuplicateOrdinal: return "DuplicateOrdinal";
    case ErrorKind::kDanglingReference: return "DanglingReference";
    case ErrorKind::kNoLexicon: return "NoLexicon";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kDuplicateFlagKey: return "DuplicateFlagKey";
    case ErrorKind::kUnknownParent: return "UnknownParent";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
    case ErrorKind::kUnknownEndpoint: return "UnknownEndpoint";
    case ErrorKind::kDuplicateLink: return "DuplicateLink";
    case ErrorKind::kUnknownId: return "UnknownId";
    case ErrorKind::kUnknownFlagKey: return "UnknownFlagKey";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, int line,
             std::string field)
    : std::runtime_error(message),
      kind_(kind),
      line_(line),
      field_(std::move(field)) {}

std::string_view ToString(TriState value) {
  switch (value) {
    case TriState::kYes: return "yes";
    case TriState::kNo: return "no";
    case TriState::kLiminal: return "liminal";
  }
  return "no";
}

std::optional<TriState> ParseTriState(std::string_view text) {
  if (text == "yes") return TriState::kYes;
  if (text == "no") return TriState::kNo;
  if (text == "liminal") return TriState::kLiminal;
  return std::nullopt;
}

std::string_view ToString(TriMatch mode) {
  switch (mode) {
    case TriMatch::kStrictYes: return "strict-yes";
    case TriMatch::kYesOrLiminal: return "yes-or-liminal";
    case TriMatch::kLiminalOnly: return "liminal-only";
    case TriMatch::kNoOnly: return "no-only";
  }
  return "strict-yes";
}

std::optional<TriMatch> ParseTriMatch(std::string_view text) {
  for (TriMatch mode : {TriMatch::kStrictYes, TriMatch::kYesOrLiminal,
                        TriMatch::kLiminalOnly, TriMatch::kNoOnly}) {
    if (text == ToString(mode)) return mode;
  }
  return std::nullopt;
}

const std::vector<std::string>& DefaultFlagVocabulary() {
  static const std::vector<std::string> vocabulary = {
      "trad_proph", "trad_bakr",   "trad_umar", "trad_uthm", "miracle",
      "diplomatique", "theologique", "politique", "militaire"};
  return vocabulary;
}

bool IsValidFlagKey(std::string_view key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

ThematicFlags::ThematicFlags(std::initializer_list<Entry> entries) {
  for (const auto& [key, value] : entries) Set(key, value);
}

TriState ThematicFlags::Get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return TriState::kNo;
}

bool ThematicFlags::Contains(std::string_view key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.first == key; });
}

void ThematicFlags::Set(std::string_view key, TriState value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(std::string(key), value);
}

ThematicFlags ThematicFlags::Materialize(
    const std::vector<std::string>& vocabulary,
    std::string* unknown_key) const {
  for (const auto& [key, value] : entries_) {
    if (std::find(vocabulary.begin(), vocabulary.end(), key) ==
        vocabulary.end()) {
      if (unknown_key != nullptr) *unknown_key = key;
      return {};
    }
  }
  ThematicFlags out;
  for (const auto& key : vocabulary) out.entries_.emplace_back(key, Get(key));
  return out;
}

std::int64_t Percent::RoundedTenths() const {
  // 1000 * count / total, half away from zero. Both operands are
  // non-negative so this is floor(x + 1/2).
  return (2000 * count_ + total_) / (2 * total_);
}

std::string Percent::Render() const {
  const std::int64_t tenths = RoundedTenths();
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

Percent Percentage(std::int64_t count, std::int64_t total) {
  if (total == 0) {
    throw Error(ErrorKind::kZeroTotal, "percentage of an empty total");
  }
  if (count < 0 || total < 0 || count > total) {
    throw Error(ErrorKind::kInvalidArgument,
                "percentage count " + std::to_string(count) +
                    " outside [0, " + std::to_string(total) + "]");
  }
  return Percent(count, total);
}

std::vector<Id> IsnadChain::Ids() const {
  std::vector<Id> ids;
  ids.reserve(links.size());
  for (const auto& link : links) ids.push_back(link.transmitter_id);
  return ids;
}

std::string_view ToString(LinkKind kind) {
  switch (kind) {
    case LinkKind::kIndivTrad: return "indiv_trad";
    case LinkKind::kRecueilTrad: return "recueil_trad";
    case LinkKind::kIndivRecueil: return "indiv_recueil";
  }
  return "indiv_trad";
}

}  // namespace riwaya
