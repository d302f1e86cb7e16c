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

// Domain types shared by the markup, store and analytics layers: the
// three-valued thematic flag, prosopographic and bibliographic records,
// isnād chains and numeric link rows.

#ifndef RIWAYA_MODEL_H_
#define RIWAYA_MODEL_H_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace riwaya {

using Id = std::int64_t;

enum class ErrorKind {
  kZeroTotal,
  kEmptyWork,
  kSyntaxError,
  kDuplicateOrdinal,
  kDanglingReference,
  kNoLexicon,
  kIoError,
  kDuplicateFlagKey,
  kUnknownParent,
  kInvariantViolation,
  kUnknownEndpoint,
  kDuplicateLink,
  kUnknownId,
  kUnknownFlagKey,
  kInvalidArgument,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure in the library is reported as an Error. `line` is set for
// markup and TSV errors (1-based), `field` names the offending record field
// for invariant violations.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0,
        std::string field = {});

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  ErrorKind kind_;
  int line_;
  std::string field_;
};

// Three-valued thematic answer. kLiminal is the "in between" answer: the
// theme is implicit in the tradition but not stated.
enum class TriState { kYes, kNo, kLiminal };

std::string_view ToString(TriState value);
std::optional<TriState> ParseTriState(std::string_view text);

enum class TriMatch { kStrictYes, kYesOrLiminal, kLiminalOnly, kNoOnly };

std::string_view ToString(TriMatch mode);
std::optional<TriMatch> ParseTriMatch(std::string_view text);

constexpr bool TriMatches(TriState value, TriMatch mode) {
  switch (mode) {
    case TriMatch::kStrictYes:
      return value == TriState::kYes;
    case TriMatch::kYesOrLiminal:
      return value != TriState::kNo;
    case TriMatch::kLiminalOnly:
      return value == TriState::kLiminal;
    case TriMatch::kNoOnly:
      return value == TriState::kNo;
  }
  return false;
}

// The nine checkbox categories used for the maghāzī corpus.
const std::vector<std::string>& DefaultFlagVocabulary();

// Flag keys are short identifiers: [A-Za-z0-9_]+.
bool IsValidFlagKey(std::string_view key);

// Ordered key -> TriState map. Insertion order is kept so that markup flag
// directives and store rows serialize in a stable order.
class ThematicFlags {
 public:
  using Entry = std::pair<std::string, TriState>;

  ThematicFlags() = default;
  ThematicFlags(std::initializer_list<Entry> entries);

  // Missing keys read as NO.
  TriState Get(std::string_view key) const;
  bool Contains(std::string_view key) const;
  // Overwrites in place when the key exists, appends otherwise.
  void Set(std::string_view key, TriState value);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  // Returns flags in vocabulary order with every vocabulary key present.
  // Keys outside the vocabulary are reported through `unknown_key`.
  ThematicFlags Materialize(const std::vector<std::string>& vocabulary,
                            std::string* unknown_key) const;

  bool operator==(const ThematicFlags&) const = default;

 private:
  std::vector<Entry> entries_;
};

// 100 * count / total kept as an exact rational.
class Percent {
 public:
  Percent(std::int64_t count, std::int64_t total)
      : count_(count), total_(total) {}

  std::int64_t count() const { return count_; }
  std::int64_t total() const { return total_; }
  double value() const { return 100.0 * count_ / total_; }
  // Tenths of a percent, rounded half away from zero.
  std::int64_t RoundedTenths() const;
  // "61.9", "100.0", "0.0".
  std::string Render() const;

  bool operator==(const Percent&) const = default;

 private:
  std::int64_t count_;
  std::int64_t total_;
};

// Throws kZeroTotal when total is 0 and kInvalidArgument when count is
// negative or exceeds total.
Percent Percentage(std::int64_t count, std::int64_t total);

struct TransmitterRecord {
  Id id = 0;
  std::string canonical_name;
  std::vector<std::string> alt_names;
  std::optional<int> death_date_hijri;
  std::string notes;

  bool operator==(const TransmitterRecord&) const = default;
};

struct WorkRecord {
  Id id = 0;
  std::string title;
  std::string traditionist;
  // Compiler's death date, used as terminus post quem.
  std::optional<int> death_date_hijri;
  std::string edition_label;

  bool operator==(const WorkRecord&) const = default;
};

struct ChapterRecord {
  Id id = 0;
  Id work_id = 0;
  int ordinal = 0;
  std::string heading;

  bool operator==(const ChapterRecord&) const = default;
};

struct TransmitterRef {
  Id transmitter_id = 0;
  std::string surface_form;

  bool operator==(const TransmitterRef&) const = default;
};

// Stored collector-first: links[0] is the latest transmitter, the last
// element the earliest authority.
struct IsnadChain {
  std::vector<TransmitterRef> links;

  std::vector<Id> Ids() const;
  bool empty() const { return links.empty(); }
  size_t size() const { return links.size(); }

  bool operator==(const IsnadChain&) const = default;
};

struct TraditionRecord {
  Id id = 0;
  Id chapter_id = 0;
  int ordinal_in_chapter = 0;
  IsnadChain isnad;
  std::string matn_summary;
  ThematicFlags flags;
  // Set by import when the chain could not be resolved unambiguously.
  bool needs_review = false;

  bool operator==(const TraditionRecord&) const = default;
};

enum class LinkKind { kIndivTrad, kRecueilTrad, kIndivRecueil };

std::string_view ToString(LinkKind kind);

struct LinkRow {
  Id link_id = 0;
  Id left_id = 0;
  Id right_id = 0;
  LinkKind kind = LinkKind::kIndivTrad;

  bool operator==(const LinkRow&) const = default;
};

// Administrative or political function held by a transmitter. Stored only,
// no analytics read it.
struct FunctionRecord {
  Id id = 0;
  Id transmitter_id = 0;
  std::string label;
  std::string notes;

  bool operator==(const FunctionRecord&) const = default;
};

}  // namespace riwaya

#endif  // RIWAYA_MODEL_H_
