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

// The `.rwy` corpus markup: a line-oriented format for OCR'd tradition
// collections.
//
//   #WORK id=1 title="Kitāb al-maġāzī" traditionist="al-Wāqidī" died=207 edition="Jones"
//   ##CHAPTER id=1 ordinal=1 heading="Badr"
//   ###TRAD id=1 ordinal=1
//   @ISNAD{@NAME[1]{al-Wāqidī} ← Abū Bakr b. Ismāʿīl ← ...}
//   @MATN{
//   free text, any number of lines
//   }
//   %FLAG militaire=yes
//
// A tradition block without @ISNAD/@MATN holds unsegmented running text
// (every non-directive line). Inline annotations may appear in any text:
// `@NAME[7]{Saʿd}` (resolved), `@NAME[7|12]{Saʿd}` (ambiguous),
// `@TERM{ʿan}` and `@TAG[label]{text}`. Lines starting with `;` are
// comments and blank lines outside @MATN are ignored; neither survives a
// parse/serialize cycle.
//
// All span offsets are byte offsets into TraditionBlock::raw_text.

#ifndef RIWAYA_MARKUP_H_
#define RIWAYA_MARKUP_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "riwaya/model.h"

namespace riwaya {

enum class SpanKind { kName, kTransmissionTerm, kIsnadSegment, kMatnSegment, kCustomTag };

struct Span {
  size_t start = 0;
  size_t end = 0;
  SpanKind kind = SpanKind::kName;
  // kName: one id when resolved, several when ambiguous.
  std::vector<Id> candidates;
  // kCustomTag label.
  std::string label;

  bool ambiguous() const { return candidates.size() > 1; }
  bool operator==(const Span&) const = default;
};

struct TraditionBlock {
  Id id = 0;
  int ordinal = 0;
  // Segmented blocks: isnād surface text, "\n", matn text (either part may
  // be absent). Unsegmented blocks: the running text lines joined by "\n".
  std::string raw_text;
  bool segmented = false;
  std::optional<Span> isnad_segment;
  std::optional<Span> matn_segment;
  ThematicFlags flags;
  // NAME, TRANSMISSION_TERM and CUSTOM_TAG spans sorted by start offset.
  std::vector<Span> spans;

  std::string_view Text(const Span& span) const {
    return std::string_view(raw_text).substr(span.start, span.end - span.start);
  }
  std::string_view IsnadText() const;
  std::string_view MatnText() const;

  bool operator==(const TraditionBlock&) const = default;
};

// Builds a segmented block from its two parts. Either part may be nullopt.
TraditionBlock MakeSegmentedBlock(Id id, int ordinal,
                                  std::optional<std::string> isnad,
                                  std::optional<std::string> matn);
// Builds an unsegmented running-text block.
TraditionBlock MakeRunningTextBlock(Id id, int ordinal, std::string text);

struct ChapterBlock {
  Id id = 0;
  int ordinal = 0;
  std::string heading;
  std::vector<TraditionBlock> traditions;

  bool operator==(const ChapterBlock&) const = default;
};

struct WorkBlock {
  Id id = 0;
  std::string title;
  std::string traditionist;
  std::optional<int> died;
  std::string edition;
  std::vector<ChapterBlock> chapters;

  bool operator==(const WorkBlock&) const = default;
};

struct MarkupDocument {
  std::vector<WorkBlock> works;

  size_t TraditionCount() const;
  bool operator==(const MarkupDocument&) const = default;
};

// Lexicon of transmitter surface forms and transmission terms. One surface
// form may belong to several transmitters; that is the ambiguity case.
struct Lexicon {
  struct NameEntry {
    Id transmitter_id = 0;
    std::vector<std::string> surface_forms;
  };
  std::vector<NameEntry> names;
  std::vector<std::string> transmission_terms;

  bool HasName(Id id) const;
  bool empty() const { return names.empty() && transmission_terms.empty(); }
  void AddName(Id id, std::string surface_form);
};

// `.lex` TSV: header `transmitter_id<TAB>surface_form`, one row per form,
// transmission terms under the reserved id 0.
Lexicon ParseLexicon(std::string_view text);
std::string SerializeLexicon(const Lexicon& lexicon);

// Throws kSyntaxError / kDuplicateOrdinal / kDanglingReference with the
// 1-based line number. DanglingReference is only checked when `lexicon`
// is given.
MarkupDocument ParseMarkup(std::string_view text,
                           const Lexicon* lexicon = nullptr);

// Canonical form: works sorted by id, chapters and traditions by ordinal,
// a blank line before every header except the first, attributes in fixed
// order, then @ISNAD, @MATN and %FLAG lines.
std::string SerializeMarkup(const MarkupDocument& doc);

enum class TagScope { kIsnadOnly, kMatnOnly, kAll };

// Adds NAME and TRANSMISSION_TERM spans for every leftmost-longest match of
// a lexicon form inside the scope. Existing spans are kept and never
// overlapped. Unsegmented blocks are tagged only under kAll.
MarkupDocument TagOccurrences(const MarkupDocument& doc,
                              const Lexicon& lexicon, TagScope scope);

struct AmbiguousLink {
  // 0-based position among the NAME spans of the isnād.
  size_t position = 0;
  std::string surface_form;
  std::vector<Id> candidates;

  bool operator==(const AmbiguousLink&) const = default;
};

struct AmbiguityReport {
  std::vector<AmbiguousLink> ambiguous;
  // The resolved links, in chain order, with ambiguous positions left out.
  IsnadChain resolved;

  bool operator==(const AmbiguityReport&) const = default;
};

struct Extraction {
  std::variant<IsnadChain, AmbiguityReport> result;
  // Byte ranges into raw_text. For heuristic extraction these are the
  // accepted token prefix and the remainder.
  std::optional<Span> isnad_segment;
  std::optional<Span> matn_segment;
  bool heuristic = false;

  bool ambiguous() const {
    return std::holds_alternative<AmbiguityReport>(result);
  }
  const IsnadChain& chain() const { return std::get<IsnadChain>(result); }
  const AmbiguityReport& report() const {
    return std::get<AmbiguityReport>(result);
  }
};

// Segmented blocks read only the isnād segment. Unsegmented blocks are
// walked token by token from the start, accepting alternating NAME and
// TRANSMISSION_TERM tokens until the first token that is neither; throws
// kNoLexicon there when the lexicon has no names.
Extraction ExtractIsnad(const TraditionBlock& block, const Lexicon& lexicon);

struct ConcordanceRow {
  Id work_id = 0;
  Id chapter_id = 0;
  Id tradition_id = 0;
  size_t offset = 0;
  std::string left;
  std::string match;
  std::string right;

  bool operator==(const ConcordanceRow&) const = default;
};

// Keyword in context over every block, in document order. `window` counts
// code points and is clipped at the block boundaries; at most 200.
std::vector<ConcordanceRow> Concordance(const MarkupDocument& doc,
                                        std::string_view lexeme,
                                        size_t window);

}  // namespace riwaya

#endif  // RIWAYA_MARKUP_H_
