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

#include "riwaya/markup.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "lexicon_matcher.h"
#include "tsv.h"
#include "utf8.h"

namespace riwaya {
namespace {

[[noreturn]] void SyntaxError(int line, const std::string& reason) {
  throw Error(ErrorKind::kSyntaxError, reason, line);
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// ---------------------------------------------------------------------------
// Inline annotations.

// Appends the plain text of `line` to `out`, recording annotation spans at
// their offsets in `out`.
void ParseInline(std::string_view line, int line_no, const Lexicon* lexicon,
                 std::string& out, std::vector<Span>& spans) {
  size_t i = 0;
  while (i < line.size()) {
    const size_t at = line.find('@', i);
    if (at == std::string_view::npos) {
      out.append(line.substr(i));
      return;
    }
    out.append(line.substr(i, at - i));
    std::string_view rest = line.substr(at);

    Span span;
    std::string_view tail;
    if (StartsWith(rest, "@NAME[")) {
      const size_t close = rest.find(']');
      if (close == std::string_view::npos) {
        SyntaxError(line_no, "unterminated @NAME[ id list");
      }
      const std::string_view id_list = rest.substr(6, close - 6);
      std::set<Id> ids;
      for (std::string_view piece : tsv::SplitEscaped(id_list, '|')) {
        const auto id = tsv::ParseInt(piece);
        if (!id || *id <= 0) {
          SyntaxError(line_no, "bad transmitter id '" + std::string(piece) +
                                   "' in @NAME");
        }
        if (lexicon != nullptr && !lexicon->HasName(*id)) {
          throw Error(ErrorKind::kDanglingReference,
                      "@NAME refers to unknown transmitter " +
                          std::to_string(*id),
                      line_no);
        }
        ids.insert(*id);
      }
      span.kind = SpanKind::kName;
      span.candidates.assign(ids.begin(), ids.end());
      tail = rest.substr(close + 1);
    } else if (StartsWith(rest, "@TERM{")) {
      span.kind = SpanKind::kTransmissionTerm;
      tail = rest.substr(5);
    } else if (StartsWith(rest, "@TAG[")) {
      const size_t close = rest.find(']');
      if (close == std::string_view::npos || close == 5) {
        SyntaxError(line_no, "bad @TAG[ label");
      }
      span.kind = SpanKind::kCustomTag;
      span.label = std::string(rest.substr(5, close - 5));
      tail = rest.substr(close + 1);
    } else {
      out += '@';
      i = at + 1;
      continue;
    }

    if (tail.empty() || tail.front() != '{') {
      SyntaxError(line_no, "annotation must be followed by '{'");
    }
    const size_t close = tail.find('}');
    if (close == std::string_view::npos) {
      SyntaxError(line_no, "unterminated annotation body");
    }
    const std::string_view surface = tail.substr(1, close - 1);
    if (surface.empty()) SyntaxError(line_no, "empty annotation body");
    span.start = out.size();
    out.append(surface);
    span.end = out.size();
    spans.push_back(std::move(span));
    i = static_cast<size_t>(tail.data() - line.data()) + close + 1;
  }
}

void RenderRegion(const TraditionBlock& block, size_t begin, size_t end,
                  std::string& out) {
  size_t pos = begin;
  for (const Span& span : block.spans) {
    if (span.start < begin || span.end > end) continue;
    out.append(block.raw_text, pos, span.start - pos);
    const std::string_view text = block.Text(span);
    switch (span.kind) {
      case SpanKind::kName: {
        out += "@NAME[";
        for (size_t k = 0; k < span.candidates.size(); ++k) {
          if (k > 0) out += '|';
          out += std::to_string(span.candidates[k]);
        }
        out += "]{";
        break;
      }
      case SpanKind::kTransmissionTerm:
        out += "@TERM{";
        break;
      case SpanKind::kCustomTag:
        out += "@TAG[" + span.label + "]{";
        break;
      default:
        out += "{";
    }
    out.append(text);
    out += '}';
    pos = span.end;
  }
  out.append(block.raw_text, pos, end - pos);
}

// ---------------------------------------------------------------------------
// Header attributes.

using Attributes = std::map<std::string, std::string, std::less<>>;

Attributes ParseAttributes(std::string_view text, int line_no) {
  Attributes attrs;
  size_t i = 0;
  while (true) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) return attrs;
    const size_t eq = text.find('=', i);
    if (eq == std::string_view::npos) {
      SyntaxError(line_no, "expected key=value");
    }
    std::string key(text.substr(i, eq - i));
    if (key.empty() || key.find(' ') != std::string::npos) {
      SyntaxError(line_no, "malformed attribute name '" + key + "'");
    }
    i = eq + 1;
    std::string value;
    if (i < text.size() && text[i] == '"') {
      ++i;
      bool closed = false;
      while (i < text.size()) {
        const char c = text[i++];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c == '\\') {
          if (i >= text.size()) break;
          const char e = text[i++];
          if (e == 'n') {
            value += '\n';
          } else if (e == '"' || e == '\\') {
            value += e;
          } else {
            SyntaxError(line_no, "unknown escape in attribute " + key);
          }
        } else {
          value += c;
        }
      }
      if (!closed) SyntaxError(line_no, "unterminated string for " + key);
    } else {
      const size_t space = std::min(text.find(' ', i), text.size());
      value = std::string(text.substr(i, space - i));
      i = space;
    }
    if (i < text.size() && text[i] != ' ') {
      SyntaxError(line_no, "expected space after attribute " + key);
    }
    if (!attrs.emplace(key, std::move(value)).second) {
      SyntaxError(line_no, "repeated attribute " + key);
    }
  }
}

std::string Take(Attributes& attrs, const char* key, int line_no) {
  auto it = attrs.find(key);
  if (it == attrs.end()) {
    SyntaxError(line_no, std::string("missing attribute ") + key);
  }
  std::string value = std::move(it->second);
  attrs.erase(it);
  return value;
}

Id TakePositive(Attributes& attrs, const char* key, int line_no) {
  const std::string value = Take(attrs, key, line_no);
  const auto parsed = tsv::ParseInt(value);
  if (!parsed || *parsed <= 0) {
    SyntaxError(line_no, std::string(key) + " must be a positive integer");
  }
  return *parsed;
}

void RejectLeftovers(const Attributes& attrs, int line_no) {
  if (!attrs.empty()) {
    SyntaxError(line_no, "unknown attribute " + attrs.begin()->first);
  }
}

std::string Quote(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

// ---------------------------------------------------------------------------
// Parser.

struct TextLine {
  std::string_view text;
  int line_no = 0;
};

struct PendingBlock {
  TraditionBlock block;
  int line_no = 0;
  std::optional<TextLine> isnad;
  std::optional<std::vector<TextLine>> matn;
  std::vector<TextLine> running;
};

class Parser {
 public:
  Parser(std::string_view text, const Lexicon* lexicon)
      : text_(text), lexicon_(lexicon) {}

  MarkupDocument Run() {
    if (!utf8::IsValid(text_)) {
      SyntaxError(utf8::FirstInvalidLine(text_), "invalid UTF-8");
    }
    const auto lines = tsv::Lines(text_);
    for (size_t n = 0; n < lines.size(); ++n) {
      const int line_no = static_cast<int>(n) + 1;
      std::string_view line = lines[n];
      if (!line.empty() && line.back() == '\r') {
        SyntaxError(line_no, "CR line ending");
      }
      if (in_matn_) {
        if (line == "}") {
          in_matn_ = false;
        } else {
          pending_->matn->push_back({line, line_no});
        }
        continue;
      }
      HandleLine(line, line_no);
    }
    if (in_matn_) SyntaxError(matn_open_line_, "unterminated @MATN{");
    FinishBlock();
    return std::move(doc_);
  }

 private:
  void HandleLine(std::string_view line, int line_no) {
    if (line.empty() || line.front() == ';') return;
    if (StartsWith(line, "###TRAD")) {
      OpenTradition(line.substr(7), line_no);
    } else if (StartsWith(line, "##CHAPTER")) {
      OpenChapter(line.substr(9), line_no);
    } else if (StartsWith(line, "#WORK")) {
      OpenWork(line.substr(5), line_no);
    } else if (line.front() == '#') {
      SyntaxError(line_no, "unknown header directive");
    } else if (!pending_) {
      SyntaxError(line_no, "text outside a ###TRAD block");
    } else if (StartsWith(line, "%FLAG ")) {
      ParseFlag(line.substr(6), line_no);
    } else if (line.front() == '%') {
      SyntaxError(line_no, "unknown % directive");
    } else if (StartsWith(line, "@ISNAD{")) {
      if (pending_->isnad) SyntaxError(line_no, "second @ISNAD in tradition");
      if (line.back() != '}' || line.size() < 8) {
        SyntaxError(line_no, "@ISNAD{ must close on the same line");
      }
      pending_->isnad = TextLine{line.substr(7, line.size() - 8), line_no};
    } else if (StartsWith(line, "@MATN{")) {
      if (pending_->matn) SyntaxError(line_no, "second @MATN in tradition");
      pending_->matn.emplace();
      if (line == "@MATN{") {
        in_matn_ = true;
        matn_open_line_ = line_no;
      } else if (line.back() == '}') {
        pending_->matn->push_back({line.substr(6, line.size() - 7), line_no});
      } else {
        SyntaxError(line_no, "@MATN{ must be alone on its line");
      }
    } else if (line.front() == '@' && !StartsWith(line, "@NAME[") &&
               !StartsWith(line, "@TERM{") && !StartsWith(line, "@TAG[")) {
      SyntaxError(line_no, "unknown @ directive");
    } else {
      pending_->running.push_back({line, line_no});
    }
  }

  void OpenWork(std::string_view rest, int line_no) {
    FinishBlock();
    if (!rest.empty() && rest.front() != ' ') {
      SyntaxError(line_no, "unknown header directive");
    }
    Attributes attrs = ParseAttributes(rest, line_no);
    WorkBlock work;
    work.id = TakePositive(attrs, "id", line_no);
    work.title = Take(attrs, "title", line_no);
    work.traditionist = Take(attrs, "traditionist", line_no);
    const std::string died = Take(attrs, "died", line_no);
    if (died != "none") {
      const auto year = tsv::ParseInt(died);
      if (!year) SyntaxError(line_no, "died must be an integer or none");
      work.died = static_cast<int>(*year);
    }
    work.edition = Take(attrs, "edition", line_no);
    RejectLeftovers(attrs, line_no);
    if (work.title.empty()) SyntaxError(line_no, "empty work title");
    if (!work_ids_.insert(work.id).second) {
      SyntaxError(line_no, "duplicate work id " + std::to_string(work.id));
    }
    doc_.works.push_back(std::move(work));
  }

  void OpenChapter(std::string_view rest, int line_no) {
    FinishBlock();
    if (!rest.empty() && rest.front() != ' ') {
      SyntaxError(line_no, "unknown header directive");
    }
    if (doc_.works.empty()) SyntaxError(line_no, "##CHAPTER before #WORK");
    Attributes attrs = ParseAttributes(rest, line_no);
    ChapterBlock chapter;
    chapter.id = TakePositive(attrs, "id", line_no);
    chapter.ordinal = static_cast<int>(TakePositive(attrs, "ordinal", line_no));
    chapter.heading = Take(attrs, "heading", line_no);
    RejectLeftovers(attrs, line_no);
    if (!chapter_ids_.insert(chapter.id).second) {
      SyntaxError(line_no, "duplicate chapter id " + std::to_string(chapter.id));
    }
    auto& chapters = doc_.works.back().chapters;
    for (const auto& c : chapters) {
      if (c.ordinal == chapter.ordinal) {
        throw Error(ErrorKind::kDuplicateOrdinal,
                    "chapter ordinal " +
                        std::to_string(chapter.ordinal) +
                        " repeated in work " +
                        std::to_string(doc_.works.back().id),
                    line_no);
      }
    }
    chapters.push_back(std::move(chapter));
  }

  void OpenTradition(std::string_view rest, int line_no) {
    FinishBlock();
    if (!rest.empty() && rest.front() != ' ') {
      SyntaxError(line_no, "unknown header directive");
    }
    if (doc_.works.empty() || doc_.works.back().chapters.empty()) {
      SyntaxError(line_no, "###TRAD before ##CHAPTER");
    }
    Attributes attrs = ParseAttributes(rest, line_no);
    PendingBlock pending;
    pending.line_no = line_no;
    pending.block.id = TakePositive(attrs, "id", line_no);
    pending.block.ordinal =
        static_cast<int>(TakePositive(attrs, "ordinal", line_no));
    RejectLeftovers(attrs, line_no);
    if (!tradition_ids_.insert(pending.block.id).second) {
      SyntaxError(line_no,
                  "duplicate tradition id " + std::to_string(pending.block.id));
    }
    for (const auto& t : doc_.works.back().chapters.back().traditions) {
      if (t.ordinal == pending.block.ordinal) {
        throw Error(ErrorKind::kDuplicateOrdinal,
                    "tradition ordinal " +
                        std::to_string(pending.block.ordinal) +
                        " repeated in chapter " +
                        std::to_string(doc_.works.back().chapters.back().id),
                    line_no);
      }
    }
    pending_ = std::move(pending);
  }

  void ParseFlag(std::string_view body, int line_no) {
    const size_t eq = body.find('=');
    if (eq == std::string_view::npos) SyntaxError(line_no, "%FLAG needs key=value");
    const std::string_view key = body.substr(0, eq);
    if (!IsValidFlagKey(key)) {
      SyntaxError(line_no, "bad flag key '" + std::string(key) + "'");
    }
    const auto value = ParseTriState(body.substr(eq + 1));
    if (!value) {
      SyntaxError(line_no, "flag value must be yes, no or liminal");
    }
    if (pending_->block.flags.Contains(key)) {
      SyntaxError(line_no, "flag " + std::string(key) + " set twice");
    }
    pending_->block.flags.Set(key, *value);
  }

  void FinishBlock() {
    if (!pending_) return;
    PendingBlock& p = *pending_;
    TraditionBlock& block = p.block;
    if (p.isnad || p.matn) {
      if (!p.running.empty()) {
        SyntaxError(p.running.front().line_no,
                    "running text mixed with @ISNAD/@MATN segments");
      }
      block.segmented = true;
      if (p.isnad) {
        ParseInline(p.isnad->text, p.isnad->line_no, lexicon_, block.raw_text,
                    block.spans);
        block.isnad_segment =
            Span{0, block.raw_text.size(), SpanKind::kIsnadSegment, {}, {}};
      }
      if (p.matn) {
        if (p.isnad) block.raw_text += '\n';
        const size_t start = block.raw_text.size();
        for (size_t k = 0; k < p.matn->size(); ++k) {
          if (k > 0) block.raw_text += '\n';
          ParseInline((*p.matn)[k].text, (*p.matn)[k].line_no, lexicon_,
                      block.raw_text, block.spans);
        }
        block.matn_segment =
            Span{start, block.raw_text.size(), SpanKind::kMatnSegment, {}, {}};
      }
    } else {
      for (size_t k = 0; k < p.running.size(); ++k) {
        if (k > 0) block.raw_text += '\n';
        ParseInline(p.running[k].text, p.running[k].line_no, lexicon_,
                    block.raw_text, block.spans);
      }
    }
    doc_.works.back().chapters.back().traditions.push_back(std::move(block));
    pending_.reset();
  }

  std::string_view text_;
  const Lexicon* lexicon_;
  MarkupDocument doc_;
  std::optional<PendingBlock> pending_;
  bool in_matn_ = false;
  int matn_open_line_ = 0;
  std::set<Id> work_ids_, chapter_ids_, tradition_ids_;
};

template <typename T, typename Key>
std::vector<const T*> SortedBy(const std::vector<T>& items, Key key) {
  std::vector<const T*> out;
  for (const auto& item : items) out.push_back(&item);
  std::stable_sort(out.begin(), out.end(),
                   [&](const T* a, const T* b) { return key(*a) < key(*b); });
  return out;
}

void SerializeBlock(const TraditionBlock& block, std::string& out) {
  out += "###TRAD id=" + std::to_string(block.id) +
         " ordinal=" + std::to_string(block.ordinal) + "\n";
  if (block.segmented) {
    if (block.isnad_segment) {
      out += "@ISNAD{";
      RenderRegion(block, block.isnad_segment->start, block.isnad_segment->end,
                   out);
      out += "}\n";
    }
    if (block.matn_segment) {
      out += "@MATN{\n";
      if (block.matn_segment->end > block.matn_segment->start) {
        RenderRegion(block, block.matn_segment->start, block.matn_segment->end,
                     out);
        out += '\n';
      }
      out += "}\n";
    }
  } else if (!block.raw_text.empty()) {
    RenderRegion(block, 0, block.raw_text.size(), out);
    out += '\n';
  }
  for (const auto& [key, value] : block.flags.entries()) {
    out += "%FLAG " + key + "=" + std::string(ToString(value)) + "\n";
  }
}

// Spans already occupying a block, sorted by start.
std::vector<Span> SortedSpans(std::vector<Span> spans) {
  std::stable_sort(spans.begin(), spans.end(),
                   [](const Span& a, const Span& b) { return a.start < b.start; });
  return spans;
}

bool IsSeparator(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == ',' || c == ';' ||
         c == ':' || c == '.';
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view TraditionBlock::IsnadText() const {
  return isnad_segment ? Text(*isnad_segment) : std::string_view();
}

std::string_view TraditionBlock::MatnText() const {
  return matn_segment ? Text(*matn_segment) : std::string_view();
}

TraditionBlock MakeSegmentedBlock(Id id, int ordinal,
                                  std::optional<std::string> isnad,
                                  std::optional<std::string> matn) {
  TraditionBlock block;
  block.id = id;
  block.ordinal = ordinal;
  block.segmented = true;
  if (isnad) {
    block.raw_text = *isnad;
    block.isnad_segment =
        Span{0, block.raw_text.size(), SpanKind::kIsnadSegment, {}, {}};
  }
  if (matn) {
    if (isnad) block.raw_text += '\n';
    const size_t start = block.raw_text.size();
    block.raw_text += *matn;
    block.matn_segment =
        Span{start, block.raw_text.size(), SpanKind::kMatnSegment, {}, {}};
  }
  return block;
}

TraditionBlock MakeRunningTextBlock(Id id, int ordinal, std::string text) {
  TraditionBlock block;
  block.id = id;
  block.ordinal = ordinal;
  block.raw_text = std::move(text);
  return block;
}

size_t MarkupDocument::TraditionCount() const {
  size_t count = 0;
  for (const auto& work : works) {
    for (const auto& chapter : work.chapters) count += chapter.traditions.size();
  }
  return count;
}

bool Lexicon::HasName(Id id) const {
  return std::any_of(names.begin(), names.end(),
                     [&](const NameEntry& e) { return e.transmitter_id == id; });
}

void Lexicon::AddName(Id id, std::string surface_form) {
  for (auto& entry : names) {
    if (entry.transmitter_id == id) {
      if (std::find(entry.surface_forms.begin(), entry.surface_forms.end(),
                    surface_form) == entry.surface_forms.end()) {
        entry.surface_forms.push_back(std::move(surface_form));
      }
      return;
    }
  }
  names.push_back({id, {std::move(surface_form)}});
}

Lexicon ParseLexicon(std::string_view text) {
  if (!utf8::IsValid(text)) {
    SyntaxError(utf8::FirstInvalidLine(text), "invalid UTF-8");
  }
  const auto lines = tsv::Lines(text);
  if (lines.empty() || lines[0] != "transmitter_id\tsurface_form") {
    SyntaxError(1, "lexicon header must be 'transmitter_id<TAB>surface_form'");
  }
  Lexicon lexicon;
  for (size_t n = 1; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    if (lines[n].empty()) continue;
    const auto fields = tsv::SplitTabs(lines[n]);
    if (fields.size() != 2) SyntaxError(line_no, "expected 2 columns");
    const auto id = tsv::ParseInt(fields[0]);
    if (!id || *id < 0) SyntaxError(line_no, "bad transmitter_id");
    auto form = tsv::Unescape(fields[1]);
    if (!form || form->empty()) SyntaxError(line_no, "bad surface_form");
    if (form->find_first_of("{}\n") != std::string::npos) {
      SyntaxError(line_no, "surface forms may not contain braces or newlines");
    }
    if (*id == 0) {
      if (std::find(lexicon.transmission_terms.begin(),
                    lexicon.transmission_terms.end(),
                    *form) == lexicon.transmission_terms.end()) {
        lexicon.transmission_terms.push_back(std::move(*form));
      }
    } else {
      lexicon.AddName(*id, std::move(*form));
    }
  }
  return lexicon;
}

std::string SerializeLexicon(const Lexicon& lexicon) {
  std::string out = "transmitter_id\tsurface_form\n";
  for (const auto& entry : lexicon.names) {
    for (const auto& form : entry.surface_forms) {
      out += std::to_string(entry.transmitter_id) + "\t" + tsv::Escape(form) +
             "\n";
    }
  }
  for (const auto& term : lexicon.transmission_terms) {
    out += "0\t" + tsv::Escape(term) + "\n";
  }
  return out;
}

MarkupDocument ParseMarkup(std::string_view text, const Lexicon* lexicon) {
  return Parser(text, lexicon).Run();
}

std::string SerializeMarkup(const MarkupDocument& doc) {
  std::string out;
  auto separate = [&out] {
    if (!out.empty()) out += '\n';
  };
  for (const WorkBlock* work :
       SortedBy(doc.works, [](const WorkBlock& w) { return w.id; })) {
    separate();
    out += "#WORK id=" + std::to_string(work->id) +
           " title=" + Quote(work->title) +
           " traditionist=" + Quote(work->traditionist) + " died=" +
           (work->died ? std::to_string(*work->died) : std::string("none")) +
           " edition=" + Quote(work->edition) + "\n";
    for (const ChapterBlock* chapter :
         SortedBy(work->chapters, [](const ChapterBlock& c) { return c.ordinal; })) {
      separate();
      out += "##CHAPTER id=" + std::to_string(chapter->id) +
             " ordinal=" + std::to_string(chapter->ordinal) +
             " heading=" + Quote(chapter->heading) + "\n";
      for (const TraditionBlock* block :
           SortedBy(chapter->traditions,
                    [](const TraditionBlock& t) { return t.ordinal; })) {
        separate();
        SerializeBlock(*block, out);
      }
    }
  }
  return out;
}

MarkupDocument TagOccurrences(const MarkupDocument& doc,
                              const Lexicon& lexicon, TagScope scope) {
  if (lexicon.empty()) return doc;
  const LexiconMatcher matcher(lexicon);
  MarkupDocument tagged = doc;
  for (auto& work : tagged.works) {
    for (auto& chapter : work.chapters) {
      for (auto& block : chapter.traditions) {
        std::vector<Span> spans = SortedSpans(block.spans);
        auto tag = [&](const std::optional<Span>& region) {
          if (!region) return;
          matcher.TagRegion(block.raw_text, region->start, region->end, spans);
        };
        if (block.segmented) {
          if (scope != TagScope::kMatnOnly) tag(block.isnad_segment);
          if (scope != TagScope::kIsnadOnly) tag(block.matn_segment);
        } else if (scope == TagScope::kAll) {
          matcher.TagRegion(block.raw_text, 0, block.raw_text.size(), spans);
        }
        block.spans = std::move(spans);
      }
    }
  }
  return tagged;
}

namespace {

Extraction ChainFromNames(const TraditionBlock& block,
                          const std::vector<const Span*>& names) {
  IsnadChain chain;
  AmbiguityReport report;
  for (size_t position = 0; position < names.size(); ++position) {
    const Span& span = *names[position];
    const std::string surface(block.Text(span));
    if (span.ambiguous()) {
      report.ambiguous.push_back({position, surface, span.candidates});
    } else {
      chain.links.push_back({span.candidates.front(), surface});
    }
  }
  Extraction extraction;
  if (report.ambiguous.empty()) {
    extraction.result = std::move(chain);
  } else {
    report.resolved = std::move(chain);
    extraction.result = std::move(report);
  }
  return extraction;
}

}  // namespace

Extraction ExtractIsnad(const TraditionBlock& block, const Lexicon& lexicon) {
  const LexiconMatcher matcher(lexicon);
  std::vector<Span> spans = SortedSpans(block.spans);

  if (block.segmented) {
    if (!block.isnad_segment) {
      Extraction extraction{IsnadChain{}, std::nullopt, block.matn_segment};
      return extraction;
    }
    const Span& isnad = *block.isnad_segment;
    matcher.TagRegion(block.raw_text, isnad.start, isnad.end, spans);
    std::vector<const Span*> names;
    for (const Span& span : spans) {
      if (span.kind == SpanKind::kName && span.start >= isnad.start &&
          span.end <= isnad.end) {
        names.push_back(&span);
      }
    }
    Extraction extraction = ChainFromNames(block, names);
    extraction.isnad_segment = block.isnad_segment;
    extraction.matn_segment = block.matn_segment;
    return extraction;
  }

  if (lexicon.names.empty()) {
    throw Error(ErrorKind::kNoLexicon,
                "heuristic isnad extraction needs a name lexicon");
  }
  const std::string& text = block.raw_text;
  matcher.TagRegion(text, 0, text.size(), spans);

  std::vector<const Span*> names;
  size_t pos = 0;
  size_t accepted_end = 0;
  std::optional<SpanKind> last;
  size_t next = 0;
  while (true) {
    while (pos < text.size() && IsSeparator(text[pos])) ++pos;
    while (next < spans.size() && spans[next].start < pos) ++next;
    if (next == spans.size() || spans[next].start != pos) break;
    const Span& token = spans[next];
    if (token.kind != SpanKind::kName &&
        token.kind != SpanKind::kTransmissionTerm) {
      break;
    }
    if (last && *last == token.kind) break;
    last = token.kind;
    if (token.kind == SpanKind::kName) names.push_back(&token);
    accepted_end = pos = token.end;
  }
  size_t matn_start = accepted_end;
  while (matn_start < text.size() && IsSeparator(text[matn_start])) ++matn_start;

  Extraction extraction = ChainFromNames(block, names);
  extraction.heuristic = true;
  extraction.isnad_segment = Span{0, accepted_end, SpanKind::kIsnadSegment, {}, {}};
  extraction.matn_segment =
      Span{matn_start, text.size(), SpanKind::kMatnSegment, {}, {}};
  return extraction;
}

std::vector<ConcordanceRow> Concordance(const MarkupDocument& doc,
                                        std::string_view lexeme,
                                        size_t window) {
  if (window > 200) {
    throw Error(ErrorKind::kInvalidArgument,
                "concordance window is limited to 200 characters");
  }
  std::vector<ConcordanceRow> rows;
  if (lexeme.empty()) return rows;
  for (const auto& work : doc.works) {
    for (const auto& chapter : work.chapters) {
      for (const auto& block : chapter.traditions) {
        const std::string_view text = block.raw_text;
        size_t pos = text.find(lexeme);
        while (pos != std::string_view::npos) {
          const size_t end = pos + lexeme.size();
          const size_t left = utf8::StepBack(text, pos, window);
          const size_t right = utf8::StepForward(text, end, window);
          rows.push_back({work.id, chapter.id, block.id, pos,
                          std::string(text.substr(left, pos - left)),
                          std::string(lexeme),
                          std::string(text.substr(end, right - end))});
          pos = text.find(lexeme, end);
        }
      }
    }
  }
  return rows;
}

}  // namespace riwaya
