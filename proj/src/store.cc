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

#include "riwaya/store.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "tsv.h"

namespace riwaya {
namespace fs = std::filesystem;
namespace {

constexpr int kFormatVersion = 1;

constexpr const char* kTransmittersHeader =
    "id\tcanonical_name\talt_names\tdeath_date_hijri\tnotes";
constexpr const char* kWorksHeader =
    "id\ttitle\ttraditionist\tdeath_date_hijri\tedition_label";
constexpr const char* kChaptersHeader = "id\twork_id\tordinal\theading";
constexpr const char* kTraditionsHeader =
    "id\tchapter_id\tordinal_in_chapter\tisnad\tmatn_summary\tflags\tneeds_"
    "review";
constexpr const char* kFunctionsHeader = "id\ttransmitter_id\tlabel\tnotes";

struct LinkTable {
  LinkKind kind;
  const char* file;
  const char* header;
  const char* counter;
};

constexpr LinkTable kLinkTables[] = {
    {LinkKind::kIndivTrad, "link_indiv_trad.tsv",
     "id_indiv/trad\tid_indiv\tid_trad", "link_indiv_trad"},
    {LinkKind::kRecueilTrad, "link_recueil_trad.tsv",
     "id_recueil/trad\tid_recueil\tid_trad", "link_recueil_trad"},
    {LinkKind::kIndivRecueil, "link_indiv_recueil.tsv",
     "id_indiv/recueil\tid_indiv\tid_recueil", "link_indiv_recueil"},
};

[[noreturn]] void Invariant(const std::string& field,
                            const std::string& message) {
  throw Error(ErrorKind::kInvariantViolation, field + ": " + message, 0, field);
}

[[noreturn]] void IoError(const std::string& message) {
  throw Error(ErrorKind::kIoError, message);
}

std::string OptionalInt(const std::optional<int>& value) {
  return value ? std::to_string(*value) : std::string();
}

std::string JoinList(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += tsv::Escape(items[i], sep);
  }
  return out;
}

std::string ChainField(const IsnadChain& chain) {
  std::string out;
  for (size_t i = 0; i < chain.links.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(chain.links[i].transmitter_id) + ":" +
           tsv::Escape(chain.links[i].surface_form, ',');
  }
  return out;
}

std::string FlagsField(const ThematicFlags& flags) {
  std::string out;
  for (const auto& [key, value] : flags.entries()) {
    if (!out.empty()) out += ';';
    out += key + "=" + std::string(ToString(value));
  }
  return out;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) IoError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) IoError("failed writing " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Row reader for one TSV table. Errors carry the file name and line.
class TableReader {
 public:
  TableReader(const fs::path& path, const char* header, size_t columns)
      : name_(path.filename().string()),
        content_(ReadFile(path)),
        lines_(tsv::Lines(content_)),
        columns_(columns) {
    if (lines_.empty() || lines_[0] != header) Fail(1, "unexpected header");
  }

  bool Next() {
    if (++row_ >= lines_.size()) return false;
    fields_ = tsv::SplitTabs(lines_[row_]);
    if (fields_.size() != columns_) {
      Fail(Line(), "expected " + std::to_string(columns_) + " columns");
    }
    return true;
  }

  int Line() const { return static_cast<int>(row_) + 1; }
  std::string_view Raw(size_t column) const { return fields_[column]; }

  std::string Text(size_t column) const {
    auto value = tsv::Unescape(fields_[column]);
    if (!value) Fail(Line(), "bad escape in column " + std::to_string(column + 1));
    return *value;
  }

  std::int64_t Int(size_t column) const {
    const auto value = tsv::ParseInt(fields_[column]);
    if (!value) Fail(Line(), "expected integer in column " + std::to_string(column + 1));
    return *value;
  }

  std::optional<int> OptInt(size_t column) const {
    if (fields_[column].empty()) return std::nullopt;
    return static_cast<int>(Int(column));
  }

  [[noreturn]] void Fail(int line, const std::string& reason) const {
    throw Error(ErrorKind::kInvariantViolation,
                name_ + ":" + std::to_string(line) + ": " + reason, line, name_);
  }

 private:
  std::string name_;
  std::string content_;
  std::vector<std::string_view> lines_;
  size_t columns_;
  size_t row_ = 0;
  std::vector<std::string_view> fields_;
};

std::vector<std::string> ParseList(const TableReader& reader,
                                   std::string_view raw, char sep) {
  std::vector<std::string> items;
  if (raw.empty()) return items;
  for (std::string_view piece : tsv::SplitEscaped(raw, sep)) {
    auto value = tsv::Unescape(piece);
    if (!value) reader.Fail(reader.Line(), "bad escape in list");
    items.push_back(std::move(*value));
  }
  return items;
}

void ValidateVocabulary(const std::vector<std::string>& vocabulary) {
  for (size_t i = 0; i < vocabulary.size(); ++i) {
    if (!IsValidFlagKey(vocabulary[i])) {
      Invariant("flag_vocabulary", "bad flag key '" + vocabulary[i] + "'");
    }
    for (size_t j = 0; j < i; ++j) {
      if (vocabulary[j] == vocabulary[i]) {
        throw Error(ErrorKind::kDuplicateFlagKey,
                    "flag key '" + vocabulary[i] + "' declared twice");
      }
    }
  }
}

template <typename T>
const T* FindById(const std::vector<T>& table, Id id) {
  if (id < 1 || id > static_cast<Id>(table.size())) return nullptr;
  return &table[static_cast<size_t>(id - 1)];
}

}  // namespace

Store::Store(std::vector<std::string> flag_vocabulary) {
  ValidateVocabulary(flag_vocabulary);
  tables_.vocabulary = std::move(flag_vocabulary);
}

Store Store::Create(const fs::path& path,
                    std::vector<std::string> flag_vocabulary) {
  Store store(std::move(flag_vocabulary));
  std::error_code ec;
  if (fs::exists(path, ec)) IoError(path.string() + " already exists");
  store.path_ = path;
  store.Save();
  return store;
}

Store Store::Open(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) IoError(path.string() + " is not a store directory");

  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(ReadFile(path / "manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvariantViolation,
                "manifest.json: " + std::string(e.what()), 0, "manifest");
  }
  std::vector<std::string> vocabulary;
  try {
    if (manifest.at("format_version").get<int>() != kFormatVersion) {
      Invariant("format_version", "unsupported store format version");
    }
    vocabulary = manifest.at("flag_vocabulary").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    Invariant("manifest", e.what());
  }

  Store store(std::move(vocabulary));
  store.path_ = path;

  {
    TableReader r(path / "transmitters.tsv", kTransmittersHeader, 5);
    while (r.Next()) {
      TransmitterRecord record{0, r.Text(1), ParseList(r, r.Raw(2), '|'),
                               r.OptInt(3), r.Text(4)};
      if (store.InsertTransmitter(std::move(record)) != r.Int(0)) {
        r.Fail(r.Line(), "ids must be sequential from 1");
      }
    }
  }
  {
    TableReader r(path / "works.tsv", kWorksHeader, 5);
    while (r.Next()) {
      WorkRecord record{0, r.Text(1), r.Text(2), r.OptInt(3), r.Text(4)};
      if (store.InsertWork(std::move(record)) != r.Int(0)) {
        r.Fail(r.Line(), "ids must be sequential from 1");
      }
    }
  }
  {
    TableReader r(path / "chapters.tsv", kChaptersHeader, 4);
    while (r.Next()) {
      ChapterRecord record{0, r.Int(1), static_cast<int>(r.Int(2)), r.Text(3)};
      if (store.InsertChapter(std::move(record)) != r.Int(0)) {
        r.Fail(r.Line(), "ids must be sequential from 1");
      }
    }
  }
  {
    TableReader r(path / "traditions.tsv", kTraditionsHeader, 7);
    while (r.Next()) {
      TraditionRecord record;
      record.chapter_id = r.Int(1);
      record.ordinal_in_chapter = static_cast<int>(r.Int(2));
      for (std::string_view piece : r.Raw(3).empty()
                                        ? std::vector<std::string_view>{}
                                        : tsv::SplitEscaped(r.Raw(3), ',')) {
        const size_t colon = piece.find(':');
        const auto id = tsv::ParseInt(piece.substr(0, colon));
        auto surface = colon == std::string_view::npos
                           ? std::nullopt
                           : tsv::Unescape(piece.substr(colon + 1));
        if (!id || !surface) r.Fail(r.Line(), "bad isnad entry");
        record.isnad.links.push_back({*id, std::move(*surface)});
      }
      record.matn_summary = r.Text(4);
      for (const std::string& entry : ParseList(r, r.Raw(5), ';')) {
        const size_t eq = entry.find('=');
        const auto value = eq == std::string::npos
                               ? std::nullopt
                               : ParseTriState(entry.substr(eq + 1));
        if (!value) r.Fail(r.Line(), "bad flag entry '" + entry + "'");
        record.flags.Set(entry.substr(0, eq), *value);
      }
      const auto review = r.Int(6);
      if (review != 0 && review != 1) r.Fail(r.Line(), "needs_review must be 0 or 1");
      record.needs_review = review == 1;
      if (store.InsertTradition(std::move(record)) != r.Int(0)) {
        r.Fail(r.Line(), "ids must be sequential from 1");
      }
    }
  }
  if (fs::exists(path / "functions.tsv", ec)) {
    TableReader r(path / "functions.tsv", kFunctionsHeader, 4);
    while (r.Next()) {
      FunctionRecord record{0, r.Int(1), r.Text(2), r.Text(3)};
      if (store.InsertFunction(std::move(record)) != r.Int(0)) {
        r.Fail(r.Line(), "ids must be sequential from 1");
      }
    }
  }
  for (const LinkTable& table : kLinkTables) {
    TableReader r(path / table.file, table.header, 3);
    while (r.Next()) {
      if (store.Link(table.kind, r.Int(1), r.Int(2)) != r.Int(0)) {
        r.Fail(r.Line(), "link ids must be sequential from 1");
      }
    }
  }

  try {
    const auto& counters = manifest.at("counters");
    const std::pair<const char*, Id> expected[] = {
        {"transmitters", store.NextTransmitterId()},
        {"works", store.NextWorkId()},
        {"chapters", store.NextChapterId()},
        {"traditions", store.NextTraditionId()},
        {"functions", Next(store.tables_.functions)},
        {"link_indiv_trad", Next(store.tables_.indiv_trad)},
        {"link_recueil_trad", Next(store.tables_.recueil_trad)},
        {"link_indiv_recueil", Next(store.tables_.indiv_recueil)},
    };
    for (const auto& [name, next] : expected) {
      if (counters.at(name).get<Id>() != next) {
        Invariant("counters", std::string(name) + " counter is not max id + 1");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    Invariant("counters", e.what());
  }
  return store;
}

void Store::Save() const {
  if (path_.empty()) IoError("store is not bound to a directory");
  fs::path target = path_;
  if (!target.has_filename()) target = target.parent_path();
  const fs::path staging = target.string() + ".staging";
  const fs::path retired = target.string() + ".retired";
  std::error_code ec;
  fs::remove_all(staging, ec);
  fs::remove_all(retired, ec);
  ExportTables(*this, staging);
  if (fs::exists(target, ec)) {
    fs::rename(target, retired, ec);
    if (ec) IoError("cannot replace " + target.string() + ": " + ec.message());
  }
  fs::rename(staging, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::rename(retired, target, ignored);
    IoError("cannot install " + target.string() + ": " + ec.message());
  }
  fs::remove_all(retired, ec);
}

bool Store::HasFlag(std::string_view key) const {
  return std::find(tables_.vocabulary.begin(), tables_.vocabulary.end(), key) !=
         tables_.vocabulary.end();
}

Id Store::InsertTransmitter(TransmitterRecord record) {
  if (record.canonical_name.empty()) {
    Invariant("canonical_name", "must not be empty");
  }
  for (const auto& alt : record.alt_names) {
    if (alt.empty()) Invariant("alt_names", "alternative names must not be empty");
  }
  record.id = NextTransmitterId();
  tables_.transmitters.push_back(std::move(record));
  return tables_.transmitters.back().id;
}

Id Store::InsertWork(WorkRecord record) {
  if (record.title.empty()) Invariant("title", "must not be empty");
  record.id = NextWorkId();
  tables_.works.push_back(std::move(record));
  chapters_per_work_.push_back(0);
  return tables_.works.back().id;
}

Id Store::InsertChapter(ChapterRecord record) {
  if (FindWork(record.work_id) == nullptr) {
    throw Error(ErrorKind::kUnknownParent,
                "chapter refers to unknown work " + std::to_string(record.work_id));
  }
  int& count = chapters_per_work_[static_cast<size_t>(record.work_id - 1)];
  if (record.ordinal != count + 1) {
    Invariant("ordinal", "chapter ordinal " + std::to_string(record.ordinal) +
                             " does not continue work " +
                             std::to_string(record.work_id) +
                             " (expected " + std::to_string(count + 1) + ")");
  }
  ++count;
  record.id = NextChapterId();
  tables_.chapters.push_back(std::move(record));
  return tables_.chapters.back().id;
}

Id Store::InsertTradition(TraditionRecord record) {
  if (FindChapter(record.chapter_id) == nullptr) {
    throw Error(ErrorKind::kUnknownParent,
                "tradition refers to unknown chapter " +
                    std::to_string(record.chapter_id));
  }
  if (record.ordinal_in_chapter < 1) {
    Invariant("ordinal_in_chapter", "must be positive");
  }
  if (tradition_slots_.count({record.chapter_id, record.ordinal_in_chapter}) > 0) {
    Invariant("ordinal_in_chapter",
              "ordinal " + std::to_string(record.ordinal_in_chapter) +
                  " already used in chapter " + std::to_string(record.chapter_id));
  }
  for (const auto& link : record.isnad.links) {
    if (FindTransmitter(link.transmitter_id) == nullptr) {
      throw Error(ErrorKind::kUnknownParent,
                  "isnad refers to unknown transmitter " +
                      std::to_string(link.transmitter_id));
    }
    if (link.surface_form.empty()) Invariant("isnad", "empty surface form");
  }
  std::string unknown;
  ThematicFlags flags = record.flags.Materialize(tables_.vocabulary, &unknown);
  if (!unknown.empty()) {
    Invariant("flags", "flag key '" + unknown + "' is not in the vocabulary");
  }
  record.flags = std::move(flags);
  record.id = NextTraditionId();
  tradition_slots_.insert({record.chapter_id, record.ordinal_in_chapter});
  tables_.traditions.push_back(std::move(record));
  return tables_.traditions.back().id;
}

Id Store::InsertFunction(FunctionRecord record) {
  if (FindTransmitter(record.transmitter_id) == nullptr) {
    throw Error(ErrorKind::kUnknownParent,
                "function refers to unknown transmitter " +
                    std::to_string(record.transmitter_id));
  }
  if (record.label.empty()) Invariant("label", "must not be empty");
  record.id = Next(tables_.functions);
  tables_.functions.push_back(std::move(record));
  return tables_.functions.back().id;
}

bool Store::EndpointExists(LinkKind kind, bool left, Id id) const {
  switch (kind) {
    case LinkKind::kIndivTrad:
      return left ? FindTransmitter(id) != nullptr : FindTradition(id) != nullptr;
    case LinkKind::kRecueilTrad:
      return left ? FindWork(id) != nullptr : FindTradition(id) != nullptr;
    case LinkKind::kIndivRecueil:
      return left ? FindTransmitter(id) != nullptr : FindWork(id) != nullptr;
  }
  return false;
}

Id Store::Link(LinkKind kind, Id left_id, Id right_id) {
  if (!EndpointExists(kind, true, left_id) ||
      !EndpointExists(kind, false, right_id)) {
    throw Error(ErrorKind::kUnknownEndpoint,
                std::string(ToString(kind)) + " link (" +
                    std::to_string(left_id) + ", " + std::to_string(right_id) +
                    ") has an unknown endpoint");
  }
  if (!link_pairs_.insert({kind, left_id, right_id}).second) {
    throw Error(ErrorKind::kDuplicateLink,
                std::string(ToString(kind)) + " link (" +
                    std::to_string(left_id) + ", " + std::to_string(right_id) +
                    ") already exists");
  }
  auto& rows = MutableLinks(kind);
  rows.push_back({Next(rows), left_id, right_id, kind});
  return rows.back().link_id;
}

const std::vector<LinkRow>& Store::links(LinkKind kind) const {
  switch (kind) {
    case LinkKind::kIndivTrad: return tables_.indiv_trad;
    case LinkKind::kRecueilTrad: return tables_.recueil_trad;
    case LinkKind::kIndivRecueil: return tables_.indiv_recueil;
  }
  return tables_.indiv_trad;
}

std::vector<LinkRow>& Store::MutableLinks(LinkKind kind) {
  return const_cast<std::vector<LinkRow>&>(
      static_cast<const Store&>(*this).links(kind));
}

const TransmitterRecord* Store::FindTransmitter(Id id) const {
  return FindById(tables_.transmitters, id);
}
const WorkRecord* Store::FindWork(Id id) const {
  return FindById(tables_.works, id);
}
const ChapterRecord* Store::FindChapter(Id id) const {
  return FindById(tables_.chapters, id);
}
const TraditionRecord* Store::FindTradition(Id id) const {
  return FindById(tables_.traditions, id);
}

void ExportTables(const Store& store, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) IoError("cannot create " + dir.string() + ": " + ec.message());
  const Store::Tables& t = store.tables_;

  std::string out = std::string(kTransmittersHeader) + "\n";
  for (const auto& r : t.transmitters) {
    out += std::to_string(r.id) + "\t" + tsv::Escape(r.canonical_name) + "\t" +
           JoinList(r.alt_names, '|') + "\t" + OptionalInt(r.death_date_hijri) +
           "\t" + tsv::Escape(r.notes) + "\n";
  }
  WriteFile(dir / "transmitters.tsv", out);

  out = std::string(kWorksHeader) + "\n";
  for (const auto& r : t.works) {
    out += std::to_string(r.id) + "\t" + tsv::Escape(r.title) + "\t" +
           tsv::Escape(r.traditionist) + "\t" + OptionalInt(r.death_date_hijri) +
           "\t" + tsv::Escape(r.edition_label) + "\n";
  }
  WriteFile(dir / "works.tsv", out);

  out = std::string(kChaptersHeader) + "\n";
  for (const auto& r : t.chapters) {
    out += std::to_string(r.id) + "\t" + std::to_string(r.work_id) + "\t" +
           std::to_string(r.ordinal) + "\t" + tsv::Escape(r.heading) + "\n";
  }
  WriteFile(dir / "chapters.tsv", out);

  out = std::string(kTraditionsHeader) + "\n";
  for (const auto& r : t.traditions) {
    out += std::to_string(r.id) + "\t" + std::to_string(r.chapter_id) + "\t" +
           std::to_string(r.ordinal_in_chapter) + "\t" + ChainField(r.isnad) +
           "\t" + tsv::Escape(r.matn_summary) + "\t" + FlagsField(r.flags) +
           "\t" + (r.needs_review ? "1" : "0") + "\n";
  }
  WriteFile(dir / "traditions.tsv", out);

  if (!t.functions.empty()) {
    out = std::string(kFunctionsHeader) + "\n";
    for (const auto& r : t.functions) {
      out += std::to_string(r.id) + "\t" + std::to_string(r.transmitter_id) +
             "\t" + tsv::Escape(r.label) + "\t" + tsv::Escape(r.notes) + "\n";
    }
    WriteFile(dir / "functions.tsv", out);
  }

  nlohmann::json counters = {
      {"transmitters", store.NextTransmitterId()},
      {"works", store.NextWorkId()},
      {"chapters", store.NextChapterId()},
      {"traditions", store.NextTraditionId()},
      {"functions", static_cast<Id>(t.functions.size()) + 1},
  };
  for (const LinkTable& table : kLinkTables) {
    const auto& rows = store.links(table.kind);
    out = std::string(table.header) + "\n";
    for (const auto& row : rows) {
      out += std::to_string(row.link_id) + "\t" + std::to_string(row.left_id) +
             "\t" + std::to_string(row.right_id) + "\n";
    }
    WriteFile(dir / table.file, out);
    counters[table.counter] = static_cast<Id>(rows.size()) + 1;
  }

  const nlohmann::json manifest = {
      {"format_version", kFormatVersion},
      {"flag_vocabulary", t.vocabulary},
      {"counters", counters},
  };
  WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
}

ImportReport ImportDocument(Store& store, const MarkupDocument& doc,
                            const Lexicon& lexicon) {
  Store staged = store;
  ImportReport report;

  std::vector<const Lexicon::NameEntry*> entries;
  for (const auto& entry : lexicon.names) entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(), [](const auto* a, const auto* b) {
    return a->transmitter_id < b->transmitter_id;
  });
  for (const auto* entry : entries) {
    if (entry->transmitter_id < staged.NextTransmitterId()) continue;
    if (entry->transmitter_id != staged.NextTransmitterId()) {
      Invariant("lexicon", "lexicon id " + std::to_string(entry->transmitter_id) +
                               " skips past the next transmitter id " +
                               std::to_string(staged.NextTransmitterId()));
    }
    TransmitterRecord record;
    record.canonical_name = entry->surface_forms.front();
    record.alt_names.assign(entry->surface_forms.begin() + 1,
                            entry->surface_forms.end());
    staged.InsertTransmitter(std::move(record));
    ++report.transmitters;
  }

  for (const WorkBlock& work : doc.works) {
    const Id work_id = staged.InsertWork(
        {0, work.title, work.traditionist, work.died, work.edition});
    ++report.works;
    for (const ChapterBlock& chapter : work.chapters) {
      const Id chapter_id =
          staged.InsertChapter({0, work_id, chapter.ordinal, chapter.heading});
      ++report.chapters;
      for (const TraditionBlock& block : chapter.traditions) {
        Extraction extraction = ExtractIsnad(block, lexicon);
        TraditionRecord record;
        record.chapter_id = chapter_id;
        record.ordinal_in_chapter = block.ordinal;
        if (extraction.matn_segment) {
          record.matn_summary = std::string(block.Text(*extraction.matn_segment));
        }
        record.flags = block.flags;
        if (extraction.ambiguous()) {
          record.needs_review = true;
        } else {
          record.isnad = extraction.chain();
        }
        const Id tradition_id = staged.InsertTradition(record);
        ++report.traditions;
        if (extraction.ambiguous()) {
          ++report.ambiguities;
          report.reviews.push_back({tradition_id, block.id, extraction.report()});
        }
        std::set<Id> linked;
        for (const auto& link : record.isnad.links) {
          if (linked.insert(link.transmitter_id).second) {
            staged.Link(LinkKind::kIndivTrad, link.transmitter_id, tradition_id);
            ++report.indiv_trad_links;
          }
        }
        staged.Link(LinkKind::kRecueilTrad, work_id, tradition_id);
        ++report.recueil_trad_links;
      }
    }
  }
  store = std::move(staged);
  return report;
}

std::vector<TraditionRecord> QueryTraditions(const Store& store,
                                             const TraditionFilter& filter) {
  if (filter.work_id && store.FindWork(*filter.work_id) == nullptr) {
    throw Error(ErrorKind::kUnknownId,
                "unknown work id " + std::to_string(*filter.work_id));
  }
  if (filter.chapter_id && store.FindChapter(*filter.chapter_id) == nullptr) {
    throw Error(ErrorKind::kUnknownId,
                "unknown chapter id " + std::to_string(*filter.chapter_id));
  }
  if (filter.transmitter_id &&
      store.FindTransmitter(*filter.transmitter_id) == nullptr) {
    throw Error(ErrorKind::kUnknownId,
                "unknown transmitter id " + std::to_string(*filter.transmitter_id));
  }
  for (const auto& predicate : filter.flags) {
    if (!store.HasFlag(predicate.key)) {
      throw Error(ErrorKind::kUnknownFlagKey,
                  "flag key '" + predicate.key + "' is not in the vocabulary");
    }
  }

  std::set<Id> transmitted;
  if (filter.transmitter_id) {
    for (const auto& row : store.links(LinkKind::kIndivTrad)) {
      if (row.left_id == *filter.transmitter_id) transmitted.insert(row.right_id);
    }
  }

  std::vector<TraditionRecord> out;
  for (const auto& tradition : store.traditions()) {
    const ChapterRecord* chapter = store.FindChapter(tradition.chapter_id);
    if (filter.work_id && chapter->work_id != *filter.work_id) continue;
    if (filter.chapter_id && tradition.chapter_id != *filter.chapter_id) continue;
    if (filter.transmitter_id && transmitted.count(tradition.id) == 0) continue;
    const bool flags_ok = std::all_of(
        filter.flags.begin(), filter.flags.end(), [&](const FlagPredicate& p) {
          return TriMatches(tradition.flags.Get(p.key), p.mode);
        });
    if (flags_ok) out.push_back(tradition);
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const TraditionRecord& a, const TraditionRecord& b) {
                     const ChapterRecord* ca = store.FindChapter(a.chapter_id);
                     const ChapterRecord* cb = store.FindChapter(b.chapter_id);
                     return std::tie(ca->work_id, ca->ordinal, a.ordinal_in_chapter) <
                            std::tie(cb->work_id, cb->ordinal, b.ordinal_in_chapter);
                   });
  return out;
}

}  // namespace riwaya
