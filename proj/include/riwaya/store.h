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

// Append-only relational store: four record tables (individuals, works,
// chapters, traditions), three numeric link tables and an optional table
// of administrative functions. Persisted as a directory of TSV files plus
// manifest.json:
//
//   manifest.json            format_version, flag_vocabulary, counters
//   transmitters.tsv         id canonical_name alt_names death_date_hijri notes
//   works.tsv                id title traditionist death_date_hijri edition_label
//   chapters.tsv             id work_id ordinal heading
//   traditions.tsv           id chapter_id ordinal_in_chapter isnad matn_summary flags needs_review
//   link_indiv_trad.tsv      id_indiv/trad id_indiv id_trad
//   link_recueil_trad.tsv    id_recueil/trad id_recueil id_trad
//   link_indiv_recueil.tsv   id_indiv/recueil id_indiv id_recueil
//   functions.tsv            id transmitter_id label notes (only when non-empty)
//
// The isnad column is `id:surface` joined by commas, the flags column
// `key=yes|no|liminal` joined by semicolons. Text fields escape backslash,
// tab and newline; list elements also escape their separator.

#ifndef RIWAYA_STORE_H_
#define RIWAYA_STORE_H_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "riwaya/markup.h"
#include "riwaya/model.h"

namespace riwaya {

class Store {
 public:
  // Empty in-memory store, not bound to a directory.
  explicit Store(std::vector<std::string> flag_vocabulary = DefaultFlagVocabulary());

  // Creates and persists an empty store. Throws kIoError when `path`
  // exists or cannot be written, kDuplicateFlagKey on repeated keys.
  static Store Create(const std::filesystem::path& path,
                      std::vector<std::string> flag_vocabulary);
  // Loads a store directory (or a directory written by ExportTables).
  static Store Open(const std::filesystem::path& path);

  const std::filesystem::path& path() const { return path_; }

  // Replaces the store directory with the current contents: the new
  // directory is written beside the old one and swapped in by rename.
  void Save() const;

  Id InsertTransmitter(TransmitterRecord record);
  Id InsertWork(WorkRecord record);
  // The ordinal must continue the work's chapter sequence (1, 2, ...).
  Id InsertChapter(ChapterRecord record);
  // Flags are materialized over the vocabulary: missing keys become NO.
  Id InsertTradition(TraditionRecord record);
  Id InsertFunction(FunctionRecord record);

  // Throws kUnknownEndpoint / kDuplicateLink.
  Id Link(LinkKind kind, Id left_id, Id right_id);

  const std::vector<std::string>& flag_vocabulary() const {
    return tables_.vocabulary;
  }
  bool HasFlag(std::string_view key) const;

  const std::vector<TransmitterRecord>& transmitters() const {
    return tables_.transmitters;
  }
  const std::vector<WorkRecord>& works() const { return tables_.works; }
  const std::vector<ChapterRecord>& chapters() const { return tables_.chapters; }
  const std::vector<TraditionRecord>& traditions() const {
    return tables_.traditions;
  }
  const std::vector<FunctionRecord>& functions() const {
    return tables_.functions;
  }
  const std::vector<LinkRow>& links(LinkKind kind) const;

  // nullptr when absent.
  const TransmitterRecord* FindTransmitter(Id id) const;
  const WorkRecord* FindWork(Id id) const;
  const ChapterRecord* FindChapter(Id id) const;
  const TraditionRecord* FindTradition(Id id) const;

  // Next id per table; always max id + 1.
  Id NextTransmitterId() const { return Next(tables_.transmitters); }
  Id NextWorkId() const { return Next(tables_.works); }
  Id NextChapterId() const { return Next(tables_.chapters); }
  Id NextTraditionId() const { return Next(tables_.traditions); }

  // Contents only; the bound path is not compared.
  bool operator==(const Store& other) const { return tables_ == other.tables_; }

 private:
  struct Tables {
    std::vector<std::string> vocabulary;
    std::vector<TransmitterRecord> transmitters;
    std::vector<WorkRecord> works;
    std::vector<ChapterRecord> chapters;
    std::vector<TraditionRecord> traditions;
    std::vector<FunctionRecord> functions;
    std::vector<LinkRow> indiv_trad;
    std::vector<LinkRow> recueil_trad;
    std::vector<LinkRow> indiv_recueil;

    bool operator==(const Tables&) const = default;
  };

  template <typename T>
  static Id Next(const std::vector<T>& table) {
    return static_cast<Id>(table.size()) + 1;
  }
  std::vector<LinkRow>& MutableLinks(LinkKind kind);
  bool EndpointExists(LinkKind kind, bool left, Id id) const;

  friend void ExportTables(const Store& store, const std::filesystem::path& dir);

  std::filesystem::path path_;
  Tables tables_;
  // Derived indexes, rebuilt on load.
  std::set<std::tuple<LinkKind, Id, Id>> link_pairs_;
  std::set<std::pair<Id, int>> tradition_slots_;
  std::vector<int> chapters_per_work_;
};

struct ImportReport {
  size_t transmitters = 0;
  size_t works = 0;
  size_t chapters = 0;
  size_t traditions = 0;
  size_t indiv_trad_links = 0;
  size_t recueil_trad_links = 0;
  size_t ambiguities = 0;

  struct Review {
    Id tradition_id = 0;           // id assigned in the store
    Id document_tradition_id = 0;  // id used in the markup file
    AmbiguityReport report;
  };
  std::vector<Review> reviews;
};

// Imports works, chapters and traditions in document order. Lexicon names
// whose ids are past the end of the transmitter table are inserted first
// (ids must then be contiguous). Each tradition gets one INDIV_TRAD row per
// distinct transmitter of its chain and one RECUEIL_TRAD row. Ambiguous
// chains are stored empty with needs_review set. Atomic: on any error the
// store is left unchanged and the error is rethrown.
ImportReport ImportDocument(Store& store, const MarkupDocument& doc,
                            const Lexicon& lexicon);

struct FlagPredicate {
  std::string key;
  TriMatch mode = TriMatch::kStrictYes;
};

struct TraditionFilter {
  std::optional<Id> work_id;
  std::optional<Id> chapter_id;
  std::vector<FlagPredicate> flags;
  std::optional<Id> transmitter_id;
};

// Conjunction of all predicates, ordered by (work id, chapter ordinal,
// tradition ordinal). Throws kUnknownId / kUnknownFlagKey.
std::vector<TraditionRecord> QueryTraditions(const Store& store,
                                             const TraditionFilter& filter);

// Writes the seven tables and the manifest into `dir` (created if needed).
void ExportTables(const Store& store, const std::filesystem::path& dir);

}  // namespace riwaya

#endif  // RIWAYA_STORE_H_
