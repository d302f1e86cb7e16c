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

#include "riwaya/analytics.h"

#include <algorithm>
#include <map>
#include <set>

#include "utf8.h"

namespace riwaya {
namespace {

void RequireFlag(const Store& store, std::string_view key) {
  if (!store.HasFlag(key)) {
    throw Error(ErrorKind::kUnknownFlagKey,
                "flag key '" + std::string(key) + "' is not in the vocabulary");
  }
}

const WorkRecord& RequireWork(const Store& store, Id work_id) {
  const WorkRecord* work = store.FindWork(work_id);
  if (work == nullptr) {
    throw Error(ErrorKind::kUnknownId, "unknown work id " + std::to_string(work_id));
  }
  return *work;
}

Id WorkOf(const Store& store, const TraditionRecord& tradition) {
  return store.FindChapter(tradition.chapter_id)->work_id;
}

struct Counts {
  std::int64_t traditions = 0;
  std::int64_t mentioning = 0;
  std::int64_t chapters = 0;
  std::int64_t chapters_mentioning = 0;
};

Counts CountWork(const Store& store, Id work_id, std::string_view key,
                 TriMatch mode) {
  Counts counts;
  std::set<Id> mentioning_chapters;
  for (const auto& chapter : store.chapters()) {
    if (chapter.work_id == work_id) ++counts.chapters;
  }
  for (const auto& tradition : store.traditions()) {
    if (WorkOf(store, tradition) != work_id) continue;
    ++counts.traditions;
    if (TriMatches(tradition.flags.Get(key), mode)) {
      ++counts.mentioning;
      mentioning_chapters.insert(tradition.chapter_id);
    }
  }
  counts.chapters_mentioning = static_cast<std::int64_t>(mentioning_chapters.size());
  return counts;
}

std::string CollectionLabel(const WorkRecord& work) {
  if (work.traditionist.empty()) return work.title;
  return work.title + " of " + work.traditionist;
}

}  // namespace

MentionStats ComputeMentionStats(const Store& store, Id work_id,
                                 std::string_view flag_key, TriMatch mode) {
  RequireWork(store, work_id);
  RequireFlag(store, flag_key);
  const Counts counts = CountWork(store, work_id, flag_key, mode);
  if (counts.traditions == 0) {
    throw Error(ErrorKind::kEmptyWork,
                "work " + std::to_string(work_id) + " has no traditions");
  }
  MentionStats stats;
  stats.work_id = work_id;
  stats.total_traditions = counts.traditions;
  stats.mentioning = counts.mentioning;
  stats.pct_traditions = Percentage(counts.mentioning, counts.traditions);
  stats.total_chapters = counts.chapters;
  stats.chapters_mentioning = counts.chapters_mentioning;
  stats.pct_chapters = Percentage(counts.chapters_mentioning, counts.chapters);
  return stats;
}

ReportTable BuildReportTable(const Store& store, std::string_view flag_key,
                             TriMatch mode, const std::vector<Id>& work_ids) {
  RequireFlag(store, flag_key);
  for (Id id : work_ids) RequireWork(store, id);

  const std::string subject = flag_key == "trad_proph"
                                  ? std::string("mentioning Muḥammad")
                                  : "matching " + std::string(flag_key);
  ReportTable table;
  table.headers = {
      "Collection and traditionist",
      "Number of traditions in the whole text (kitāb)",
      "Number of traditions " + subject + " in the text",
      "Number of chapters (bāb) in the text",
      "Number of chapters " + subject + " in the text",
      "Percentages of traditions " + subject + " in the text",
      "Percentages of chapters " + subject + " (at least once)",
  };
  for (Id id : work_ids) {
    ReportRow row;
    row.work_id = id;
    row.collection = CollectionLabel(*store.FindWork(id));
    try {
      const MentionStats stats = ComputeMentionStats(store, id, flag_key, mode);
      row.total_traditions = stats.total_traditions;
      row.mentioning = stats.mentioning;
      row.total_chapters = stats.total_chapters;
      row.chapters_mentioning = stats.chapters_mentioning;
      row.pct_traditions = stats.pct_traditions;
      row.pct_chapters = stats.pct_chapters;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEmptyWork) throw;
      row.total_chapters = CountWork(store, id, flag_key, mode).chapters;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::vector<std::string> RowCells(const ReportRow& row, bool percent_sign) {
  auto pct = [&](const std::optional<Percent>& p) {
    if (!p) return std::string("-");
    return p->Render() + (percent_sign ? "%" : "");
  };
  return {row.collection,
          std::to_string(row.total_traditions),
          std::to_string(row.mentioning),
          std::to_string(row.total_chapters),
          std::to_string(row.chapters_mentioning),
          pct(row.pct_traditions),
          pct(row.pct_chapters)};
}

}  // namespace

std::string ReportTable::ToTsv() const {
  std::string out;
  for (size_t c = 0; c < headers.size(); ++c) {
    out += (c > 0 ? "\t" : "") + headers[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    const auto cells = RowCells(row, false);
    for (size_t c = 0; c < cells.size(); ++c) {
      out += (c > 0 ? "\t" : "") + cells[c];
    }
    out += '\n';
  }
  return out;
}

std::string ReportTable::ToText() const {
  std::vector<std::vector<std::string>> grid;
  grid.emplace_back(headers.begin(), headers.end());
  for (const auto& row : rows) grid.push_back(RowCells(row, true));

  std::vector<size_t> widths(headers.size(), 0);
  for (const auto& line : grid) {
    for (size_t c = 0; c < line.size(); ++c) {
      widths[c] = std::max(widths[c], utf8::CodePointCount(line[c]));
    }
  }
  std::string out;
  for (size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (size_t c = 0; c < grid[r].size(); ++c) {
      const std::string& cell = grid[r][c];
      const std::string pad(widths[c] - utf8::CodePointCount(cell), ' ');
      if (c > 0) line += "  ";
      // Numbers right-aligned, the collection name left-aligned.
      line += (c == 0 || r == 0) ? cell + pad : pad + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::vector<Id> Attribution(const Store& store, Id transmitter_id,
                            const AttributionScope& scope) {
  if (store.FindTransmitter(transmitter_id) == nullptr) {
    throw Error(ErrorKind::kUnknownId,
                "unknown transmitter id " + std::to_string(transmitter_id));
  }
  if (scope.work_id) RequireWork(store, *scope.work_id);
  std::vector<Id> ids;
  for (const auto& tradition : store.traditions()) {
    if (scope.work_id && WorkOf(store, tradition) != *scope.work_id) continue;
    const auto& links = tradition.isnad.links;
    bool hit = false;
    if (scope.position) {
      hit = *scope.position < links.size() &&
            links[*scope.position].transmitter_id == transmitter_id;
    } else {
      hit = std::any_of(links.begin(), links.end(), [&](const TransmitterRef& r) {
        return r.transmitter_id == transmitter_id;
      });
    }
    if (hit) ids.push_back(tradition.id);
  }
  return ids;
}

std::vector<ChainPattern> CommonChains(const Store& store, size_t min_len,
                                       size_t top_k) {
  if (min_len < 2) {
    throw Error(ErrorKind::kInvalidArgument, "min_len must be at least 2");
  }
  if (top_k < 1) throw Error(ErrorKind::kInvalidArgument, "top_k must be at least 1");

  std::map<std::vector<Id>, std::int64_t> support;
  for (const auto& tradition : store.traditions()) {
    const std::vector<Id> chain = tradition.isnad.Ids();
    std::set<std::vector<Id>> seen;
    for (size_t begin = 0; begin < chain.size(); ++begin) {
      for (size_t end = begin + min_len; end <= chain.size(); ++end) {
        seen.emplace(chain.begin() + static_cast<std::ptrdiff_t>(begin),
                     chain.begin() + static_cast<std::ptrdiff_t>(end));
      }
    }
    for (const auto& segment : seen) ++support[segment];
  }

  std::vector<ChainPattern> patterns;
  patterns.reserve(support.size());
  for (auto& [sequence, count] : support) patterns.push_back({sequence, count});
  const size_t keep = std::min(top_k, patterns.size());
  std::partial_sort(patterns.begin(), patterns.begin() + static_cast<std::ptrdiff_t>(keep),
                    patterns.end(), [](const ChainPattern& a, const ChainPattern& b) {
                      if (a.support != b.support) return a.support > b.support;
                      if (a.sequence.size() != b.sequence.size()) {
                        return a.sequence.size() > b.sequence.size();
                      }
                      return a.sequence < b.sequence;
                    });
  patterns.resize(keep);
  return patterns;
}

std::int64_t TransmissionGraph::TotalWeight() const {
  std::int64_t total = 0;
  for (const auto& edge : edges) total += edge.weight;
  return total;
}

TransmissionGraph BuildTransmissionGraph(
    const Store& store, const std::optional<std::vector<Id>>& work_ids) {
  std::set<Id> scope;
  if (work_ids) {
    for (Id id : *work_ids) {
      RequireWork(store, id);
      scope.insert(id);
    }
  }
  std::set<Id> nodes;
  std::map<std::pair<Id, Id>, std::int64_t> weights;
  for (const auto& tradition : store.traditions()) {
    if (work_ids && scope.count(WorkOf(store, tradition)) == 0) continue;
    const auto& links = tradition.isnad.links;
    for (const auto& link : links) nodes.insert(link.transmitter_id);
    for (size_t i = 0; i + 1 < links.size(); ++i) {
      ++weights[{links[i + 1].transmitter_id, links[i].transmitter_id}];
    }
  }
  TransmissionGraph graph;
  graph.nodes.assign(nodes.begin(), nodes.end());
  for (const auto& [pair, weight] : weights) {
    graph.edges.push_back({pair.first, pair.second, weight});
  }
  return graph;
}

namespace {

std::string DotQuote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string GraphToDot(const TransmissionGraph& graph, const Store& store) {
  std::string out = "digraph transmission {\n";
  for (Id id : graph.nodes) {
    const TransmitterRecord* t = store.FindTransmitter(id);
    const std::string name = t != nullptr ? t->canonical_name : std::string("?");
    out += "  " + std::to_string(id) + " [label=" +
           DotQuote(std::to_string(id) + ": " + name) + "];\n";
  }
  for (const auto& edge : graph.edges) {
    out += "  " + std::to_string(edge.from) + " -> " + std::to_string(edge.to) +
           " [label=\"" + std::to_string(edge.weight) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string GraphToTsv(const TransmissionGraph& graph) {
  std::string out = "src_id\tdst_id\tweight\n";
  for (const auto& edge : graph.edges) {
    out += std::to_string(edge.from) + "\t" + std::to_string(edge.to) + "\t" +
           std::to_string(edge.weight) + "\n";
  }
  return out;
}

Contingency Cooccurrence(const Store& store, std::string_view flag_a,
                         std::string_view flag_b, TriMatch mode) {
  RequireFlag(store, flag_a);
  RequireFlag(store, flag_b);
  Contingency table;
  for (const auto& tradition : store.traditions()) {
    const bool a = TriMatches(tradition.flags.Get(flag_a), mode);
    const bool b = TriMatches(tradition.flags.Get(flag_b), mode);
    if (a && b) {
      ++table.both;
    } else if (a) {
      ++table.a_only;
    } else if (b) {
      ++table.b_only;
    } else {
      ++table.neither;
    }
  }
  return table;
}

}  // namespace riwaya
