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

// Read-only statistics over a store: per-work and per-chapter mention
// rates, attribution lookups, frequent contiguous chain segments, the
// weighted transmission graph and flag co-occurrence.

#ifndef RIWAYA_ANALYTICS_H_
#define RIWAYA_ANALYTICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riwaya/model.h"
#include "riwaya/store.h"

namespace riwaya {

struct MentionStats {
  Id work_id = 0;
  std::int64_t total_traditions = 0;
  std::int64_t mentioning = 0;
  Percent pct_traditions{0, 1};
  std::int64_t total_chapters = 0;
  // A chapter mentions when at least one of its traditions matches.
  std::int64_t chapters_mentioning = 0;
  Percent pct_chapters{0, 1};
};

// Throws kUnknownId, kUnknownFlagKey, or kEmptyWork when the work has no
// traditions.
MentionStats ComputeMentionStats(const Store& store, Id work_id,
                                 std::string_view flag_key, TriMatch mode);

struct ReportRow {
  Id work_id = 0;
  std::string collection;
  std::int64_t total_traditions = 0;
  std::int64_t mentioning = 0;
  std::int64_t total_chapters = 0;
  std::int64_t chapters_mentioning = 0;
  // Empty for a work without traditions; rendered as "-".
  std::optional<Percent> pct_traditions;
  std::optional<Percent> pct_chapters;
};

struct ReportTable {
  std::array<std::string, 7> headers;
  std::vector<ReportRow> rows;

  std::string ToTsv() const;
  // Space-aligned columns, widths counted in code points.
  std::string ToText() const;
};

ReportTable BuildReportTable(const Store& store, std::string_view flag_key,
                             TriMatch mode, const std::vector<Id>& work_ids);

struct AttributionScope {
  std::optional<Id> work_id;
  // 0-based chain position (0 = collector); nullopt for any position.
  std::optional<size_t> position;
};

// Ids of traditions whose stored chain contains the transmitter, ascending.
std::vector<Id> Attribution(const Store& store, Id transmitter_id,
                            const AttributionScope& scope = {});

struct ChainPattern {
  std::vector<Id> sequence;
  // Number of traditions containing the sequence, not occurrences.
  std::int64_t support = 0;

  bool operator==(const ChainPattern&) const = default;
};

// Contiguous chain segments of length >= min_len, ranked by support desc,
// length desc, then id sequence asc.
std::vector<ChainPattern> CommonChains(const Store& store, size_t min_len,
                                       size_t top_k);

struct TransmissionGraph {
  struct Edge {
    Id from = 0;  // earlier authority
    Id to = 0;    // transmitter reporting from `from`
    std::int64_t weight = 0;

    bool operator==(const Edge&) const = default;
  };
  std::vector<Id> nodes;    // ascending
  std::vector<Edge> edges;  // ascending by (from, to)

  std::int64_t TotalWeight() const;
  bool operator==(const TransmissionGraph&) const = default;
};

// Every adjacent pair of a collector-first chain [c0, c1, ...] adds one to
// the edge c(i+1) -> c(i). `work_ids` nullopt means the whole store.
TransmissionGraph BuildTransmissionGraph(
    const Store& store, const std::optional<std::vector<Id>>& work_ids);

// Nodes labelled `id: canonical_name`, edges labelled by weight.
std::string GraphToDot(const TransmissionGraph& graph, const Store& store);
// Header `src_id dst_id weight`.
std::string GraphToTsv(const TransmissionGraph& graph);

struct Contingency {
  std::int64_t both = 0;
  std::int64_t a_only = 0;
  std::int64_t b_only = 0;
  std::int64_t neither = 0;

  std::int64_t Total() const { return both + a_only + b_only + neither; }
  bool operator==(const Contingency&) const = default;
};

Contingency Cooccurrence(const Store& store, std::string_view flag_a,
                         std::string_view flag_b, TriMatch mode);

}  // namespace riwaya

#endif  // RIWAYA_ANALYTICS_H_
