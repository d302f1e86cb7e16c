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


// Brute-force reference answers computed from a GenCorpus alone. Nothing
// here touches the store; each question is answered by scanning the
// tradition list with the most literal loop available.

#ifndef RIWAYA_TESTS_ORACLE_H_
#define RIWAYA_TESTS_ORACLE_H_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "test_support.h"

namespace riwaya::testing::oracle {

inline bool Matches(TriState value, TriMatch mode) {
  switch (mode) {
    case TriMatch::kStrictYes: return value == TriState::kYes;
    case TriMatch::kYesOrLiminal: return value == TriState::kYes || value == TriState::kLiminal;
    case TriMatch::kLiminalOnly: return value == TriState::kLiminal;
    case TriMatch::kNoOnly: return value == TriState::kNo;
  }
  return false;
}

struct Query {
  std::optional<Id> work_id;
  std::optional<Id> chapter_id;
  std::vector<std::pair<std::string, TriMatch>> flags;
  std::optional<Id> transmitter_id;
};

inline std::vector<Id> QueryIds(const GenCorpus& corpus, const Query& q) {
  std::vector<const GenTradition*> hits;
  for (const auto& t : corpus.traditions) {
    if (q.work_id && t.work_id != *q.work_id) continue;
    if (q.chapter_id && t.chapter_id != *q.chapter_id) continue;
    bool ok = true;
    for (const auto& [key, mode] : q.flags) {
      if (!Matches(t.flags.at(key), mode)) ok = false;
    }
    if (!ok) continue;
    if (q.transmitter_id &&
        std::find(t.chain.begin(), t.chain.end(), *q.transmitter_id) == t.chain.end()) {
      continue;
    }
    hits.push_back(&t);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const GenTradition* a, const GenTradition* b) {
    return std::tie(a->work_id, a->chapter_ordinal, a->ordinal) <
           std::tie(b->work_id, b->chapter_ordinal, b->ordinal);
  });
  std::vector<Id> ids;
  for (const auto* t : hits) ids.push_back(t->id);
  return ids;
}

struct Stats {
  long total = 0, mentioning = 0, chapters = 0, chapters_mentioning = 0;
};

inline Stats MentionStats(const GenCorpus& corpus, Id work_id, const std::string& key,
                          TriMatch mode) {
  Stats s;
  std::set<Id> chapters, hit_chapters;
  for (const auto& t : corpus.traditions) {
    if (t.work_id != work_id) continue;
    ++s.total;
    chapters.insert(t.chapter_id);
    if (Matches(t.flags.at(key), mode)) {
      ++s.mentioning;
      hit_chapters.insert(t.chapter_id);
    }
  }
  s.chapters = static_cast<long>(chapters.size());
  s.chapters_mentioning = static_cast<long>(hit_chapters.size());
  return s;
}

// Tenths of a percent, half away from zero, by exhaustive comparison: the
// answer is the k minimising |1000 * count / total - k|, ties upward.
inline long PercentTenths(long count, long total) {
  long best = 0;
  for (long k = 0; k <= 1000; ++k) {
    // compare |1000c - k t| for k and best, exact in integers
    long dk = std::labs(1000 * count - k * total);
    long db = std::labs(1000 * count - best * total);
    if (dk < db || (dk == db && k > best)) best = k;
  }
  return best;
}

struct Pattern {
  std::vector<Id> sequence;
  long support = 0;
};

inline std::vector<Pattern> CommonChains(const GenCorpus& corpus, size_t min_len, size_t top_k) {
  std::map<std::vector<Id>, long> support;
  for (const auto& t : corpus.traditions) {
    std::set<std::vector<Id>> seen;
    for (size_t i = 0; i < t.chain.size(); ++i) {
      for (size_t j = i + min_len; j <= t.chain.size(); ++j) {
        seen.insert(std::vector<Id>(t.chain.begin() + i, t.chain.begin() + j));
      }
    }
    for (const auto& s : seen) ++support[s];
  }
  std::vector<Pattern> all;
  for (const auto& [seq, n] : support) all.push_back({seq, n});
  std::sort(all.begin(), all.end(), [](const Pattern& a, const Pattern& b) {
    if (a.support != b.support) return a.support > b.support;
    if (a.sequence.size() != b.sequence.size()) return a.sequence.size() > b.sequence.size();
    return a.sequence < b.sequence;
  });
  if (all.size() > top_k) all.resize(top_k);
  return all;
}

struct Table {
  long both = 0, a_only = 0, b_only = 0, neither = 0;
};

inline Table Cooccurrence(const GenCorpus& corpus, const std::string& a, const std::string& b,
                          TriMatch mode) {
  Table table;
  for (const auto& t : corpus.traditions) {
    bool x = Matches(t.flags.at(a), mode), y = Matches(t.flags.at(b), mode);
    if (x && y) ++table.both;
    else if (x) ++table.a_only;
    else if (y) ++table.b_only;
    else ++table.neither;
  }
  return table;
}

struct Graph {
  std::set<Id> nodes;
  std::map<std::pair<Id, Id>, long> edges;  // (from, to) -> occurrences
};

// Edges point from the earlier authority to the transmitter who reports
// from it, i.e. chain[i+1] -> chain[i].
inline Graph TransmissionGraph(const GenCorpus& corpus, const std::optional<std::set<Id>>& works) {
  Graph g;
  for (const auto& t : corpus.traditions) {
    if (works && !works->count(t.work_id)) continue;
    for (Id id : t.chain) g.nodes.insert(id);
    for (size_t i = 0; i + 1 < t.chain.size(); ++i) ++g.edges[{t.chain[i + 1], t.chain[i]}];
  }
  return g;
}

}  // namespace riwaya::testing::oracle

#endif  // RIWAYA_TESTS_ORACLE_H_
