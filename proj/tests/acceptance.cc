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


// Acceptance runner: one [PASS]/[FAIL] line per criterion, non-zero exit
// when any criterion fails. Randomized parts use fixed seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.h"
#include "riwaya/analytics.h"
#include "riwaya/cli.h"
#include "riwaya/markup.h"
#include "riwaya/store.h"
#include "test_support.h"

namespace {

namespace fs = std::filesystem;
using namespace riwaya;
using namespace riwaya::testing;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

int g_failed = 0;

void Report(const std::string& id, const std::string& title, const Check& check,
            const std::string& detail) {
  bool ok = check.failures.empty();
  if (!ok) ++g_failed;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << " " << title << " — " << detail << "\n";
  for (const auto& f : check.failures) std::cout << "         " << f << "\n";
}

int Cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = RunCli(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::string Fixture(const std::string& name) { return FixturePath(name).string(); }

const std::vector<std::string> kCollections = {"collections/abd_al_razzaq.rwy",
                                           "collections/ibn_abi_shayba.rwy", "collections/bukhari.rwy"};

// Ingests the three count fixtures in chronological order.
bool BuildCollectionsStore(const std::string& store) {
  if (Cli({"init", "--store", store}) != kExitOk) return false;
  std::vector<std::string> args = {"ingest", "--store", store, "--lexicon",
                                   Fixture("collections/collections.lex")};
  for (const auto& f : kCollections) args.push_back(Fixture(f));
  return Cli(args) == kExitOk;
}

std::vector<std::vector<std::string>> TsvRows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, '\t')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

void Ac1() {
  // count, total and chapter counts per work, with hand-computed
  // percentages (1 decimal) and which cells must match as exact strings.
  struct Row {
    long total, mentioning, chapters, chapters_mentioning;
    double pct_t, pct_c;
  };
  const Row expected[] = {{147, 91, 31, 27, 61.9, 87.1},
                          {579, 319, 47, 47, 55.1, 100.0},
                          {488, 402, 90, 87, 82.4, 96.7}};
  const std::set<std::string> exact = {"61.9", "55.1", "100.0"};
  Check check;
  ScratchDir dir;
  std::string store = (dir / "db").string();
  auto start = Clock::now();
  std::string out;
  bool built = BuildCollectionsStore(store);
  int code = Cli({"report", "--store", store, "--flag", "trad_proph"}, &out);
  double elapsed = Seconds(start);
  check.Expect(built && code == kExitOk, "ingest/report failed");
  auto rows = TsvRows(out);
  check.Expect(rows.size() == 4, "expected header + 3 rows");
  std::string cells;
  for (size_t i = 0; i < 3 && i + 1 < rows.size(); ++i) {
    const auto& r = rows[i + 1];
    const auto& e = expected[i];
    if (r.size() != 7) {
      check.Expect(false, "row " + std::to_string(i + 1) + " has wrong width");
      continue;
    }
    check.Expect(std::stol(r[1]) == e.total && std::stol(r[2]) == e.mentioning &&
                     std::stol(r[3]) == e.chapters && std::stol(r[4]) == e.chapters_mentioning,
                 "counts differ in row " + std::to_string(i + 1));
    for (int c : {5, 6}) {
      double want = c == 5 ? e.pct_t : e.pct_c;
      check.Expect(std::fabs(std::stod(r[c]) - want) <= 0.05,
                   r[c] + " not within 0.05 of hand value");
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.1f", want);
      if (exact.count(buf)) check.Expect(r[c] == buf, r[c] + " should be exactly " + buf);
      cells += (cells.empty() ? "" : " ") + r[c];
    }
  }
  // The note listing the cells printed differently in the source table.
  std::string note = ReadFixture("README.md");
  for (const char* printed : {"73", "88.3", "96.6"}) {
    check.Expect(note.find(printed) != std::string::npos,
                 std::string("discrepancy note lacks ") + printed);
  }
  check.Expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  char detail[160];
  std::snprintf(detail, sizeof detail, "cells %s; ingest+report %.3f s (< 1 s)", cells.c_str(),
                elapsed);
  Report("AC1", "report percentages", check, detail);
}

void Ac2() {
  Check check;
  ScratchDir dir;
  std::string store = (dir / "db").string();
  check.Expect(Cli({"init", "--store", store}) == kExitOk, "init failed");
  auto start = Clock::now();
  check.Expect(Cli({"ingest", "--store", store, "--lexicon", Fixture("collections/collections.lex"),
                    Fixture(kCollections[0])}) == kExitOk,
               "ingest failed");
  std::string out;
  check.Expect(Cli({"attrib", "--store", store, "--transmitter", "2"}, &out) == kExitOk,
               "attrib failed");
  double elapsed = Seconds(start);
  auto rows = TsvRows(out);
  size_t ids = rows.empty() ? 0 : rows.size() - 1;
  check.Expect(ids == 146, "attrib returned " + std::to_string(ids) + " ids");
  // Exactly one tradition in the 147 lacks the transmitter.
  Store opened = Store::Open(store);
  check.Expect(opened.traditions().size() == 147, "fixture does not hold 147 traditions");
  check.Expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  char detail[128];
  std::snprintf(detail, sizeof detail, "%zu of %zu ids; %.3f s (< 1 s)", ids,
                opened.traditions().size(), elapsed);
  Report("AC2", "attribution", check, detail);
}

// Random matn text built from lexicon forms, terms, annotations and filler.
std::string RandomMatn(std::mt19937& rng, const Lexicon& lex) {
  std::vector<std::string> pool = {"qāla", "wa", "fa-", ",", ".", "Allāh", "rasūl", "←",
                                   "ʿan", "@TERM{ʿan}", "@TAG[place]{Badr}", "@NAME[1]{x}",
                                   "ḥaddaṯanā", "\n"};
  for (const auto& entry : lex.names) {
    for (const auto& form : entry.surface_forms) pool.push_back(form);
  }
  std::string text;
  int n = std::uniform_int_distribution<int>(0, 30)(rng);
  for (int i = 0; i < n; ++i) {
    const auto& token = pool[rng() % pool.size()];
    if (!text.empty() && text.back() != '\n' && token != "\n") text += ' ';
    text += token;
  }
  // A matn line must never be a lone closing brace.
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

bool SameExtraction(const Extraction& a, const Extraction& b) {
  return a.result == b.result;
}

void Ac3() {
  Check check;
  const Lexicon five_lex = FixtureLexicon("five_link.lex");
  const Lexicon amb_lex = FixtureLexicon("ambiguity.lex");
  auto note = ParseMarkup(ReadFixture("five_link.rwy"), &five_lex);
  auto five_x = ExtractIsnad(note.works[0].chapters[0].traditions[0], five_lex);
  bool chain_ok = !five_x.ambiguous() && five_x.chain().Ids() == std::vector<Id>{1, 2, 3, 4, 5};
  check.Expect(chain_ok, "five-link chain differs");
  if (chain_ok) {
    const char* names[] = {"al-Wāqidī", "Abū Bakr b. Ismāʿīl", "Ismāʿīl", "ʿĀmir b. Saʿd",
                           "Saʿd"};
    for (int i = 0; i < 5; ++i) {
      check.Expect(five_x.chain().links[i].surface_form == names[i], "surface form differs");
    }
  }
  auto amb = ParseMarkup(ReadFixture("ambiguity.rwy"), &amb_lex);
  auto amb_x = ExtractIsnad(amb.works[0].chapters[0].traditions[0], amb_lex);
  bool report_ok = amb_x.ambiguous() && amb_x.report().ambiguous.size() == 1 &&
                   amb_x.report().ambiguous[0].candidates == std::vector<Id>{7, 12};
  check.Expect(report_ok, "same-name fixture did not yield an ambiguity report");

  // Matn-only edits: segmented blocks get a fresh matn, running-text blocks
  // get extra lines appended after their existing matn.
  struct Source {
    std::string markup;
    const Lexicon* lexicon;
  };
  const Lexicon a5_lex = FixtureLexicon("collections/collections.lex");
  const std::vector<Source> sources = {{ReadFixture("five_link.rwy"), &five_lex},
                                       {ReadFixture("ambiguity.rwy"), &amb_lex},
                                       {ReadFixture("collections/bukhari.rwy"), &a5_lex}};
  std::mt19937 rng(2024);
  int cases = 0, heuristic_cases = 0, changed = 0;
  while (cases < 100) {
    const auto& src = sources[rng() % sources.size()];
    auto doc = ParseMarkup(src.markup);
    auto& chapter = doc.works[0].chapters[rng() % doc.works[0].chapters.size()];
    auto& block = chapter.traditions[rng() % chapter.traditions.size()];
    auto before = ExtractIsnad(block, *src.lexicon);
    std::string canonical = SerializeMarkup(doc);
    std::string marker = "###TRAD id=" + std::to_string(block.id) + " ";
    size_t at = canonical.find(marker);
    size_t next = canonical.find("\n###TRAD", at + 1);
    size_t next_work = canonical.find("\n##", at + 1);
    size_t end = std::min(next, next_work);
    if (end == std::string::npos) end = canonical.size();
    std::string body = canonical.substr(at, end - at);
    std::string edited;
    if (block.segmented) {
      size_t open = body.find("\n@MATN{\n");
      std::string matn = RandomMatn(rng, *src.lexicon);
      if (open == std::string::npos) {
        size_t isnad_end = body.find("}\n", body.find("@ISNAD{")) + 2;
        edited = body.substr(0, isnad_end) + "@MATN{\n" + matn + "\n}\n" + body.substr(isnad_end);
      } else {
        size_t close = body.find("\n}\n", open + 8);
        edited = body.substr(0, open) + "\n@MATN{\n" + matn + body.substr(close);
      }
    } else {
      if (!before.matn_segment || before.matn_segment->start == before.matn_segment->end) {
        continue;
      }
      size_t flags = body.find("\n%FLAG");
      if (flags == std::string::npos) flags = body.size() - (body.back() == '\n' ? 1 : 0);
      std::string extra = RandomMatn(rng, *src.lexicon);
      for (char& c : extra) {
        if (c == '\n') c = ' ';
      }
      if (extra.empty()) extra = "wa";
      edited = body.substr(0, flags) + "\nwa " + extra + body.substr(flags);
      ++heuristic_cases;
    }
    std::string text = canonical.substr(0, at) + edited + canonical.substr(end);
    try {
      auto edited_doc = ParseMarkup(text);
      const TraditionBlock* after_block = nullptr;
      for (const auto& ch : edited_doc.works[0].chapters) {
        for (const auto& t : ch.traditions) {
          if (t.id == block.id) after_block = &t;
        }
      }
      check.Expect(after_block != nullptr, "edited block vanished");
      if (after_block) {
        if (after_block->raw_text != block.raw_text) ++changed;
        check.Expect(SameExtraction(before, ExtractIsnad(*after_block, *src.lexicon)),
                     "extraction changed after matn edit of tradition " +
                         std::to_string(block.id));
      }
    } catch (const Error& e) {
      check.Expect(false, std::string("edited markup failed to parse: ") + e.what());
    }
    ++cases;
  }
  check.Expect(changed >= 80, "only " + std::to_string(changed) + " edits changed the text");
  Report("AC3", "chain extraction", check,
         "five-link chain, ambiguity report for Saʿd {7,12}, " + std::to_string(cases) +
             " matn-only edits (" + std::to_string(changed) + " altering the text, " +
             std::to_string(heuristic_cases) + " running-text)");
}

void Ac4() {
  Check check;
  std::mt19937 rng(4242);
  const TriMatch modes[] = {TriMatch::kStrictYes, TriMatch::kYesOrLiminal,
                            TriMatch::kLiminalOnly, TriMatch::kNoOnly};
  auto start = Clock::now();
  long comparisons = 0;
  for (int round = 0; round < 200; ++round) {
    GenCorpus corpus = GenerateCorpus(rng);
    Store store = CorpusStore(corpus);
    const std::string tag = " (corpus " + std::to_string(round) + ")";
    const auto& vocab = corpus.vocabulary;

    for (int q = 0; q < 8; ++q) {
      oracle::Query oq;
      TraditionFilter filter;
      if (rng() % 2) oq.work_id = filter.work_id = 1 + rng() % corpus.work_ids.size();
      if (rng() % 3 == 0) oq.chapter_id = filter.chapter_id = 1 + rng() % store.chapters().size();
      if (rng() % 2) {
        oq.transmitter_id = filter.transmitter_id = 1 + rng() % corpus.transmitter_count;
      }
      for (int k = rng() % 3; k > 0; --k) {
        const auto& key = vocab[rng() % vocab.size()];
        TriMatch mode = modes[rng() % 4];
        oq.flags.push_back({key, mode});
        filter.flags.push_back({key, mode});
      }
      std::vector<Id> got;
      for (const auto& t : QueryTraditions(store, filter)) got.push_back(t.id);
      check.Expect(got == oracle::QueryIds(corpus, oq), "query_traditions" + tag);
      ++comparisons;
    }

    for (Id w : corpus.work_ids) {
      for (const auto& key : vocab) {
        TriMatch mode = modes[rng() % 4];
        auto got = ComputeMentionStats(store, w, key, mode);
        auto want = oracle::MentionStats(corpus, w, key, mode);
        check.Expect(got.total_traditions == want.total && got.mentioning == want.mentioning &&
                         got.total_chapters == want.chapters &&
                         got.chapters_mentioning == want.chapters_mentioning &&
                         got.pct_traditions.RoundedTenths() ==
                             oracle::PercentTenths(want.mentioning, want.total) &&
                         got.pct_chapters.RoundedTenths() ==
                             oracle::PercentTenths(want.chapters_mentioning, want.chapters),
                     "mention_stats" + tag);
        ++comparisons;
      }
    }

    for (size_t min_len = 2; min_len <= 4; ++min_len) {
      size_t top_k = 1 + rng() % 15;
      auto got = CommonChains(store, min_len, top_k);
      auto want = oracle::CommonChains(corpus, min_len, top_k);
      bool same = got.size() == want.size();
      for (size_t i = 0; same && i < got.size(); ++i) {
        same = got[i].sequence == want[i].sequence && got[i].support == want[i].support;
      }
      check.Expect(same, "common_chains" + tag);
      ++comparisons;
    }

    for (int k = 0; k < 4; ++k) {
      const auto& a = vocab[rng() % vocab.size()];
      const auto& b = vocab[rng() % vocab.size()];
      TriMatch mode = modes[rng() % 4];
      auto got = Cooccurrence(store, a, b, mode);
      auto want = oracle::Cooccurrence(corpus, a, b, mode);
      check.Expect(got.both == want.both && got.a_only == want.a_only &&
                       got.b_only == want.b_only && got.neither == want.neither,
                   "cooccurrence" + tag);
      ++comparisons;
    }

    for (bool scoped : {false, true}) {
      std::optional<std::vector<Id>> scope;
      std::optional<std::set<Id>> oracle_scope;
      if (scoped) {
        Id w = 1 + rng() % corpus.work_ids.size();
        scope = std::vector<Id>{w};
        oracle_scope = std::set<Id>{w};
      }
      auto got = BuildTransmissionGraph(store, scope);
      auto want = oracle::TransmissionGraph(corpus, oracle_scope);
      bool same = got.nodes == std::vector<Id>(want.nodes.begin(), want.nodes.end()) &&
                  got.edges.size() == want.edges.size();
      for (const auto& e : got.edges) {
        auto it = want.edges.find({e.from, e.to});
        same = same && it != want.edges.end() && it->second == e.weight;
      }
      check.Expect(same, "transmission_graph" + tag);
      ++comparisons;
    }
  }
  double elapsed = Seconds(start);
  check.Expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
  char detail[128];
  std::snprintf(detail, sizeof detail, "200 corpora, %ld comparisons; %.2f s (< 30 s)",
                comparisons, elapsed);
  Report("AC4", "oracle equivalence", check, detail);
}

void Ac5() {
  Check check;
  int markup_files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(RIWAYA_FIXTURE_DIR)) {
    if (entry.path().extension() != ".rwy") continue;
    std::string text = ReadFile(entry.path());
    check.Expect(SerializeMarkup(ParseMarkup(text)) == text,
                 "markup round-trip: " + entry.path().filename().string());
    ++markup_files;
  }

  // Store identity through export and re-open.
  int stores = 0;
  {
    ScratchDir dir;
    std::string path = (dir / "db").string();
    check.Expect(BuildCollectionsStore(path), "collections ingest failed");
    Store original = Store::Open(path);
    ExportTables(original, dir / "out");
    check.Expect(Store::Open(dir / "out") == original, "store export/import: collections");
    ++stores;
  }
  std::mt19937 rng(55);
  for (int i = 0; i < 25; ++i) {
    Store store = CorpusStore(GenerateCorpus(rng));
    ScratchDir dir;
    ExportTables(store, dir.path());
    check.Expect(Store::Open(dir.path()) == store, "store export/import: random corpus");
    ++stores;
  }

  // The first eleven individual/tradition link rows.
  const std::string link_rows =
      "id_indiv/trad\tid_indiv\tid_trad\n"
      "1\t3\t1\n2\t45\t1\n3\t3\t2\n4\t30\t2\n5\t3\t3\n6\t45\t3\n"
      "7\t3\t4\n8\t45\t4\n9\t3\t5\n10\t31\t5\n11\t32\t5\n";
  {
    Store store;
    ImportDocument(store, ParseMarkup(ReadFixture("link_rows.rwy")), FixtureLexicon("link_rows.lex"));
    ScratchDir dir;
    ExportTables(store, dir.path());
    std::string table = ReadFile(dir / "link_indiv_trad.tsv");
    check.Expect(table.substr(0, link_rows.size()) == link_rows, "link table rows differ");
  }
  Report("AC5", "round-trips", check,
         std::to_string(markup_files) + " markup fixtures, " + std::to_string(stores) +
             " stores, 11 link rows byte-exact");
}

void Ac6() {
  Check check;
  const TriMatch partition[] = {TriMatch::kStrictYes, TriMatch::kLiminalOnly,
                                TriMatch::kNoOnly};
  auto check_store = [&](const Store& store, const std::string& label) {
    for (const auto& key : store.flag_vocabulary()) {
      size_t sum = 0;
      for (TriMatch mode : partition) {
        TraditionFilter filter;
        filter.flags = {{key, mode}};
        sum += QueryTraditions(store, filter).size();
      }
      check.Expect(sum == store.traditions().size(), label + " / " + key);
      for (const auto& work : store.works()) {
        std::int64_t per_work = 0, total = 0;
        for (TriMatch mode : partition) {
          try {
            auto stats = ComputeMentionStats(store, work.id, key, mode);
            per_work += stats.mentioning;
            total = stats.total_traditions;
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::kEmptyWork) throw;
          }
        }
        check.Expect(per_work == total, label + " / work " + std::to_string(work.id));
      }
    }
  };

  int fixtures = 0;
  struct Pair {
    const char* rwy;
    const char* lex;
  };
  for (Pair p : {Pair{"minimal.rwy", nullptr}, Pair{"five_link.rwy", "five_link.lex"},
                 Pair{"ambiguity.rwy", "ambiguity.lex"}, Pair{"link_rows.rwy", "link_rows.lex"}}) {
    Store store;
    ImportDocument(store, ParseMarkup(ReadFixture(p.rwy)),
                   p.lex ? FixtureLexicon(p.lex) : Lexicon{});
    check_store(store, p.rwy);
    ++fixtures;
  }
  {
    ScratchDir dir;
    std::string path = (dir / "db").string();
    BuildCollectionsStore(path);
    check_store(Store::Open(path), "collections");
    fixtures += 3;
  }
  std::mt19937 rng(606);
  for (int i = 0; i < 100; ++i) {
    check_store(CorpusStore(GenerateCorpus(rng)), "random flags " + std::to_string(i));
  }
  Report("AC6", "tri-state partition", check,
         std::to_string(fixtures) + " fixtures and 100 random flag assignments, all 9 keys");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {Ac1, Ac2, Ac3, Ac4, Ac5, Ac6};
  for (size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      ++g_failed;
      std::cout << "[FAIL] AC" << i + 1 << " raised: " << e.what() << "\n";
    }
  }
  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " failed")
            << "\n";
  return g_failed == 0 ? 0 : 1;
}
