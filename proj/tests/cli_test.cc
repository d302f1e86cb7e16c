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


#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "riwaya/cli.h"
#include "test_support.h"

namespace riwaya {
namespace {

using testing::FixturePath;
using testing::ReadFile;
using testing::ScratchDir;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run Invoke(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  std::ostringstream out, err;
  Run run;
  run.code = RunCli(args, out, err, env);
  run.out = out.str();
  run.err = err.str();
  return run;
}

std::string Fixture(const char* name) { return FixturePath(name).string(); }

// A store holding the three count fixtures, in chronological order.
std::string CollectionsStore(const ScratchDir& dir) {
  std::string store = (dir / "db").string();
  REQUIRE(Invoke({"init", "--store", store}).code == kExitOk);
  auto run = Invoke({"ingest", "--store", store, "--lexicon", Fixture("collections/collections.lex"),
                     Fixture("collections/abd_al_razzaq.rwy"), Fixture("collections/ibn_abi_shayba.rwy"),
                     Fixture("collections/bukhari.rwy")});
  REQUIRE(run.code == kExitOk);
  return store;
}

TEST_CASE("help matches the golden file") {
  auto run = Invoke({"--help"});
  CHECK(run.code == kExitOk);
  CHECK(run.out == ReadFile(std::string(RIWAYA_GOLDEN_DIR) + "/help.txt"));
}

TEST_CASE("usage errors exit 1") {
  CHECK(Invoke({}).code == kExitUsage);
  CHECK(Invoke({"frobnicate"}).code == kExitUsage);
  CHECK(Invoke({"query"}).code == kExitUsage);  // no store anywhere
  CHECK(Invoke({"report", "--store", "x"}).code == kExitUsage);  // --flag missing
  ScratchDir dir;
  std::string store = CollectionsStore(dir);
  CHECK(Invoke({"query", "--store", store, "--flag", "trad_proph=sometimes"}).code == kExitUsage);
  CHECK(Invoke({"chains", "--store", store, "--min-len", "1"}).code == kExitUsage);
}

TEST_CASE("io errors exit 3") {
  ScratchDir dir;
  CHECK(Invoke({"query", "--store", (dir / "missing").string()}).code == kExitIo);
  CHECK(Invoke({"parse-check", (dir / "missing.rwy").string()}).code == kExitIo);
  std::string store = (dir / "db").string();
  CHECK(Invoke({"init", "--store", store}).code == kExitOk);
  CHECK(Invoke({"init", "--store", store}).code == kExitIo);
}

TEST_CASE("data errors exit 2 and name the file and line") {
  ScratchDir dir;
  auto bad = dir / "bad.rwy";
  testing::WriteFile(bad,
                     "#WORK id=1 title=\"W\" traditionist=\"T\" died=none edition=\"\"\n"
                     "##CHAPTER id=1 ordinal=1 heading=\"C\"\n"
                     "###TRAD id=1 ordinal=1\n%FLAG miracle=perhaps\n");
  auto run = Invoke({"parse-check", bad.string()});
  CHECK(run.code == kExitData);
  CHECK(run.err.find(bad.string() + ":4: SyntaxError") != std::string::npos);

  std::string store = (dir / "db").string();
  Invoke({"init", "--store", store});
  CHECK(Invoke({"query", "--store", store, "--flag", "fiscale"}).code == kExitData);
  CHECK(Invoke({"stats", "--store", store, "--work", "1", "--flag", "miracle"}).code ==
        kExitData);
}

TEST_CASE("parse-check reports counts") {
  auto run = Invoke({"parse-check", Fixture("collections/abd_al_razzaq.rwy"), Fixture("five_link.rwy")});
  CHECK(run.code == kExitOk);
  CHECK(run.out.find("\t1\t31\t147\n") != std::string::npos);
  CHECK(run.out.find("\t1\t1\t1\n") != std::string::npos);
}

TEST_CASE("report reproduces the fixture table") {
  ScratchDir dir;
  std::string store = CollectionsStore(dir);
  auto run = Invoke({"report", "--store", store, "--flag", "trad_proph"});
  REQUIRE(run.code == kExitOk);
  CHECK(run.out.find("\t147\t91\t31\t27\t61.9\t87.1\n") != std::string::npos);
  CHECK(run.out.find("\t579\t319\t47\t47\t55.1\t100.0\n") != std::string::npos);
  CHECK(run.out.find("\t488\t402\t90\t87\t82.4\t96.7\n") != std::string::npos);
  auto partial = Invoke({"report", "--store", store, "--flag", "trad_proph", "--works", "3,1"});
  CHECK(partial.out.find("al-Buḫārī") < partial.out.find("ʿAbd al-Razzāq"));
}

TEST_CASE("store falls back to the environment and --store wins") {
  ScratchDir dir;
  std::string store = CollectionsStore(dir);
  auto via_env = Invoke({"attrib", "--transmitter", "2"}, store);
  CHECK(via_env.code == kExitOk);
  auto explicit_wrong = Invoke({"attrib", "--store", (dir / "nope").string(),
                                "--transmitter", "2"}, store);
  CHECK(explicit_wrong.code == kExitIo);
}

TEST_CASE("commands are deterministic") {
  ScratchDir a, b;
  std::string sa = CollectionsStore(a), sb = CollectionsStore(b);
  for (std::vector<std::string> args :
       {std::vector<std::string>{"chains", "--top", "5"},
        {"graph", "--format", "dot"},
        {"query", "--flag", "miracle=liminal-only"},
        {"report", "--flag", "militaire", "--format", "text"}}) {
    auto with_a = args, with_b = args;
    with_a.insert(with_a.end(), {"--store", sa});
    with_b.insert(with_b.end(), {"--store", sb});
    auto ra = Invoke(with_a), rb = Invoke(with_b);
    CHECK(ra.code == kExitOk);
    CHECK(ra.out == rb.out);
  }
  // Whole export directories are identical.
  Invoke({"export", "--store", sa, "--out", (a / "out").string()});
  Invoke({"export", "--store", sb, "--out", (b / "out").string()});
  for (const char* name : {"traditions.tsv", "link_indiv_trad.tsv", "manifest.json"}) {
    CHECK(ReadFile(a / "out" / name) == ReadFile(b / "out" / name));
  }
}

TEST_CASE("extract and tag") {
  auto run = Invoke({"extract", Fixture("ambiguity.rwy"), "--lexicon", Fixture("ambiguity.lex")});
  CHECK(run.code == kExitOk);
  CHECK(run.out.find("\tambiguous\t") != std::string::npos);
  CHECK(run.out.find("3:Saʿd:7|12") != std::string::npos);
  CHECK(run.out.find("\theuristic\tok\t") != std::string::npos);

  auto tagged = Invoke({"tag", Fixture("ambiguity.rwy"), "--lexicon", Fixture("ambiguity.lex")});
  CHECK(tagged.code == kExitOk);
  CHECK(tagged.out.find("@NAME[7|12]{Saʿd}") != std::string::npos);
  CHECK(Invoke({"tag", Fixture("ambiguity.rwy"), "--lexicon", Fixture("ambiguity.lex"),
                "--scope", "everywhere"}).code == kExitUsage);
}

TEST_CASE("failed ingest leaves the store untouched") {
  ScratchDir dir;
  std::string store = (dir / "db").string();
  Invoke({"init", "--store", store});
  auto bad = dir / "bad.rwy";
  testing::WriteFile(bad, "#WORK id=1 title=\"W\"\n###TRAD id=1 ordinal=1\n");
  auto run = Invoke({"ingest", "--store", store, Fixture("five_link.rwy"), bad.string(),
                     "--lexicon", Fixture("five_link.lex")});
  CHECK(run.code == kExitData);
  auto query = Invoke({"query", "--store", store});
  CHECK(query.code == kExitOk);
  CHECK(std::count(query.out.begin(), query.out.end(), '\n') == 1);  // header only
}

}  // namespace
}  // namespace riwaya
