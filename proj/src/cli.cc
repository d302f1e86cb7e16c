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

#include "riwaya/cli.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "riwaya/analytics.h"
#include "riwaya/markup.h"
#include "riwaya/store.h"
#include "tsv.h"

namespace riwaya {
namespace {

// Error carrying the file it came from, for "file:line: message" output.
struct FileError {
  std::string file;
  Error error;
};

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Lexicon LoadLexicon(const std::string& path) {
  if (path.empty()) return {};
  try {
    return ParseLexicon(ReadText(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIoError) throw;
    throw FileError{path, e};
  }
}

MarkupDocument LoadMarkup(const std::string& path, const Lexicon* lexicon) {
  const std::string text = ReadText(path);
  try {
    return ParseMarkup(text, lexicon);
  } catch (const Error& e) {
    throw FileError{path, e};
  }
}

int ExitFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIoError: return kExitIo;
    case ErrorKind::kInvalidArgument: return kExitUsage;
    default: return kExitData;
  }
}

TriMatch ModeOrThrow(const std::string& text) {
  const auto mode = ParseTriMatch(text);
  if (!mode) {
    throw Error(ErrorKind::kInvalidArgument,
                "unknown mode '" + text +
                    "' (strict-yes, yes-or-liminal, liminal-only, no-only)");
  }
  return *mode;
}

std::string ChainText(const IsnadChain& chain) {
  std::string out;
  for (size_t i = 0; i < chain.links.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(chain.links[i].transmitter_id) + ":" +
           tsv::Escape(chain.links[i].surface_form, ',');
  }
  return out;
}

std::string FlagText(const ThematicFlags& flags) {
  std::string out;
  for (const auto& [key, value] : flags.entries()) {
    if (!out.empty()) out += ';';
    out += key + "=" + std::string(ToString(value));
  }
  return out;
}

std::string IdList(const std::vector<Id>& ids, char sep) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(ids[i]);
  }
  return out;
}

struct Options {
  std::string store;
  std::string lexicon;
  std::string format = "tsv";
  std::string mode = "strict-yes";
  int verbosity = 0;

  std::vector<std::string> files;
  std::string output;
  std::vector<std::string> flag_keys;
  bool no_flags = false;
  std::string scope = "all";
  std::optional<Id> work;
  std::optional<Id> chapter;
  std::optional<Id> transmitter;
  std::optional<size_t> position;
  std::vector<std::string> flag_filters;
  std::string flag;
  std::vector<Id> works;
  size_t min_len = 2;
  size_t top = 10;
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err, std::optional<std::string> env_store)
      : out_(out), err_(err), env_store_(std::move(env_store)) {}

  int Run(const std::vector<std::string>& args);

 private:
  void Build();
  void Dispatch();
  Store OpenStore();
  const std::string& StorePath();
  void CheckFormat(std::initializer_list<const char*> allowed);

  void Init();
  void ParseCheck();
  void Tag();
  void Extract();
  void Ingest();
  void Query();
  void Stats();
  void Report();
  void Attrib();
  void Chains();
  void Graph();
  void Export();

  std::ostream& out_;
  std::ostream& err_;
  std::optional<std::string> env_store_;
  CLI::App app_{"Corpus analytics for isnad/matn tradition collections.", "riwaya"};
  Options o_;
  std::map<std::string, CLI::App*> subs_;
  bool parse_check_failed_ = false;
};

void Cli::Build() {
  app_.require_subcommand(1);
  app_.set_help_all_flag("--help-all", "Print help for every subcommand");
  app_.add_flag("-v,--verbose", o_.verbosity, "Progress diagnostics on stderr");

  auto add_store = [this](CLI::App* sub) {
    sub->add_option("--store", o_.store,
                    "Store directory (default: $RIWAYA_STORE)");
  };
  auto add_mode = [this](CLI::App* sub) {
    sub->add_option("--mode", o_.mode,
                    "Flag match: strict-yes, yes-or-liminal, liminal-only, no-only")
        ->capture_default_str();
  };

  auto* init = app_.add_subcommand("init", "Create an empty store");
  add_store(init);
  init->add_option("--flags", o_.flag_keys, "Flag vocabulary, comma-separated "
                   "(default: the nine standard keys)")
      ->delimiter(',');
  init->add_flag("--no-flags", o_.no_flags, "Create the store with no flag keys");
  init->add_option("--lexicon", o_.lexicon,
                   "Seed transmitters from a .lex file (ids must run from 1)");
  subs_["init"] = init;

  auto* check = app_.add_subcommand(
      "parse-check", "Validate .rwy files; prints file, works, chapters, traditions");
  check->add_option("files", o_.files, ".rwy files")->required();
  check->add_option("--lexicon", o_.lexicon,
                    "Also check @NAME ids against a .lex file");
  subs_["parse-check"] = check;

  auto* tag = app_.add_subcommand("tag", "Apply a lexicon and print the tagged .rwy");
  tag->add_option("file", o_.files, ".rwy file")->required()->expected(1);
  tag->add_option("--lexicon", o_.lexicon, ".lex file")->required();
  tag->add_option("--scope", o_.scope, "isnad, matn or all")->capture_default_str();
  tag->add_option("-o,--output", o_.output, "Write to a file instead of stdout");
  subs_["tag"] = tag;

  auto* extract = app_.add_subcommand(
      "extract", "Extract isnad chains; ambiguous names are reported, not resolved");
  extract->add_option("file", o_.files, ".rwy file")->required()->expected(1);
  extract->add_option("--lexicon", o_.lexicon, ".lex file")->required();
  subs_["extract"] = extract;

  auto* ingest = app_.add_subcommand(
      "ingest", "Import .rwy files into the store, in argument order, atomically");
  add_store(ingest);
  ingest->add_option("files", o_.files, ".rwy files")->required();
  ingest->add_option("--lexicon", o_.lexicon, ".lex file");
  subs_["ingest"] = ingest;

  auto* query = app_.add_subcommand("query", "List traditions matching every filter");
  add_store(query);
  query->add_option("--work", o_.work, "Work id");
  query->add_option("--chapter", o_.chapter, "Chapter id");
  query->add_option("--transmitter", o_.transmitter,
                    "Transmitter id (via the individual/tradition links)");
  query->add_option("--flag", o_.flag_filters,
                    "key or key=mode; repeatable, all must hold");
  subs_["query"] = query;

  auto* stats = app_.add_subcommand("stats", "Mention statistics for one work");
  add_store(stats);
  stats->add_option("--work", o_.work, "Work id")->required();
  stats->add_option("--flag", o_.flag, "Flag key")->required();
  add_mode(stats);
  stats->add_option("--format", o_.format, "tsv or text")->capture_default_str();
  subs_["stats"] = stats;

  auto* report = app_.add_subcommand("report", "Per-work mention table");
  add_store(report);
  report->add_option("--flag", o_.flag, "Flag key")->required();
  report->add_option("--works", o_.works,
                     "Work ids in row order, comma-separated (default: all)")
      ->delimiter(',');
  add_mode(report);
  report->add_option("--format", o_.format, "tsv or text")->capture_default_str();
  subs_["report"] = report;

  auto* attrib = app_.add_subcommand(
      "attrib", "Traditions whose chain contains a transmitter");
  add_store(attrib);
  attrib->add_option("--transmitter", o_.transmitter, "Transmitter id")->required();
  attrib->add_option("--work", o_.work, "Restrict to one work");
  attrib->add_option("--position", o_.position,
                     "Only at this 0-based chain position (0 = collector)");
  subs_["attrib"] = attrib;

  auto* chains = app_.add_subcommand("chains", "Most common contiguous chain segments");
  add_store(chains);
  chains->add_option("--min-len", o_.min_len, "Minimum segment length (>= 2)")
      ->capture_default_str();
  chains->add_option("--top", o_.top, "Number of patterns")->capture_default_str();
  chains->add_option("--format", o_.format, "tsv or text")->capture_default_str();
  subs_["chains"] = chains;

  auto* graph = app_.add_subcommand("graph", "Weighted transmission graph");
  add_store(graph);
  graph->add_option("--works", o_.works, "Work ids, comma-separated (default: all)")
      ->delimiter(',');
  graph->add_option("--format", o_.format, "tsv or dot")->capture_default_str();
  subs_["graph"] = graph;

  auto* exp = app_.add_subcommand("export", "Write the store tables to a directory");
  add_store(exp);
  exp->add_option("--out", o_.output, "Target directory")->required();
  subs_["export"] = exp;
}

int Cli::Run(const std::vector<std::string>& args) {
  Build();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app_.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app_.exit(e, out_, err_);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app_.exit(e, out_, err_);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err_ << "riwaya: " << e.what() << "\n";
    err_ << "Run with --help for more information.\n";
    return kExitUsage;
  }

  try {
    Dispatch();
  } catch (const FileError& e) {
    err_ << e.file;
    if (e.error.line() > 0) err_ << ":" << e.error.line();
    err_ << ": " << ErrorKindName(e.error.kind()) << ": " << e.error.what() << "\n";
    return ExitFor(e.error.kind());
  } catch (const Error& e) {
    err_ << "riwaya: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitFor(e.kind());
  }
  return parse_check_failed_ ? kExitData : kExitOk;
}

const std::string& Cli::StorePath() {
  if (o_.store.empty() && env_store_) o_.store = *env_store_;
  if (o_.store.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "--store is required (or set RIWAYA_STORE)");
  }
  return o_.store;
}

Store Cli::OpenStore() { return Store::Open(StorePath()); }

void Cli::CheckFormat(std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (o_.format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw Error(ErrorKind::kInvalidArgument,
              "unsupported --format '" + o_.format + "' (" + list + ")");
}

void Cli::Dispatch() {
  for (const auto& [name, sub] : subs_) {
    if (!sub->parsed()) continue;
    if (name == "init") Init();
    if (name == "parse-check") ParseCheck();
    if (name == "tag") Tag();
    if (name == "extract") Extract();
    if (name == "ingest") Ingest();
    if (name == "query") Query();
    if (name == "stats") Stats();
    if (name == "report") Report();
    if (name == "attrib") Attrib();
    if (name == "chains") Chains();
    if (name == "graph") Graph();
    if (name == "export") Export();
  }
}

void Cli::Init() {
  std::vector<std::string> vocabulary = DefaultFlagVocabulary();
  if (o_.no_flags) {
    vocabulary.clear();
  } else if (!o_.flag_keys.empty()) {
    vocabulary = o_.flag_keys;
  }
  const Lexicon lexicon = LoadLexicon(o_.lexicon);
  Store staged(vocabulary);
  size_t seeded = 0;
  if (!lexicon.names.empty()) {
    seeded = ImportDocument(staged, MarkupDocument{}, lexicon).transmitters;
  }
  Store created = Store::Create(StorePath(), vocabulary);
  if (seeded > 0) {
    ImportDocument(created, MarkupDocument{}, lexicon);
    created.Save();
  }
  out_ << "store\tflag_keys\ttransmitters\n"
       << StorePath() << "\t" << vocabulary.size() << "\t" << seeded << "\n";
}

void Cli::ParseCheck() {
  std::optional<Lexicon> lexicon;
  if (!o_.lexicon.empty()) lexicon = LoadLexicon(o_.lexicon);
  out_ << "file\tworks\tchapters\ttraditions\n";
  for (const auto& file : o_.files) {
    try {
      const MarkupDocument doc = LoadMarkup(file, lexicon ? &*lexicon : nullptr);
      size_t chapters = 0;
      for (const auto& w : doc.works) chapters += w.chapters.size();
      out_ << file << "\t" << doc.works.size() << "\t" << chapters << "\t"
           << doc.TraditionCount() << "\n";
      if (o_.verbosity > 0) err_ << file << ": ok\n";
    } catch (const FileError& e) {
      err_ << e.file << ":" << e.error.line() << ": "
           << ErrorKindName(e.error.kind()) << ": " << e.error.what() << "\n";
      parse_check_failed_ = true;
    }
  }
}

void Cli::Tag() {
  TagScope scope;
  if (o_.scope == "isnad") {
    scope = TagScope::kIsnadOnly;
  } else if (o_.scope == "matn") {
    scope = TagScope::kMatnOnly;
  } else if (o_.scope == "all") {
    scope = TagScope::kAll;
  } else {
    throw Error(ErrorKind::kInvalidArgument,
                "--scope must be isnad, matn or all");
  }
  const Lexicon lexicon = LoadLexicon(o_.lexicon);
  const MarkupDocument doc = LoadMarkup(o_.files.front(), nullptr);
  const std::string text = SerializeMarkup(TagOccurrences(doc, lexicon, scope));
  if (o_.output.empty()) {
    out_ << text;
    return;
  }
  std::ofstream file(o_.output, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw Error(ErrorKind::kIoError, "cannot write " + o_.output);
}

void Cli::Extract() {
  const Lexicon lexicon = LoadLexicon(o_.lexicon);
  const std::string& path = o_.files.front();
  const MarkupDocument doc = LoadMarkup(path, nullptr);
  out_ << "work_id\tchapter_id\ttradition_id\tsegmentation\tstatus\tchain\t"
          "ambiguities\n";
  for (const auto& work : doc.works) {
    for (const auto& chapter : work.chapters) {
      for (const auto& block : chapter.traditions) {
        Extraction extraction;
        try {
          extraction = ExtractIsnad(block, lexicon);
        } catch (const Error& e) {
          throw FileError{path, e};
        }
        out_ << work.id << "\t" << chapter.id << "\t" << block.id << "\t"
             << (extraction.heuristic ? "heuristic" : "explicit") << "\t";
        if (!extraction.ambiguous()) {
          out_ << "ok\t" << ChainText(extraction.chain()) << "\t\n";
          continue;
        }
        const AmbiguityReport& report = extraction.report();
        std::string detail;
        for (const auto& a : report.ambiguous) {
          if (!detail.empty()) detail += ';';
          detail += std::to_string(a.position) + ":" + tsv::Escape(a.surface_form) +
                    ":" + IdList(a.candidates, '|');
        }
        out_ << "ambiguous\t" << ChainText(report.resolved) << "\t" << detail << "\n";
      }
    }
  }
}

void Cli::Ingest() {
  const Lexicon lexicon = LoadLexicon(o_.lexicon);
  Store store = OpenStore();
  std::vector<MarkupDocument> docs;
  for (const auto& file : o_.files) {
    docs.push_back(LoadMarkup(file, nullptr));
    if (o_.verbosity > 0) err_ << file << ": parsed\n";
  }
  out_ << "file\ttransmitters\tworks\tchapters\ttraditions\tindiv_trad_links\t"
          "recueil_trad_links\tambiguities\n";
  std::ostringstream rows;
  for (size_t i = 0; i < docs.size(); ++i) {
    ImportReport report;
    try {
      report = ImportDocument(store, docs[i], lexicon);
    } catch (const Error& e) {
      throw FileError{o_.files[i], e};
    }
    rows << o_.files[i] << "\t" << report.transmitters << "\t" << report.works
         << "\t" << report.chapters << "\t" << report.traditions << "\t"
         << report.indiv_trad_links << "\t" << report.recueil_trad_links << "\t"
         << report.ambiguities << "\n";
    for (const auto& review : report.reviews) {
      for (const auto& a : review.report.ambiguous) {
        err_ << o_.files[i] << ": tradition " << review.document_tradition_id
             << " (store id " << review.tradition_id << ") needs review: '"
             << a.surface_form << "' at position " << a.position
             << " matches transmitters " << IdList(a.candidates, '|') << "\n";
      }
    }
  }
  store.Save();
  out_ << rows.str();
}

void Cli::Query() {
  const Store store = OpenStore();
  TraditionFilter filter;
  filter.work_id = o_.work;
  filter.chapter_id = o_.chapter;
  filter.transmitter_id = o_.transmitter;
  for (const auto& filter_text : o_.flag_filters) {
    const size_t eq = filter_text.find('=');
    FlagPredicate predicate;
    predicate.key = filter_text.substr(0, eq);
    if (eq != std::string::npos) predicate.mode = ModeOrThrow(filter_text.substr(eq + 1));
    filter.flags.push_back(std::move(predicate));
  }
  out_ << "id\twork_id\tchapter_id\tordinal\tisnad\tflags\tneeds_review\t"
          "matn_summary\n";
  for (const auto& t : QueryTraditions(store, filter)) {
    out_ << t.id << "\t" << store.FindChapter(t.chapter_id)->work_id << "\t"
         << t.chapter_id << "\t" << t.ordinal_in_chapter << "\t"
         << ChainText(t.isnad) << "\t" << FlagText(t.flags) << "\t"
         << (t.needs_review ? 1 : 0) << "\t" << tsv::Escape(t.matn_summary)
         << "\n";
  }
}

void Cli::Stats() {
  CheckFormat({"tsv", "text"});
  const TriMatch mode = ModeOrThrow(o_.mode);
  const Store store = OpenStore();
  const MentionStats s = ComputeMentionStats(store, *o_.work, o_.flag, mode);
  const std::pair<const char*, std::string> fields[] = {
      {"work_id", std::to_string(s.work_id)},
      {"total_traditions", std::to_string(s.total_traditions)},
      {"mentioning", std::to_string(s.mentioning)},
      {"total_chapters", std::to_string(s.total_chapters)},
      {"chapters_mentioning", std::to_string(s.chapters_mentioning)},
      {"pct_traditions", s.pct_traditions.Render()},
      {"pct_chapters", s.pct_chapters.Render()},
  };
  if (o_.format == "text") {
    for (const auto& [name, value] : fields) {
      out_ << name << std::string(20 - std::string(name).size(), ' ') << value
           << "\n";
    }
    return;
  }
  std::string header, row;
  for (const auto& [name, value] : fields) {
    header += (header.empty() ? "" : "\t") + std::string(name);
    row += (row.empty() ? "" : "\t") + value;
  }
  out_ << header << "\n" << row << "\n";
}

void Cli::Report() {
  CheckFormat({"tsv", "text"});
  const TriMatch mode = ModeOrThrow(o_.mode);
  const Store store = OpenStore();
  std::vector<Id> works = o_.works;
  if (works.empty()) {
    for (const auto& w : store.works()) works.push_back(w.id);
  }
  const ReportTable table = BuildReportTable(store, o_.flag, mode, works);
  out_ << (o_.format == "text" ? table.ToText() : table.ToTsv());
}

void Cli::Attrib() {
  const Store store = OpenStore();
  AttributionScope scope;
  scope.work_id = o_.work;
  scope.position = o_.position;
  out_ << "tradition_id\n";
  for (Id id : Attribution(store, *o_.transmitter, scope)) out_ << id << "\n";
}

void Cli::Chains() {
  CheckFormat({"tsv", "text"});
  const Store store = OpenStore();
  const auto patterns = CommonChains(store, o_.min_len, o_.top);
  if (o_.format == "text") {
    for (const auto& p : patterns) {
      std::string names;
      for (Id id : p.sequence) {
        if (!names.empty()) names += " ← ";
        names += store.FindTransmitter(id)->canonical_name;
      }
      out_ << p.support << "  " << names << "\n";
    }
    return;
  }
  out_ << "rank\tsupport\tlength\tsequence\n";
  for (size_t i = 0; i < patterns.size(); ++i) {
    out_ << i + 1 << "\t" << patterns[i].support << "\t"
         << patterns[i].sequence.size() << "\t" << IdList(patterns[i].sequence, ',')
         << "\n";
  }
}

void Cli::Graph() {
  CheckFormat({"tsv", "dot"});
  const Store store = OpenStore();
  std::optional<std::vector<Id>> scope;
  if (!o_.works.empty()) scope = o_.works;
  const TransmissionGraph graph = BuildTransmissionGraph(store, scope);
  out_ << (o_.format == "dot" ? GraphToDot(graph, store) : GraphToTsv(graph));
}

void Cli::Export() {
  const Store store = OpenStore();
  ExportTables(store, o_.output);
  out_ << "exported\t" << o_.output << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, std::optional<std::string> env_store) {
  Cli cli(out, err, std::move(env_store));
  return cli.Run(args);
}

}  // namespace riwaya
