// Copyright 2026 The rehab-extract Authors.
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


#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rehab/classifiers.h"
#include "rehab/error.h"
#include "rehab/evaluator.h"
#include "rehab/goldstore.h"
#include "rehab/ingest.h"
#include "rehab/ontology.h"
#include "rehab/promptgen.h"
#include "rehab/ruletagger.h"
#include "rehab/serialization.h"
#include "rehab/syngen.h"

namespace rehab::cli {
namespace {

namespace fs = std::filesystem;

// Environment override, then the source tree, then the install prefix.
std::string DataDir() {
  if (const char* env = std::getenv("REHAB_DATA_DIR"); env && *env) return env;
  std::error_code ec;
  if (fs::is_directory(REHAB_DATA_DIR, ec)) return REHAB_DATA_DIR;
  return REHAB_INSTALL_DATA_DIR;
}

std::string DataFile(const std::string& name) { return DataDir() + "/" + name; }

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path);
  return in;
}

// Writes through a temporary sibling so a failed run leaves no partial file.
void WriteText(const std::string& path, const std::string& data) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw NotFound("cannot write " + path);
    f << data;
    if (!f.flush()) throw NotFound("cannot write " + path);
  }
  fs::rename(tmp, p);
}

// Sends `data` to a file, or to `out` for "-" or an empty path.
void Emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
  } else {
    WriteText(path, data);
  }
}

struct Globals {
  std::uint64_t seed = 42;
  std::string ontology;
};

struct Context {
  Globals globals;
  std::ostream& out;
  std::ostream& err;

  Ontology LoadOntologyFile() const {
    return Ontology::Load(globals.ontology.empty() ? DataFile("ontology.json")
                                                   : globals.ontology);
  }
  void Log(const std::string& msg) const { err << "rehab-extract: " << msg << '\n'; }
};

// --- sections ---------------------------------------------------------------

struct SectionsArgs {
  std::string notes;
  std::string out;
  std::string sequences_out;
  bool ignore_case = false;
};

void RunSections(const Context& ctx, const SectionsArgs& a) {
  std::vector<NoteFile> files = FilterNoteFiles(ReadNoteDirectory(a.notes), a.ignore_case);
  std::vector<Section> sections;
  for (const NoteFile& f : files) {
    if (auto s = ExtractTherapySection(f)) sections.push_back(std::move(*s));
  }
  std::ostringstream so;
  WriteSections(so, sections);
  Emit(a.out, so.str(), ctx.out);
  if (!a.sequences_out.empty()) {
    std::vector<Sequence> seqs;
    for (const Section& s : sections) {
      std::vector<Sequence> part = SegmentSequences(s);
      seqs.insert(seqs.end(), part.begin(), part.end());
    }
    std::ostringstream qo;
    WriteSequences(qo, seqs, sections);
    WriteText(a.sequences_out, qo.str());
    ctx.Log(std::to_string(seqs.size()) + " sequences");
  }
  ctx.Log(std::to_string(files.size()) + " therapy notes, " + std::to_string(sections.size()) +
          " sections");
}

// --- enrich -----------------------------------------------------------------

struct EnrichArgs {
  std::string sections;
  std::string out;
  int min_len = 200;
  int n_enriched = 300;
  int n_random = 300;
};

void RunEnrich(const Context& ctx, const EnrichArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  std::ifstream in = OpenIn(a.sections);
  std::vector<Section> sections = ReadSections(in);
  SelectionOptions opt;
  opt.min_len = a.min_len;
  opt.n_enriched = a.n_enriched;
  opt.n_random = a.n_random;
  opt.seed = ctx.globals.seed;
  CandidateSets sets = SelectCandidateSets(sections, ontology, opt);
  std::vector<Section> all = sets.enriched;
  std::map<std::string, Origin> origins;
  for (const Section& s : sets.enriched) origins[s.doc_id] = Origin::kEnriched;
  for (const Section& s : sets.random) {
    origins[s.doc_id] = Origin::kRandom;
    all.push_back(s);
  }
  std::ostringstream o;
  WriteSections(o, all, &origins);
  Emit(a.out, o.str(), ctx.out);
  ctx.Log(std::to_string(sets.enriched.size()) + " enriched, " +
          std::to_string(sets.random.size()) + " random");
}

// --- synth ------------------------------------------------------------------

struct SynthArgs {
  int sections = 300;
  std::string out;
  std::string phrasebook;
  double typo_rate = 0.0;
  double placeholder_rate = 0.0;
  double heldout_rate = 0.0;
  bool no_split = false;
  std::string notes_dir;
};

void RunSynth(const Context& ctx, const SynthArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  GeneratorConfig cfg;
  cfg.seed = ctx.globals.seed;
  cfg.n_sections = a.sections;
  cfg.phrasebook =
      Phrasebook::Load(a.phrasebook.empty() ? DataFile("phrasebook.json") : a.phrasebook);
  cfg.noise.typo_rate = a.typo_rate;
  cfg.noise.placeholder_rate = a.placeholder_rate;
  cfg.heldout_rate = a.heldout_rate;
  SyntheticCorpus corpus = GenerateCorpus(cfg, ontology);
  GoldCorpus gold = a.no_split ? corpus.gold : DefaultSplit(corpus.gold, ctx.globals.seed);
  std::ostringstream o;
  WriteGold(o, gold);
  Emit(a.out, o.str(), ctx.out);
  if (!a.notes_dir.empty()) {
    for (const NoteFile& n : RenderNotes(corpus, ctx.globals.seed)) {
      WriteText((fs::path(a.notes_dir) / n.filename).string(), n.text);
    }
  }
  ctx.Log(std::to_string(gold.sections.size()) + " sections, " +
          std::to_string(gold.sequences.size()) + " sequences, " +
          std::to_string(gold.annotations.size()) + " spans, " +
          std::to_string(corpus.typos) + " typos, " +
          std::to_string(corpus.placeholder_substitutions) + " placeholders, " +
          std::to_string(corpus.dropped.size()) + " spans lost to noise");
}

// --- gold -------------------------------------------------------------------

struct GoldArgs {
  std::vector<std::string> gold;
  std::string out;
  int per_origin = 125;
};

void RunGoldValidate(const Context& ctx, const GoldArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  for (const std::string& path : a.gold) {
    GoldCorpus g = ValidateGold(path, ontology);
    ctx.out << path << ": ok, " << g.sections.size() << " sections, " << g.sequences.size()
            << " sequences, " << g.annotations.size() << " spans\n";
  }
}

void RunGoldSplit(const Context& ctx, const GoldArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  if (a.gold.size() != 1) throw ConfigError("gold split takes exactly one --gold file");
  GoldCorpus g = SplitTrainTest(ValidateGold(a.gold[0], ontology), a.per_origin,
                                ctx.globals.seed);
  std::ostringstream o;
  WriteGold(o, g);
  Emit(a.out, o.str(), ctx.out);
}

void RunGoldKappa(const Context& ctx, const GoldArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  std::vector<GoldCorpus> annotators;
  for (const std::string& path : a.gold) annotators.push_back(ValidateGold(path, ontology));
  RatingTable table = BuildAgreementTable(annotators, ontology);
  nlohmann::ordered_json j;
  j["raters"] = table.raters;
  j["items"] = table.items();
  j["kappa"] = FleissKappa(table);
  ctx.out << j.dump() << '\n';
}

// --- tag --------------------------------------------------------------------

struct TagArgs {
  std::string rules;
  std::string sequences;
  std::string out;
  std::string method = "rules";
};

void RunTag(const Context& ctx, const TagArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  CompiledTagger tagger =
      CompileRules(a.rules.empty() ? DataFile("rules.jsonl") : a.rules, ontology);
  std::ifstream in = OpenIn(a.sequences);
  std::vector<Sequence> seqs = ReadSequencesOrGold(in);
  std::vector<SpanAnnotation> spans = tagger.TagAll(seqs);
  std::ostringstream o;
  WriteSpans(o, a.method, spans, seqs);
  Emit(a.out, o.str(), ctx.out);
  ctx.Log(std::to_string(spans.size()) + " spans over " + std::to_string(seqs.size()) +
          " sequences");
}

// --- train / predict --------------------------------------------------------

struct TrainArgs {
  std::string kind;
  std::string gold;
  std::string out;
};

void RunTrain(const Context& ctx, const TrainArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  GoldCorpus gold = ValidateGold(a.gold, ontology);
  ModelBundle bundle = TrainConceptModels(ParseModelKind(a.kind), gold, ontology, TrainConfig{});
  SaveModelBundle(bundle, a.out);
  ctx.Log(std::to_string(bundle.models.size()) + " models trained, " +
          std::to_string(bundle.untrainable.size()) + " concepts lack a class");
}

struct PredictArgs {
  std::string models;
  std::string sequences;
  std::string out;
  std::string method;
};

void RunPredict(const Context& ctx, const PredictArgs& a) {
  ModelBundle bundle = LoadModelBundle(a.models);
  std::ifstream in = OpenIn(a.sequences);
  std::vector<Sequence> seqs = ReadSequencesOrGold(in);
  std::string method = a.method;
  if (method.empty()) {
    method = bundle.models.empty() ? "model" : std::string(ModelKindName(bundle.models[0].kind));
  }
  std::ostringstream o;
  WriteLabels(o, method, PredictSequences(bundle, seqs));
  Emit(a.out, o.str(), ctx.out);
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string gold;
  std::vector<std::string> pred;
  std::string out;
};

void RunEval(const Context& ctx, const EvalArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  GoldCorpus gold = ValidateGold(a.gold, ontology);
  std::vector<MethodResult> results;
  for (const std::string& path : a.pred) {
    std::ifstream in = OpenIn(path);
    PredictionFile p = ReadPredictions(in, gold);
    if (p.spans) {
      for (MethodResult& r : ScoreSpanMethod(p.method, *p.spans, gold, ontology)) {
        results.push_back(std::move(r));
      }
    } else {
      results.push_back(ScoreLabelMethod(p.method, *p.labels, gold, ontology));
    }
  }
  EvalReport report = BuildReport(results, gold, ontology);
  WriteText((fs::path(a.out) / "report.json").string(), ReportToJson(report));
  WriteText((fs::path(a.out) / "report.md").string(), ReportToMarkdown(report));
  ctx.Log(std::to_string(report.rows.size()) + " concepts reported, " +
          std::to_string(report.omitted.size()) + " omitted");
}

// --- prompts ----------------------------------------------------------------

struct PromptArgs {
  std::string gold;
  std::string out;
  std::vector<std::string> concepts;
  std::string backend = "mock";
  std::string replay;
  std::string cache;
  std::string endpoint;
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string token_env = "REHAB_API_TOKEN";
  double rps = 1.0;
  int max_in_flight = 1;
};

std::vector<std::string> PromptConcepts(const PromptArgs& a, const GoldCorpus& gold,
                                        const Ontology& ontology) {
  std::vector<std::string> eligible = EligibleConcepts(gold, ontology);
  if (a.concepts.empty()) return eligible;
  for (const std::string& c : a.concepts) {
    ontology.Lookup(c);
    if (std::find(eligible.begin(), eligible.end(), c) == eligible.end()) {
      throw Ineligible(c + " lacks two positive and two negative training sequences");
    }
  }
  return a.concepts;
}

void RunPromptsBuild(const Context& ctx, const PromptArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  GoldCorpus gold = ValidateGold(a.gold, ontology);
  ExamplePool pool(gold, ontology);
  std::vector<Sequence> targets =
      gold.HasSplit() ? gold.SequencesIn(Split::kTest) : gold.sequences;
  std::string data;
  for (const std::string& c : PromptConcepts(a, gold, ontology)) {
    for (const Sequence& t : targets) {
      data += PromptToJsonLine(pool.Build(c, t, ctx.globals.seed));
      data += '\n';
    }
  }
  Emit(a.out, data, ctx.out);
}

void RunPromptsRun(const Context& ctx, const PromptArgs& a) {
  Ontology ontology = ctx.LoadOntologyFile();
  GoldCorpus gold = ValidateGold(a.gold, ontology);
  std::unique_ptr<ChatBackend> backend;
  if (a.backend == "mock") {
    backend = std::make_unique<MockBackend>(MockBackend::DefaultKeywords(ontology));
  } else if (a.backend == "replay") {
    if (a.replay.empty()) throw ConfigError("--backend replay needs --replay FILE");
    backend = std::make_unique<ReplayBackend>(a.replay);
  } else {
    LiveBackendConfig cfg;
    cfg.endpoint = a.endpoint;
    cfg.path = a.path;
    cfg.model = a.model;
    cfg.token_env = a.token_env;
    cfg.requests_per_second = a.rps;
    backend = std::make_unique<LiveBackend>(cfg);
  }
  std::optional<ResponseCache> cache;
  if (!a.cache.empty()) cache.emplace(a.cache);
  PromptEvalOptions opt;
  opt.seed = ctx.globals.seed;
  opt.max_in_flight = a.max_in_flight;
  std::vector<std::string> concepts = PromptConcepts(a, gold, ontology);
  PromptEvalResult r =
      RunPromptEval(*backend, gold, ontology, concepts, opt, cache ? &*cache : nullptr);

  nlohmann::ordered_json j;
  j["schema"] = "rehab.prompt-eval/1";
  j["backend"] = a.backend;
  j["prompts"] = r.prompts;
  j["backend_calls"] = r.backend_calls;
  j["mean_precision"] = r.mean_precision;
  j["mean_recall"] = r.mean_recall;
  j["mean_f1"] = r.mean_f1;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [c, p] : r.per_concept) {
    per[c] = {{"tp", p.tp}, {"fp", p.fp}, {"fn", p.fn}, {"precision", p.precision},
              {"recall", p.recall}, {"f1", p.f1}, {"unparseable", r.unparseable.at(c)}};
  }
  j["per_concept"] = per;
  Emit(a.out, j.dump(2) + "\n", ctx.out);
  ctx.Log(std::to_string(r.prompts) + " prompts, " + std::to_string(r.backend_calls) +
          " backend calls");
}

std::string VersionText() {
  std::ostringstream o;
  o << "rehab-extract " << REHAB_VERSION << '\n';
  for (const char* s : {kOntologySchema, kSectionsSchema, kSequencesSchema, kGoldSchema,
                        kRulesSchema, kSpansSchema, kLabelsSchema, kModelSchema, kVocabSchema,
                        kReportSchema, kReplaySchema}) {
    o << "  " << s << '\n';
  }
  return o.str();
}

}  // namespace

int Execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rehabilitation exercise concept extraction toolkit", "rehab-extract"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML or INI file with option values");

  Context ctx{{}, out, err};
  bool version = false;
  app.add_flag("--version", version, "Print tool and file-format versions");
  app.add_option("--seed", ctx.globals.seed, "Seed for every randomized stage")
      ->capture_default_str();
  app.add_option("--ontology", ctx.globals.ontology, "Ontology JSON (default: bundled)");

  std::function<void()> action;

  SectionsArgs sec;
  auto* c_sections = app.add_subcommand("sections", "Carve therapy sections out of notes");
  c_sections->add_option("--notes", sec.notes, "Directory of note files")->required()
      ->check(CLI::ExistingDirectory);
  c_sections->add_option("--out", sec.out, "sections.jsonl (default: stdout)");
  c_sections->add_option("--sequences-out", sec.sequences_out, "Also write sequences.jsonl");
  c_sections->add_flag("--ignore-case", sec.ignore_case, "Match THERAPY case-insensitively");
  c_sections->callback([&] { action = [&] { RunSections(ctx, sec); }; });

  EnrichArgs enr;
  auto* c_enrich = app.add_subcommand("enrich", "Select enriched and random candidate sets");
  c_enrich->add_option("--sections", enr.sections, "sections.jsonl")->required();
  c_enrich->add_option("--out", enr.out, "Selected sections (default: stdout)");
  c_enrich->add_option("--min-len", enr.min_len, "Minimum random-set length")
      ->capture_default_str();
  c_enrich->add_option("--n-enriched", enr.n_enriched)->capture_default_str();
  c_enrich->add_option("--n-random", enr.n_random)->capture_default_str();
  c_enrich->callback([&] { action = [&] { RunEnrich(ctx, enr); }; });

  SynthArgs syn;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic gold corpus");
  c_synth->add_option("--sections", syn.sections, "Number of sections")
      ->capture_default_str()->check(CLI::PositiveNumber);
  c_synth->add_option("--out", syn.out, "gold.jsonl (default: stdout)");
  c_synth->add_option("--phrasebook", syn.phrasebook, "Phrasebook JSON (default: bundled)");
  c_synth->add_option("--typo-rate", syn.typo_rate)->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_synth->add_option("--placeholder-rate", syn.placeholder_rate)->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_synth->add_option("--heldout-rate", syn.heldout_rate)->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_synth->add_flag("--no-split", syn.no_split, "Leave the train/test split unassigned");
  c_synth->add_option("--notes-dir", syn.notes_dir, "Also render full note files here");
  c_synth->callback([&] { action = [&] { RunSynth(ctx, syn); }; });

  GoldArgs gold;
  auto* c_gold = app.add_subcommand("gold", "Validate, split or measure agreement");
  c_gold->require_subcommand(1);
  auto* g_validate = c_gold->add_subcommand("validate", "Check gold files");
  g_validate->add_option("--gold", gold.gold, "gold.jsonl")->required();
  g_validate->callback([&] { action = [&] { RunGoldValidate(ctx, gold); }; });
  auto* g_split = c_gold->add_subcommand("split", "Assign a seeded train/test split");
  g_split->add_option("--gold", gold.gold, "gold.jsonl")->required();
  g_split->add_option("--per-origin", gold.per_origin, "Training sections per origin")
      ->capture_default_str();
  g_split->add_option("--out", gold.out, "Split gold.jsonl (default: stdout)");
  g_split->callback([&] { action = [&] { RunGoldSplit(ctx, gold); }; });
  auto* g_kappa = c_gold->add_subcommand("kappa", "Fleiss's kappa across annotators");
  g_kappa->add_option("--gold", gold.gold, "One gold.jsonl per annotator")->required()
      ->expected(2, -1);
  g_kappa->callback([&] { action = [&] { RunGoldKappa(ctx, gold); }; });

  TagArgs tag;
  auto* c_tag = app.add_subcommand("tag", "Run the rule tagger");
  c_tag->add_option("--rules", tag.rules, "rules.jsonl (default: bundled)");
  c_tag->add_option("--sequences", tag.sequences, "sequences.jsonl or gold.jsonl")->required();
  c_tag->add_option("--out", tag.out, "spans.jsonl (default: stdout)");
  c_tag->add_option("--method", tag.method, "Method name in the output")->capture_default_str();
  c_tag->callback([&] { action = [&] { RunTag(ctx, tag); }; });

  TrainArgs trn;
  auto* c_train = app.add_subcommand("train", "Train one classifier per concept");
  c_train->add_option("--kind", trn.kind, "Classifier kind")->required()
      ->check(CLI::IsMember({"logreg", "svm", "ada", "gb"}));
  c_train->add_option("--gold", trn.gold, "gold.jsonl")->required();
  c_train->add_option("--out", trn.out, "Model bundle directory")->required();
  c_train->callback([&] { action = [&] { RunTrain(ctx, trn); }; });

  PredictArgs prd;
  auto* c_predict = app.add_subcommand("predict", "Label sequences with a model bundle");
  c_predict->add_option("--models", prd.models, "Model bundle directory")->required();
  c_predict->add_option("--sequences", prd.sequences, "sequences.jsonl or gold.jsonl")
      ->required();
  c_predict->add_option("--out", prd.out, "labels.jsonl (default: stdout)");
  c_predict->add_option("--method", prd.method, "Method name (default: model kind)");
  c_predict->callback([&] { action = [&] { RunPredict(ctx, prd); }; });

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Score predictions and write the report");
  c_eval->add_option("--gold", ev.gold, "gold.jsonl with a split")->required();
  c_eval->add_option("--pred", ev.pred, "Span or label prediction files")->required()
      ->expected(1, -1);
  c_eval->add_option("--out", ev.out, "Report directory")->required();
  c_eval->callback([&] { action = [&] { RunEval(ctx, ev); }; });

  PromptArgs pa;
  auto* c_prompts = app.add_subcommand("prompts", "Few-shot prompt construction and scoring");
  c_prompts->require_subcommand(1);
  auto* p_build = c_prompts->add_subcommand("build", "Write prompts as JSONL");
  auto* p_run = c_prompts->add_subcommand("run", "Send prompts and score the answers");
  for (CLI::App* sub : {p_build, p_run}) {
    sub->add_option("--gold", pa.gold, "gold.jsonl with a split")->required();
    sub->add_option("--out", pa.out, "Output file (default: stdout)");
    sub->add_option("--concept", pa.concepts, "Restrict to these concepts");
  }
  p_run->add_option("--backend", pa.backend)->capture_default_str()
      ->check(CLI::IsMember({"mock", "replay", "live"}));
  p_run->add_option("--replay", pa.replay, "JSONL of {prompt_hash, response}");
  p_run->add_option("--cache", pa.cache, "Response cache JSONL, resumable");
  p_run->add_option("--endpoint", pa.endpoint, "Live server base URL");
  p_run->add_option("--path", pa.path)->capture_default_str();
  p_run->add_option("--model", pa.model, "Live model name");
  p_run->add_option("--token-env", pa.token_env, "Environment variable with the token")
      ->capture_default_str();
  p_run->add_option("--rps", pa.rps, "Live requests per second")->capture_default_str();
  p_run->add_option("--max-in-flight", pa.max_in_flight)->capture_default_str()
      ->check(CLI::PositiveNumber);
  p_build->callback([&] { action = [&] { RunPromptsBuild(ctx, pa); }; });
  p_run->callback([&] { action = [&] { RunPromptsRun(ctx, pa); }; });

  // --version works without a subcommand.
  for (const std::string& a : args) {
    if (a == "--version") {
      out << VersionText();
      return kExitOk;
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    action();
    return kExitOk;
  } catch (const Error& e) {
    ctx.Log(std::string("error: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    ctx.Log(std::string("error: malformed JSON: ") + e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    ctx.Log(std::string("error: ") + e.what());
  } catch (const std::exception& e) {
    ctx.Log(std::string("error: ") + e.what());
  }
  return kExitValidation;
}

int Execute(const std::vector<std::string>& args) {
  return Execute(args, std::cout, std::cerr);
}

}  // namespace rehab::cli
