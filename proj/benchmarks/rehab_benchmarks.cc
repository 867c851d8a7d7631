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


#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "rehab/classifiers.h"
#include "rehab/goldstore.h"
#include "rehab/ruletagger.h"
#include "rehab/syngen.h"

namespace rehab {
namespace {

std::string Data(const std::string& name) { return std::string(REHAB_DATA_DIR) + "/" + name; }

const Ontology& Onto() {
  static const Ontology o = Ontology::Load(Data("ontology.json"));
  return o;
}

const SyntheticCorpus& Corpus() {
  static const SyntheticCorpus c = [] {
    GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.n_sections = 300;
    cfg.phrasebook = Phrasebook::Load(Data("phrasebook.json"));
    cfg.noise.typo_rate = 0.02;
    cfg.noise.placeholder_rate = 0.05;
    return GenerateCorpus(cfg, Onto());
  }();
  return c;
}

void BM_Synthesize(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.n_sections = static_cast<int>(state.range(0));
  cfg.phrasebook = Phrasebook::Load(Data("phrasebook.json"));
  for (auto _ : state) benchmark::DoNotOptimize(GenerateCorpus(cfg, Onto()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Synthesize)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_TagCorpus(benchmark::State& state) {
  const CompiledTagger tagger = CompileRules(Data("rules.jsonl"), Onto());
  const std::vector<Sequence>& seqs = Corpus().gold.sequences;
  for (auto _ : state) benchmark::DoNotOptimize(tagger.TagAll(seqs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
}
BENCHMARK(BM_TagCorpus)->Unit(benchmark::kMillisecond);

void BM_TrainSvmOneConcept(benchmark::State& state) {
  const std::vector<Sequence>& seqs = Corpus().gold.sequences;
  const std::size_t n = std::min<std::size_t>(seqs.size(), static_cast<std::size_t>(state.range(0)));
  std::vector<Sequence> sample(seqs.begin(), seqs.begin() + static_cast<std::ptrdiff_t>(n));
  Vocabulary vocab = BuildVocabulary(std::span<const Sequence>(sample));
  LabelMap labels = ProjectSpans(Corpus().gold.annotations, sample, Onto());
  std::vector<FeatureVector> x;
  std::vector<bool> y;
  for (const Sequence& s : sample) {
    x.push_back(Vectorize(vocab, s.text));
    y.push_back(labels.at(RefOf(s)).count("side_left") > 0);
  }
  TrainConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        TrainClassifier(ModelKind::kSvmPoly2, "side_left", x, y, vocab.size(), cfg));
  }
}
BENCHMARK(BM_TrainSvmOneConcept)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FleissKappa(benchmark::State& state) {
  std::mt19937_64 rng(1);
  RatingTable table;
  table.raters = 3;
  for (int i = 0; i < state.range(0); ++i) {
    int yes = static_cast<int>(rng() % 4);
    table.counts.push_back({yes, 3 - yes});
  }
  for (auto _ : state) benchmark::DoNotOptimize(FleissKappa(table));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FleissKappa)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace rehab

BENCHMARK_MAIN();
