// Serial reference vs OpenMP batch kernels over a synthetic corpus.
//
//   bench_batch --benchmark_filter=Serialize
//
// Parallel variants take the worker count as the benchmark argument.

#include <benchmark/benchmark.h>

#include "depseq/batch.hpp"
#include "support/testkit.hpp"

using namespace depseq;

namespace {

constexpr std::size_t kSentences = 4000;

const Schema& tree_schema() {
  static const Schema s = Schema::tree("t", {"p", "q", "r", "root"});
  return s;
}

const CorpusDocument& corpus() {
  static const CorpusDocument doc = [] {
    testkit::Rng rng(2024);
    CorpusDocument d{{}, CorpusFormat::kConllX, tree_schema(), {}};
    for (std::size_t i = 0; i < kSentences; ++i) {
      const auto n = static_cast<std::size_t>(testkit::uniform(rng, 5, 40));
      auto s = testkit::random_sentence(rng, n);
      auto g = testkit::random_tree(rng, n, tree_schema());
      d.sentences.push_back({std::move(s), std::move(g), {}});
    }
    return d;
  }();
  return doc;
}

struct Pairs {
  std::vector<DependencyGraph> gold, pred;
};

const Pairs& pairs() {
  static const Pairs p = [] {
    testkit::Rng rng(2025);
    Pairs out;
    for (const auto& s : corpus().sentences) {
      out.gold.push_back(s.graph);
      out.pred.push_back(testkit::random_tree(rng, s.sentence.size(), tree_schema()));
    }
    return out;
  }();
  return p;
}

void SerializeSerial(benchmark::State& state) {
  const auto config = with_shared_registry({}, tree_schema());
  for (auto _ : state) benchmark::DoNotOptimize(serialize_corpus_serial(corpus(), config));
  state.SetItemsProcessed(state.iterations() * int64_t(kSentences));
}

void SerializeParallel(benchmark::State& state) {
  const auto config = with_shared_registry({}, tree_schema());
  for (auto _ : state) benchmark::DoNotOptimize(serialize_corpus(corpus(), config, int(state.range(0))));
  state.SetItemsProcessed(state.iterations() * int64_t(kSentences));
}

void ScoreSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(score_corpus_serial(pairs().gold, pairs().pred, MetricKind::kAttachment));
  state.SetItemsProcessed(state.iterations() * int64_t(kSentences));
}

void ScoreParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(score_corpus(pairs().gold, pairs().pred, MetricKind::kAttachment, int(state.range(0))));
  state.SetItemsProcessed(state.iterations() * int64_t(kSentences));
}

}  // namespace

BENCHMARK(SerializeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(SerializeParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(ScoreSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(ScoreParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
