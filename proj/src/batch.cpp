#include "depseq/batch.hpp"

#include "depseq/error.hpp"

namespace depseq {

int resolve_jobs(int jobs) noexcept {
#ifdef _OPENMP
  return jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
  return 1;
#endif
}

namespace {

auto serialize_one(const CorpusDocument& doc, const SerializerConfig& config) {
  return [&doc, &config](std::size_t i) {
    const auto& s = doc.sentences[i];
    return render(serialize(s.sentence, s.graph, doc.schema, config));
  };
}

auto score_one(std::span<const DependencyGraph> gold, std::span<const DependencyGraph> pred, MetricKind kind) {
  return [gold, pred, kind](std::size_t i) {
    return kind == MetricKind::kAttachment ? score_sydp(gold[i], pred[i]) : score_sedp(gold[i], pred[i]);
  };
}

void require_same_length(std::span<const DependencyGraph> gold, std::span<const DependencyGraph> pred) {
  if (gold.size() != pred.size())
    throw Error(ErrorCode::kLengthMismatch, std::to_string(gold.size()) + " gold vs " + std::to_string(pred.size()) +
                                                " predicted sentences");
}

ScoreReport total_of(MetricKind kind, const std::vector<ScoreReport>& reports) {
  if (reports.empty()) return ScoreReport::from_counts(kind, {});
  return aggregate(reports);
}

}  // namespace

std::vector<std::string> serialize_corpus(const CorpusDocument& doc, const SerializerConfig& config, int jobs) {
  const auto shared = with_shared_registry(config, doc.schema);
  return parallel_map(doc.sentences.size(), jobs, serialize_one(doc, shared));
}

std::vector<std::string> serialize_corpus_serial(const CorpusDocument& doc, const SerializerConfig& config) {
  return serial_map(doc.sentences.size(), serialize_one(doc, config));
}

LegalityReport legality_rates_parallel(std::span<const LegalityInput> outputs, const Schema& schema,
                                       const SerializerConfig& config, int jobs) {
  const auto shared = with_shared_registry(config, schema);
  const auto outcomes = parallel_map(outputs.size(), jobs, [&](std::size_t i) {
    return check_legality(outputs[i].sentence, outputs[i].output, schema, shared);
  });
  return fold_legality(outcomes);
}

CorpusScore score_corpus(std::span<const DependencyGraph> gold, std::span<const DependencyGraph> pred, MetricKind kind,
                         int jobs) {
  require_same_length(gold, pred);
  auto reports = parallel_map(gold.size(), jobs, score_one(gold, pred, kind));
  auto total = total_of(kind, reports);
  return {std::move(reports), total};
}

CorpusScore score_corpus_serial(std::span<const DependencyGraph> gold, std::span<const DependencyGraph> pred,
                                MetricKind kind) {
  require_same_length(gold, pred);
  auto reports = serial_map(gold.size(), score_one(gold, pred, kind));
  auto total = total_of(kind, reports);
  return {std::move(reports), total};
}

}  // namespace depseq
