#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "depseq/corpus_io.hpp"
#include "depseq/legality.hpp"
#include "depseq/metrics.hpp"
#include "depseq/serializer.hpp"

namespace depseq {

// Effective worker count; jobs <= 0 means the OpenMP default.
int resolve_jobs(int jobs) noexcept;

// Applies fn to 0..n-1 and keeps results in index order. If any call throws,
// the exception of the lowest failing index is rethrown after the loop, so
// outcomes do not depend on scheduling.
template <class Fn>
auto parallel_map(std::size_t n, int jobs, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  // Slots are optional so R need not be default-constructible.
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_jobs(jobs))
#endif
  for (long i = 0; i < count; ++i) {
    try {
      slots[static_cast<std::size_t>(i)].emplace(fn(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  (void)jobs;
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Serial reference for parallel_map.
template <class Fn>
auto serial_map(std::size_t n, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  std::vector<decltype(fn(std::size_t{}))> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

// Rendered targets, one per sentence, in document order.
std::vector<std::string> serialize_corpus(const CorpusDocument& doc, const SerializerConfig& config, int jobs);
std::vector<std::string> serialize_corpus_serial(const CorpusDocument& doc, const SerializerConfig& config);

LegalityReport legality_rates_parallel(std::span<const LegalityInput> outputs, const Schema& schema,
                                       const SerializerConfig& config, int jobs);

// Per-sentence reports plus their micro-average. Lengths of the spans must
// agree (Error(kLengthMismatch)).
struct CorpusScore {
  std::vector<ScoreReport> sentences;
  ScoreReport total;
};

CorpusScore score_corpus(std::span<const DependencyGraph> gold, std::span<const DependencyGraph> pred, MetricKind kind,
                         int jobs);
CorpusScore score_corpus_serial(std::span<const DependencyGraph> gold, std::span<const DependencyGraph> pred,
                                MetricKind kind);

}  // namespace depseq
