#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "depseq/core.hpp"

namespace depseq {

enum class MetricKind { kAttachment, kF1 };

struct ScoreCounts {
  std::size_t gold_arcs = 0;
  std::size_t predicted_arcs = 0;
  std::size_t correct_unlabeled = 0;
  std::size_t correct_labeled = 0;
  std::size_t words = 0;
  std::size_t correct_head_words = 0;
  std::size_t correct_head_label_words = 0;

  ScoreCounts& operator+=(const ScoreCounts& o);
  bool operator==(const ScoreCounts&) const = default;
};

// Fractions are derived from counts and absent when their denominator is
// empty on both sides.
struct ScoreReport {
  MetricKind kind = MetricKind::kAttachment;
  ScoreCounts counts;
  std::optional<double> uas;
  std::optional<double> las;
  std::optional<double> uf;
  std::optional<double> lf;

  static ScoreReport from_counts(MetricKind kind, const ScoreCounts& counts);
};

// Per-word head accuracy. A word earns credit only when it has exactly one
// predicted arc and that arc's head (and label, for LAS) matches gold; root
// self-arcs are ordinary arcs. `excluded` optionally masks positions
// (index p-1), e.g. punctuation. Throws Error(kLengthMismatch).
ScoreReport score_sydp(const DependencyGraph& gold, const DependencyGraph& pred, std::span<const char> excluded = {});

// F1 over non-isolated arc sets: (dependent, head) for UF and
// (dependent, head, relation) for LF. F1 is 0 when nothing matches, absent
// when both sets are empty. Throws Error(kLengthMismatch).
ScoreReport score_sedp(const DependencyGraph& gold, const DependencyGraph& pred);

// Micro-average: sums counts and recomputes fractions. Throws
// Error(kMixedKinds).
ScoreReport aggregate(std::span<const ScoreReport> reports);

// Positions whose word consists only of punctuation characters.
std::vector<char> punctuation_mask(const Sentence& sentence);

// "UAS 80.00\nLAS 80.00\n" style lines.
std::string render_percentages(const ScoreReport& report);
// JSON object with kind, raw counts and fractions.
std::string render_counts(const ScoreReport& report);

}  // namespace depseq
