#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "depseq/serializer.hpp"

namespace depseq {

enum class LegalityStage { kFormation, kStructure };

std::string_view stage_name(LegalityStage stage) noexcept;

// nullopt means legal; otherwise the reason.
std::optional<std::string> check_formation(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                                           const SerializerConfig& config);

// Throws Error(kPrecondition) when the output is not formation-legal.
std::optional<std::string> check_structure(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                                           const SerializerConfig& config);

struct SentenceLegality {
  std::optional<std::string> formation;  // failure reason
  std::optional<std::string> structure;  // failure reason; only checked when formation passed

  bool formation_ok() const noexcept { return !formation; }
  bool structure_ok() const noexcept { return !formation && !structure; }
};

SentenceLegality check_legality(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                                const SerializerConfig& config);

struct LegalityViolation {
  std::size_t sentence_id = 0;  // 1-based input index
  LegalityStage stage = LegalityStage::kFormation;
  std::string reason;

  bool operator==(const LegalityViolation&) const = default;
};

struct LegalityReport {
  std::size_t total = 0;
  std::size_t formation_legal = 0;
  std::size_t structural_legal = 0;
  std::vector<LegalityViolation> violations;

  bool operator==(const LegalityReport&) const = default;
};

struct LegalityInput {
  Sentence sentence;
  TokenSequence output;
};

// Folds per-sentence outcomes, in input order, into a report.
LegalityReport fold_legality(std::span<const SentenceLegality> outcomes);

LegalityReport legality_rates(std::span<const LegalityInput> outputs, const Schema& schema,
                              const SerializerConfig& config);

// "n/a" for an empty corpus, else count/total to 4 decimals.
std::string format_rate(std::size_t count, std::size_t total);
// Percentage to 2 decimals, "n/a" for an empty corpus.
std::string format_percent(std::size_t count, std::size_t total);

// One JSON object per violation, then a summary object.
std::string render_report(const LegalityReport& report);

}  // namespace depseq
