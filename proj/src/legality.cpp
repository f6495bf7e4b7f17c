#include "depseq/legality.hpp"

#include <cstdio>
#include "json.hpp"

namespace depseq {

std::string_view stage_name(LegalityStage stage) noexcept {
  return stage == LegalityStage::kFormation ? "FORMATION" : "STRUCTURE";
}

std::optional<std::string> check_formation(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                                           const SerializerConfig& config) {
  auto decoded = decode_arcs(sentence, output, schema, config);
  if (const auto* issue = std::get_if<DecodeIssue>(&decoded)) return issue->reason;
  return std::nullopt;
}

namespace {

std::optional<std::string> structure_of(const Sentence& sentence, std::vector<Arc> arcs, const Schema& schema) {
  // decode_arcs returns arcs sorted by (dependent, head).
  for (std::size_t i = 1; i < arcs.size(); ++i) {
    const auto& a = arcs[i - 1];
    const auto& b = arcs[i];
    if (a.dependent != b.dependent) continue;
    if (a.head == b.head)
      return "duplicate arc (" + std::to_string(b.dependent) + ", " + (b.head ? std::to_string(*b.head) : "no") + ")";
    if (a.is_isolated() || b.is_isolated()) return "isolated word " + std::to_string(b.dependent) + " also has heads";
  }
  const DependencyGraph graph(sentence.size(), std::move(arcs));
  auto v = validate_graph(graph, schema);
  if (v.ok()) return std::nullopt;
  return v.summary();
}

}  // namespace

std::optional<std::string> check_structure(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                                           const SerializerConfig& config) {
  auto decoded = decode_arcs(sentence, output, schema, config);
  if (const auto* issue = std::get_if<DecodeIssue>(&decoded))
    throw Error(ErrorCode::kPrecondition, "output is not formation-legal: " + issue->reason);
  return structure_of(sentence, std::move(std::get<std::vector<Arc>>(decoded)), schema);
}

SentenceLegality check_legality(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                                const SerializerConfig& config) {
  SentenceLegality out;
  auto decoded = decode_arcs(sentence, output, schema, config);
  if (const auto* issue = std::get_if<DecodeIssue>(&decoded)) {
    out.formation = issue->reason;
    return out;
  }
  out.structure = structure_of(sentence, std::move(std::get<std::vector<Arc>>(decoded)), schema);
  return out;
}

LegalityReport fold_legality(std::span<const SentenceLegality> outcomes) {
  LegalityReport report;
  report.total = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.formation) {
      report.violations.push_back({i + 1, LegalityStage::kFormation, *o.formation});
      continue;
    }
    ++report.formation_legal;
    if (o.structure)
      report.violations.push_back({i + 1, LegalityStage::kStructure, *o.structure});
    else
      ++report.structural_legal;
  }
  return report;
}

LegalityReport legality_rates(std::span<const LegalityInput> outputs, const Schema& schema,
                              const SerializerConfig& config) {
  std::vector<SentenceLegality> outcomes;
  outcomes.reserve(outputs.size());
  for (const auto& in : outputs) outcomes.push_back(check_legality(in.sentence, in.output, schema, config));
  return fold_legality(outcomes);
}

std::string format_rate(std::size_t count, std::size_t total) {
  if (total == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(count) / static_cast<double>(total));
  return buf;
}

std::string format_percent(std::size_t count, std::size_t total) {
  if (total == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * static_cast<double>(count) / static_cast<double>(total));
  return buf;
}

std::string render_report(const LegalityReport& report) {
  std::string out;
  for (const auto& v : report.violations) {
    nlohmann::ordered_json line;
    line["sentence"] = v.sentence_id;
    line["stage"] = stage_name(v.stage);
    line["reason"] = v.reason;
    out += line.dump() + '\n';
  }
  nlohmann::ordered_json summary;
  summary["summary"] = {
      {"total", report.total},
      {"formation_legal", report.formation_legal},
      {"structural_legal", report.structural_legal},
      {"formation_rate", format_rate(report.formation_legal, report.total)},
      {"structure_rate", format_rate(report.structural_legal, report.total)},
  };
  out += summary.dump() + '\n';
  return out;
}

}  // namespace depseq
