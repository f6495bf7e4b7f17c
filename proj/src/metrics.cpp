#include "depseq/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <tuple>

#include "depseq/error.hpp"
#include "json.hpp"

namespace depseq {

ScoreCounts& ScoreCounts::operator+=(const ScoreCounts& o) {
  gold_arcs += o.gold_arcs;
  predicted_arcs += o.predicted_arcs;
  correct_unlabeled += o.correct_unlabeled;
  correct_labeled += o.correct_labeled;
  words += o.words;
  correct_head_words += o.correct_head_words;
  correct_head_label_words += o.correct_head_label_words;
  return *this;
}

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> f1(std::size_t correct, std::size_t gold, std::size_t pred) {
  if (gold == 0 && pred == 0) return std::nullopt;
  if (correct == 0) return 0.0;
  return 2.0 * static_cast<double>(correct) / static_cast<double>(gold + pred);
}

void require_same_length(const DependencyGraph& gold, const DependencyGraph& pred) {
  if (gold.sentence_length() != pred.sentence_length())
    throw Error(ErrorCode::kLengthMismatch, "gold has " + std::to_string(gold.sentence_length()) +
                                                " words, prediction " + std::to_string(pred.sentence_length()));
}

}  // namespace

ScoreReport ScoreReport::from_counts(MetricKind kind, const ScoreCounts& counts) {
  ScoreReport r;
  r.kind = kind;
  r.counts = counts;
  if (kind == MetricKind::kAttachment) {
    r.uas = ratio(counts.correct_head_words, counts.words);
    r.las = ratio(counts.correct_head_label_words, counts.words);
  } else {
    r.uf = f1(counts.correct_unlabeled, counts.gold_arcs, counts.predicted_arcs);
    r.lf = f1(counts.correct_labeled, counts.gold_arcs, counts.predicted_arcs);
  }
  return r;
}

ScoreReport score_sydp(const DependencyGraph& gold, const DependencyGraph& pred, std::span<const char> excluded) {
  require_same_length(gold, pred);
  const auto n = static_cast<Position>(gold.sentence_length());
  ScoreCounts c;
  for (Position d = 1; d <= n; ++d) {
    if (!excluded.empty() && excluded[static_cast<std::size_t>(d - 1)]) continue;
    ++c.words;
    const auto g = gold.arcs_of(d);
    const auto p = pred.arcs_of(d);
    if (p.size() != 1 || p.front().is_isolated() || g.front().is_isolated()) continue;
    if (p.front().head != g.front().head) continue;
    ++c.correct_head_words;
    if (p.front().relation == g.front().relation) ++c.correct_head_label_words;
  }
  return ScoreReport::from_counts(MetricKind::kAttachment, c);
}

ScoreReport score_sedp(const DependencyGraph& gold, const DependencyGraph& pred) {
  require_same_length(gold, pred);
  // Arcs are sorted by (dependent, head) and (dependent, head) is unique, so
  // a merge walk counts both intersections.
  ScoreCounts c;
  auto real = [](const Arc& a) { return !a.is_isolated(); };
  c.gold_arcs = static_cast<std::size_t>(std::count_if(gold.arcs().begin(), gold.arcs().end(), real));
  c.predicted_arcs = static_cast<std::size_t>(std::count_if(pred.arcs().begin(), pred.arcs().end(), real));
  auto gi = gold.arcs().begin();
  auto pi = pred.arcs().begin();
  while (gi != gold.arcs().end() && pi != pred.arcs().end()) {
    if (!real(*gi)) { ++gi; continue; }
    if (!real(*pi)) { ++pi; continue; }
    const auto gk = std::make_tuple(gi->dependent, *gi->head);
    const auto pk = std::make_tuple(pi->dependent, *pi->head);
    if (gk < pk) {
      ++gi;
    } else if (pk < gk) {
      ++pi;
    } else {
      ++c.correct_unlabeled;
      if (gi->relation == pi->relation) ++c.correct_labeled;
      ++gi;
      ++pi;
    }
  }
  return ScoreReport::from_counts(MetricKind::kF1, c);
}

ScoreReport aggregate(std::span<const ScoreReport> reports) {
  if (reports.empty()) return ScoreReport::from_counts(MetricKind::kAttachment, {});
  ScoreCounts total;
  const auto kind = reports.front().kind;
  for (const auto& r : reports) {
    if (r.kind != kind) throw Error(ErrorCode::kMixedKinds, "cannot aggregate attachment and F1 reports");
    total += r.counts;
  }
  return ScoreReport::from_counts(kind, total);
}

std::vector<char> punctuation_mask(const Sentence& sentence) {
  std::vector<char> mask;
  mask.reserve(sentence.size());
  for (const auto& w : sentence.words())
    mask.push_back(std::all_of(w.begin(), w.end(), [](unsigned char ch) { return std::ispunct(ch) != 0; }) ? 1 : 0);
  return mask;
}

namespace {

std::string percent(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * *v);
  return buf;
}

}  // namespace

std::string render_percentages(const ScoreReport& report) {
  if (report.kind == MetricKind::kAttachment)
    return "UAS " + percent(report.uas) + "\nLAS " + percent(report.las) + "\n";
  return "UF " + percent(report.uf) + "\nLF " + percent(report.lf) + "\n";
}

std::string render_counts(const ScoreReport& report) {
  nlohmann::ordered_json j;
  const auto& c = report.counts;
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
  j["kind"] = report.kind == MetricKind::kAttachment ? "attachment" : "f1";
  j["counts"] = {
      {"gold_arcs", c.gold_arcs},
      {"predicted_arcs", c.predicted_arcs},
      {"correct_unlabeled", c.correct_unlabeled},
      {"correct_labeled", c.correct_labeled},
      {"words", c.words},
      {"correct_head_words", c.correct_head_words},
      {"correct_head_label_words", c.correct_head_label_words},
  };
  if (report.kind == MetricKind::kAttachment) {
    j["uas"] = opt(report.uas);
    j["las"] = opt(report.las);
  } else {
    j["uf"] = opt(report.uf);
    j["lf"] = opt(report.lf);
  }
  return j.dump();
}

}  // namespace depseq
