#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "depseq/core.hpp"
#include "depseq/serializer.hpp"

namespace depseq {

enum class CorpusFormat { kConllX, kConllU, kSdp2015, kSemEval16, kSeqText };

std::string_view format_name(CorpusFormat format) noexcept;
std::optional<CorpusFormat> parse_format_name(std::string_view name);
// Guess from a file extension (.conllx .conll .conllu .sdp .sem16 .seq).
std::optional<CorpusFormat> format_from_extension(std::string_view path);

// Columns the core model does not interpret, kept for lossless rewriting.
// Absent values are "_" (SDP predicate flag: "-").
struct WordInfo {
  std::string source_id;
  std::string lemma = "_";
  std::string cpos = "_";   // CoNLL-X CPOSTAG / CoNLL-U UPOS
  std::string pos = "_";    // CoNLL-X POSTAG / CoNLL-U XPOS / SDP POS
  std::string feats = "_";
  std::string col9 = "_";   // CoNLL-X PHEAD / CoNLL-U DEPS
  std::string col10 = "_";  // CoNLL-X PDEPREL / CoNLL-U MISC
  std::string pred = "-";   // SDP predicate flag
  std::string frame = "_";  // SDP frame

  bool operator==(const WordInfo&) const = default;
};

struct PassThrough {
  std::vector<WordInfo> words;
  // Non-word lines (comments, multiword ranges, empty nodes), each tagged
  // with the number of words that precede it.
  std::vector<std::pair<std::size_t, std::string>> extra_lines;

  bool operator==(const PassThrough&) const = default;
};

struct CorpusSentence {
  Sentence sentence;
  DependencyGraph graph;
  PassThrough extra;

  bool operator==(const CorpusSentence&) const = default;
};

struct CorpusDocument {
  std::vector<CorpusSentence> sentences;
  CorpusFormat source_format = CorpusFormat::kConllU;
  Schema schema;
  std::vector<std::string> warnings;
};

// True when sentences (words, graphs, pass-through) and schemata agree.
bool same_content(const CorpusDocument& a, const CorpusDocument& b);

struct ReadOptions {
  // Use this schema instead of inferring one; relations outside it fail.
  std::optional<Schema> schema;
  std::string schema_name;  // for inferred schemata; defaults per format
  std::string root_label = "root";  // SDP tops, and CoNLL files without roots
  SerializerConfig serializer;      // SEQTEXT only
};

// CoNLL-X (8 columns) or CoNLL-U (10 columns), picked from the first word
// line. Throws Error with kBadColumnCount, kNonIntegerHead, kHeadOutOfRange,
// kEmptyFile or kInvalidGraph; messages carry line numbers.
CorpusDocument read_conll(std::string_view text, const ReadOptions& options = {});

// SDP 2015 columnar or SemEval-2016 CoNLL-style with one row per head.
CorpusDocument read_sdp(std::string_view text, CorpusFormat flavor, const ReadOptions& options = {});

// PP-rendered input line, serialized target line, blank line.
CorpusDocument read_seqtext(std::string_view text, const ReadOptions& options = {});

CorpusDocument read_corpus(std::string_view text, CorpusFormat format, const ReadOptions& options = {});

// Throws Error(kIncompatibleFormat) when the graphs cannot be expressed in
// `format` (e.g. multi-head words in CoNLL).
std::string write_corpus(const CorpusDocument& doc, CorpusFormat format, const SerializerConfig& config = {});

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t repeated_word_sentences = 0;
  std::size_t isolated_words = 0;
  std::size_t multi_head_words = 0;  // words with two or more arcs
  std::size_t max_sentence_length = 0;
  std::map<std::string, std::size_t> relation_histogram;

  double repeated_word_fraction() const;
  double isolated_word_fraction() const;
  double multi_head_word_fraction() const;
};

CorpusStats corpus_stats(const CorpusDocument& doc);
std::string render_stats(const CorpusStats& stats);

}  // namespace depseq
