#include "depseq/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

#include "depseq/error.hpp"

namespace depseq {

std::string_view format_name(CorpusFormat format) noexcept {
  switch (format) {
    case CorpusFormat::kConllX: return "conllx";
    case CorpusFormat::kConllU: return "conllu";
    case CorpusFormat::kSdp2015: return "sdp2015";
    case CorpusFormat::kSemEval16: return "semeval16";
    case CorpusFormat::kSeqText: return "seqtext";
  }
  return "unknown";
}

std::optional<CorpusFormat> parse_format_name(std::string_view name) {
  for (auto f : {CorpusFormat::kConllX, CorpusFormat::kConllU, CorpusFormat::kSdp2015, CorpusFormat::kSemEval16,
                 CorpusFormat::kSeqText})
    if (format_name(f) == name) return f;
  return std::nullopt;
}

std::optional<CorpusFormat> format_from_extension(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  const auto ext = path.substr(dot + 1);
  if (ext == "conllx" || ext == "conll") return CorpusFormat::kConllX;
  if (ext == "conllu") return CorpusFormat::kConllU;
  if (ext == "sdp") return CorpusFormat::kSdp2015;
  if (ext == "sem16" || ext == "semeval16") return CorpusFormat::kSemEval16;
  if (ext == "seq" || ext == "seqtext") return CorpusFormat::kSeqText;
  return std::nullopt;
}

bool same_content(const CorpusDocument& a, const CorpusDocument& b) {
  return a.schema == b.schema && a.sentences == b.sentences;
}

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

using Block = std::vector<Line>;

std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks;
  Block current;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++number;
    const bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (blank) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back({number, line});
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string at_line(std::size_t number) { return "line " + std::to_string(number) + ": "; }

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& what) {
  throw Error(code, at_line(line) + what);
}

// Collects relation labels; sorted so inferred schemata do not depend on
// row order.
class LabelCollector {
 public:
  void add(const std::string& label) { seen_.insert(label); }
  std::vector<std::string> labels() const { return {seen_.begin(), seen_.end()}; }

 private:
  std::set<std::string> seen_;
};

// Renumbers source ids to contiguous positions.
class IdMap {
 public:
  Position add(std::string_view id, const Line& line, std::vector<std::string>& warnings, std::size_t sentence) {
    const auto pos = static_cast<Position>(positions_.size() + 1);
    if (!positions_.emplace(std::string(id), pos).second) fail(ErrorCode::kMalformed, line.number, "duplicate id " + std::string(id));
    if (to_int(id) != pos && !warned_) {
      warnings.push_back("sentence " + std::to_string(sentence) + ": source ids renumbered to contiguous positions");
      warned_ = true;
    }
    return pos;
  }
  std::optional<Position> find(std::string_view id) const {
    auto it = positions_.find(std::string(id));
    if (it == positions_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<std::string, Position> positions_;
  bool warned_ = false;
};

struct PendingArc {
  Position dependent;
  std::string head;  // raw source id; "0" for root
  std::string relation;
  std::size_t line;
};

std::optional<Position> resolve_head(const PendingArc& p, const IdMap& ids) {
  if (p.head == "0") return p.dependent;
  if (!to_int(p.head)) fail(ErrorCode::kNonIntegerHead, p.line, "head '" + p.head + "' is not an integer");
  auto pos = ids.find(p.head);
  if (!pos) fail(ErrorCode::kHeadOutOfRange, p.line, "head " + p.head + " is outside the sentence");
  return pos;
}

std::string default_name(const ReadOptions& options, std::string_view fallback) {
  return options.schema_name.empty() ? std::string(fallback) : options.schema_name;
}

DependencyGraph make_graph(std::size_t n, std::vector<Arc> arcs, std::size_t line) {
  try {
    return DependencyGraph(n, std::move(arcs));
  } catch (const Error& e) {
    fail(ErrorCode::kInvalidGraph, line, e.what());
  }
}

void validate_all(const CorpusDocument& doc, const std::vector<std::size_t>& first_lines) {
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    auto v = validate_graph(doc.sentences[i].graph, doc.schema);
    if (!v.ok()) fail(ErrorCode::kInvalidGraph, first_lines[i], "sentence " + std::to_string(i + 1) + ": " + v.summary());
  }
}

std::string root_label_of(const std::set<std::string>& root_labels, const ReadOptions& options, std::size_t line) {
  if (root_labels.size() > 1) fail(ErrorCode::kInvalidSchema, line, "inconsistent root labels");
  return root_labels.empty() ? options.root_label : *root_labels.begin();
}

std::vector<std::string> with_root(std::vector<std::string> labels, const std::string& root) {
  if (std::find(labels.begin(), labels.end(), root) == labels.end()) labels.push_back(root);
  return labels;
}

void check_against(const Schema& schema, const std::vector<Arc>& arcs, std::size_t line) {
  for (const auto& a : arcs)
    if (!a.is_isolated() && !schema.has_relation(a.relation))
      fail(ErrorCode::kUnknownRelation, line, "relation '" + a.relation + "' is not in schema " + schema.name());
}

// Shared parsing of CoNLL-style rows: CoNLL-X/U and SemEval-2016.
struct ConllSentence {
  std::vector<std::string> words;
  PassThrough extra;
  std::vector<PendingArc> pending;
  IdMap ids;
  std::size_t first_line = 0;
};

ConllSentence parse_conll_block(const Block& block, std::size_t& columns, bool multi_row, std::size_t sentence_no,
                                std::vector<std::string>& warnings) {
  ConllSentence s;
  s.first_line = block.front().number;
  std::string previous_id;
  for (const auto& line : block) {
    if (line.text.front() == '#') {
      s.extra.extra_lines.emplace_back(s.words.size(), std::string(line.text));
      continue;
    }
    const auto f = split_fields(line.text);
    if (columns == 0) {
      if (f.size() != 8 && f.size() != 10)
        fail(ErrorCode::kBadColumnCount, line.number, "expected 8 or 10 columns, got " + std::to_string(f.size()));
      columns = f.size();
    }
    if (f.size() != columns)
      fail(ErrorCode::kBadColumnCount, line.number,
           "expected " + std::to_string(columns) + " columns, got " + std::to_string(f.size()));
    const auto id = f[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
      if (multi_row) fail(ErrorCode::kMalformed, line.number, "multiword or empty-node ids are not SemEval-2016");
      s.extra.extra_lines.emplace_back(s.words.size(), std::string(line.text));
      continue;
    }
    if (!to_int(id)) fail(ErrorCode::kMalformed, line.number, "id '" + std::string(id) + "' is not an integer");

    if (multi_row && !s.words.empty() && id == previous_id) {
      s.pending.push_back({static_cast<Position>(s.words.size()), std::string(f[6]), std::string(f[7]), line.number});
      continue;
    }
    previous_id = std::string(id);
    const Position pos = s.ids.add(id, line, warnings, sentence_no);
    s.words.emplace_back(f[1]);
    WordInfo info;
    info.source_id = std::string(id);
    info.lemma = std::string(f[2]);
    info.cpos = std::string(f[3]);
    info.pos = std::string(f[4]);
    info.feats = std::string(f[5]);
    if (columns == 10) {
      info.col9 = std::string(f[8]);
      info.col10 = std::string(f[9]);
    }
    s.extra.words.push_back(std::move(info));
    s.pending.push_back({pos, std::string(f[6]), std::string(f[7]), line.number});
  }
  if (s.words.empty()) fail(ErrorCode::kMalformed, s.first_line, "sentence without word lines");
  return s;
}

}  // namespace

// ---- CoNLL-X / CoNLL-U -----------------------------------------------------

namespace {

CorpusDocument read_conll_like(std::string_view text, bool semeval, const ReadOptions& options) {
  const auto blocks = split_blocks(text);
  if (blocks.empty()) throw Error(ErrorCode::kEmptyFile, "no sentences");

  struct Built {
    ConllSentence parsed;
    std::vector<Arc> arcs;
  };
  std::vector<Built> built;
  std::vector<std::string> warnings;
  LabelCollector labels;
  std::set<std::string> root_labels;
  std::size_t columns = 0;

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Built item{parse_conll_block(blocks[b], columns, semeval, b + 1, warnings), {}};
    for (const auto& p : item.parsed.pending) {
      if (semeval && p.head == "_")
        fail(ErrorCode::kIsolatedNotAllowed, p.line, "SemEval-2016 words must have a head");
      const auto head = resolve_head(p, item.parsed.ids);
      if (p.head == "0") root_labels.insert(p.relation);
      labels.add(p.relation);
      item.arcs.push_back(Arc{p.dependent, head, p.relation});
    }
    built.push_back(std::move(item));
  }

  std::optional<Schema> schema = options.schema;
  if (!schema) {
    const auto root = root_label_of(root_labels, options, blocks.front().front().number);
    auto rels = with_root(labels.labels(), root);
    schema = semeval ? Schema::graph(default_name(options, "semeval16"), std::move(rels), root, true, false)
                     : Schema::tree(default_name(options, "conll"), std::move(rels), root);
  }

  CorpusDocument doc{{}, semeval ? CorpusFormat::kSemEval16 : (columns == 8 ? CorpusFormat::kConllX : CorpusFormat::kConllU),
                     *schema, std::move(warnings)};
  std::vector<std::size_t> first_lines;
  for (auto& item : built) {
    check_against(doc.schema, item.arcs, item.parsed.first_line);
    const auto n = item.parsed.words.size();
    doc.sentences.push_back({Sentence(std::move(item.parsed.words)), make_graph(n, std::move(item.arcs), item.parsed.first_line),
                             std::move(item.parsed.extra)});
    first_lines.push_back(item.parsed.first_line);
  }
  validate_all(doc, first_lines);
  return doc;
}

}  // namespace

CorpusDocument read_conll(std::string_view text, const ReadOptions& options) {
  return read_conll_like(text, false, options);
}

// ---- SDP 2015 / SemEval-2016 -----------------------------------------------

namespace {

CorpusDocument read_sdp2015(std::string_view text, const ReadOptions& options) {
  const auto blocks = split_blocks(text);
  if (blocks.empty()) throw Error(ErrorCode::kEmptyFile, "no sentences");

  struct Built {
    std::vector<std::string> words;
    PassThrough extra;
    std::vector<Arc> arcs;
    std::size_t first_line;
  };
  std::vector<Built> built;
  std::vector<std::string> warnings;
  LabelCollector labels;
  const std::string root = options.schema ? options.schema->root_label() : options.root_label;

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    Built s{{}, {}, {}, block.front().number};
    std::vector<std::pair<const Line*, std::vector<std::string_view>>> rows;
    for (const auto& line : block) {
      if (line.text.front() == '#') {
        s.extra.extra_lines.emplace_back(rows.size(), std::string(line.text));
        continue;
      }
      auto f = split_fields(line.text);
      if (f.size() < 7) fail(ErrorCode::kBadColumnCount, line.number, "expected at least 7 columns, got " + std::to_string(f.size()));
      rows.emplace_back(&line, std::move(f));
    }
    if (rows.empty()) fail(ErrorCode::kMalformed, s.first_line, "sentence without word lines");

    IdMap ids;
    std::vector<Position> predicates;
    for (const auto& [line, f] : rows) {
      const auto id = f[0];
      if (!to_int(id)) fail(ErrorCode::kMalformed, line->number, "id '" + std::string(id) + "' is not an integer");
      const auto pos = ids.add(id, *line, warnings, b + 1);
      if (f[4] != "+" && f[4] != "-") fail(ErrorCode::kMalformed, line->number, "top flag must be + or -");
      if (f[5] != "+" && f[5] != "-") fail(ErrorCode::kMalformed, line->number, "pred flag must be + or -");
      if (f[5] == "+") predicates.push_back(pos);
    }
    for (const auto& [line, f] : rows) {
      if (f.size() != 7 + predicates.size())
        fail(ErrorCode::kBadColumnCount, line->number,
             "expected " + std::to_string(7 + predicates.size()) + " columns (7 + one per predicate), got " +
                 std::to_string(f.size()));
      const auto pos = static_cast<Position>(s.words.size() + 1);
      s.words.emplace_back(f[1]);
      WordInfo info;
      info.source_id = std::string(f[0]);
      info.lemma = std::string(f[2]);
      info.pos = std::string(f[3]);
      info.pred = std::string(f[5]);
      info.frame = std::string(f[6]);
      s.extra.words.push_back(std::move(info));

      bool headed = false;
      if (f[4] == "+") {
        labels.add(root);
        s.arcs.push_back(Arc{pos, pos, root});
        headed = true;
      }
      for (std::size_t j = 0; j < predicates.size(); ++j) {
        const auto cell = f[7 + j];
        if (cell == "_") continue;
        labels.add(std::string(cell));
        s.arcs.push_back(Arc{pos, predicates[j], std::string(cell)});
        headed = true;
      }
      if (!headed) s.arcs.push_back(Arc::isolated(pos));
    }
    built.push_back(std::move(s));
  }

  Schema schema = options.schema ? *options.schema
                                 : Schema::graph(default_name(options, "sdp2015"), with_root(labels.labels(), root), root,
                                                 true, true);
  if (!schema.allows_isolated())
    for (const auto& s : built)
      for (const auto& a : s.arcs)
        if (a.is_isolated())
          fail(ErrorCode::kIsolatedNotAllowed, s.first_line, "word " + std::to_string(a.dependent) + " is isolated");

  CorpusDocument doc{{}, CorpusFormat::kSdp2015, schema, std::move(warnings)};
  std::vector<std::size_t> first_lines;
  for (auto& s : built) {
    check_against(doc.schema, s.arcs, s.first_line);
    const auto n = s.words.size();
    doc.sentences.push_back({Sentence(std::move(s.words)), make_graph(n, std::move(s.arcs), s.first_line), std::move(s.extra)});
    first_lines.push_back(s.first_line);
  }
  validate_all(doc, first_lines);
  return doc;
}

}  // namespace

CorpusDocument read_sdp(std::string_view text, CorpusFormat flavor, const ReadOptions& options) {
  if (flavor == CorpusFormat::kSdp2015) return read_sdp2015(text, options);
  if (flavor == CorpusFormat::kSemEval16) return read_conll_like(text, true, options);
  throw Error(ErrorCode::kIncompatibleFormat, "read_sdp takes SDP2015 or SEMEVAL16");
}

// ---- SEQTEXT ----------------------------------------------------------------

namespace {

std::vector<std::string> seqtext_relations(const std::vector<Block>& blocks) {
  LabelCollector labels;
  for (const auto& block : blocks) {
    if (block.size() < 2) continue;
    std::istringstream in{std::string(block[1].text)};
    std::vector<std::string> unit;
    std::string tok;
    auto flush = [&] {
      if (unit.size() == 3 && unit[1].size() > 2 && unit[1].front() == '[' && unit[1].back() == ']' && unit[1] != "[NO]")
        labels.add(unit[1].substr(1, unit[1].size() - 2));
      unit.clear();
    };
    while (in >> tok) {
      if (tok == "[SPT]")
        flush();
      else
        unit.push_back(tok);
    }
    flush();
  }
  return labels.labels();
}

}  // namespace

CorpusDocument read_seqtext(std::string_view text, const ReadOptions& options) {
  const auto blocks = split_blocks(text);
  if (blocks.empty()) throw Error(ErrorCode::kEmptyFile, "no sentence pairs");
  for (const auto& block : blocks)
    if (block.size() != 2)
      fail(ErrorCode::kMalformed, block.front().number, "expected an input line followed by a target line");

  const auto& config = options.serializer;
  std::optional<Schema> schema = options.schema;
  if (!schema) {
    std::vector<std::string> rels;
    if (config.relation_mode == RelationMode::kWordMapping)
      for (const auto& [label, word] : config.relation_words) rels.push_back(label);
    else
      rels = seqtext_relations(blocks);
    schema = Schema::graph(default_name(options, "seqtext"), with_root(std::move(rels), options.root_label),
                           options.root_label, true, true);
  }

  CorpusDocument doc{{}, CorpusFormat::kSeqText, *schema, {}};
  for (const auto& block : blocks) {
    try {
      auto sentence = decode_input(block[0].text);
      const auto registry = config.registry ? config.registry
                                            : std::make_shared<const TokenRegistry>(std::span<const Schema>(&doc.schema, 1), config);
      auto graph = deserialize(sentence, parse_sequence(block[1].text, *registry), doc.schema, config);
      doc.sentences.push_back({std::move(sentence), std::move(graph), {}});
    } catch (const Error& e) {
      fail(e.code(), block.front().number, e.what());
    }
  }

  if (!options.schema) {
    // Tighten the permissive schema to what the data shows.
    bool all_trees = true, multi = false, isolated = false;
    for (const auto& s : doc.sentences) {
      if (tree_shape_violation(s.graph)) all_trees = false;
      for (Position d = 1; d <= static_cast<Position>(s.sentence.size()); ++d) {
        const auto g = s.graph.arcs_of(d);
        if (g.size() > 1) multi = true;
        if (g.front().is_isolated()) isolated = true;
      }
    }
    const auto& s = doc.schema;
    doc.schema = all_trees ? Schema::tree(s.name(), s.relations(), s.root_label())
                           : Schema::graph(s.name(), s.relations(), s.root_label(), multi, isolated);
  }
  std::vector<std::size_t> first_lines;
  for (const auto& block : blocks) first_lines.push_back(block.front().number);
  validate_all(doc, first_lines);
  return doc;
}

CorpusDocument read_corpus(std::string_view text, CorpusFormat format, const ReadOptions& options) {
  switch (format) {
    case CorpusFormat::kConllX:
    case CorpusFormat::kConllU: return read_conll(text, options);
    case CorpusFormat::kSdp2015:
    case CorpusFormat::kSemEval16: return read_sdp(text, format, options);
    case CorpusFormat::kSeqText: return read_seqtext(text, options);
  }
  throw Error(ErrorCode::kIncompatibleFormat, "unknown format");
}

// ---- writers ----------------------------------------------------------------

namespace {

const WordInfo& info_at(const CorpusSentence& s, std::size_t i) {
  static const WordInfo kEmpty;
  return i < s.extra.words.size() ? s.extra.words[i] : kEmpty;
}

void emit_extra(std::string& out, const CorpusSentence& s, std::size_t before) {
  for (const auto& [at, line] : s.extra.extra_lines)
    if (at == before) out += line + '\n';
}

// Source ids are written back when known, so skipped or renumbered ids
// survive a rewrite.
std::string id_of(const CorpusSentence& s, Position p) {
  const auto& id = info_at(s, static_cast<std::size_t>(p - 1)).source_id;
  return id.empty() ? std::to_string(p) : id;
}

std::string head_column(const CorpusSentence& s, const Arc& a) { return a.is_root() ? "0" : id_of(s, *a.head); }

void write_conll(std::string& out, const CorpusDocument& doc, CorpusFormat format) {
  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    const auto& s = doc.sentences[k];
    if (auto why = tree_shape_violation(s.graph))
      throw Error(ErrorCode::kIncompatibleFormat,
                  "sentence " + std::to_string(k + 1) + " is not a tree (" + *why + ") and cannot be written as " +
                      std::string(format_name(format)));
  }
  const bool ten = format == CorpusFormat::kConllU;
  for (const auto& s : doc.sentences) {
    const auto n = s.sentence.size();
    for (std::size_t i = 0; i < n; ++i) {
      emit_extra(out, s, i);
      const auto& info = info_at(s, i);
      const auto& arc = s.graph.arcs_of(static_cast<Position>(i + 1)).front();
      out += id_of(s, static_cast<Position>(i + 1)) + '\t' + s.sentence.words()[i] + '\t' + info.lemma + '\t' + info.cpos + '\t' +
             info.pos + '\t' + info.feats + '\t' + head_column(s, arc) + '\t' + arc.relation;
      if (ten) out += '\t' + info.col9 + '\t' + info.col10;
      out += '\n';
    }
    emit_extra(out, s, n);
    out += '\n';
  }
}

void write_semeval(std::string& out, const CorpusDocument& doc) {
  for (std::size_t k = 0; k < doc.sentences.size(); ++k)
    for (const auto& a : doc.sentences[k].graph.arcs())
      if (a.is_isolated())
        throw Error(ErrorCode::kIncompatibleFormat,
                    "sentence " + std::to_string(k + 1) + " has isolated words, which SemEval-2016 cannot express");
  for (const auto& s : doc.sentences) {
    const auto n = s.sentence.size();
    for (std::size_t i = 0; i < n; ++i) {
      emit_extra(out, s, i);
      const auto& info = info_at(s, i);
      auto group = s.graph.arcs_of(static_cast<Position>(i + 1));
      std::vector<Arc> rows(group.begin(), group.end());
      std::stable_partition(rows.begin(), rows.end(), [](const Arc& a) { return a.is_root(); });
      for (const auto& arc : rows)
        out += id_of(s, static_cast<Position>(i + 1)) + '\t' + s.sentence.words()[i] + '\t' + info.lemma + '\t' + info.cpos + '\t' +
               info.pos + '\t' + info.feats + '\t' + head_column(s, arc) + '\t' + arc.relation + '\t' + info.col9 +
               '\t' + info.col10 + '\n';
    }
    emit_extra(out, s, n);
    out += '\n';
  }
}

void write_sdp2015(std::string& out, const CorpusDocument& doc) {
  for (const auto& s : doc.sentences) {
    const auto n = s.sentence.size();
    std::vector<char> is_pred(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (info_at(s, i).pred == "+") is_pred[i + 1] = 1;
    for (const auto& a : s.graph.arcs())
      if (!a.is_isolated() && !a.is_root()) is_pred[static_cast<std::size_t>(*a.head)] = 1;
    std::vector<Position> predicates;
    for (std::size_t p = 1; p <= n; ++p)
      if (is_pred[p]) predicates.push_back(static_cast<Position>(p));

    for (std::size_t i = 0; i < n; ++i) {
      emit_extra(out, s, i);
      const auto& info = info_at(s, i);
      const auto group = s.graph.arcs_of(static_cast<Position>(i + 1));
      const bool top = std::any_of(group.begin(), group.end(), [](const Arc& a) { return a.is_root(); });
      out += id_of(s, static_cast<Position>(i + 1)) + '\t' + s.sentence.words()[i] + '\t' + info.lemma + '\t' + info.pos + '\t' +
             (top ? "+" : "-") + '\t' + (is_pred[i + 1] ? "+" : "-") + '\t' + info.frame;
      for (auto p : predicates) {
        std::string cell = "_";
        for (const auto& a : group)
          if (a.head == p && !a.is_root()) cell = a.relation;
        out += '\t' + cell;
      }
      out += '\n';
    }
    emit_extra(out, s, n);
    out += '\n';
  }
}

void write_seqtext(std::string& out, const CorpusDocument& doc, const SerializerConfig& config) {
  for (const auto& s : doc.sentences) {
    out += render(encode_input(s.sentence, config)) + '\n';
    out += render(serialize(s.sentence, s.graph, doc.schema, config)) + "\n\n";
  }
}

}  // namespace

std::string write_corpus(const CorpusDocument& doc, CorpusFormat format, const SerializerConfig& config) {
  std::string out;
  switch (format) {
    case CorpusFormat::kConllX:
    case CorpusFormat::kConllU: write_conll(out, doc, format); break;
    case CorpusFormat::kSemEval16: write_semeval(out, doc); break;
    case CorpusFormat::kSdp2015: write_sdp2015(out, doc); break;
    case CorpusFormat::kSeqText: write_seqtext(out, doc, config); break;
  }
  return out;
}

// ---- statistics -------------------------------------------------------------

namespace {

double fraction(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double CorpusStats::repeated_word_fraction() const { return fraction(repeated_word_sentences, sentences); }
double CorpusStats::isolated_word_fraction() const { return fraction(isolated_words, words); }
double CorpusStats::multi_head_word_fraction() const { return fraction(multi_head_words, words); }

CorpusStats corpus_stats(const CorpusDocument& doc) {
  CorpusStats st;
  st.sentences = doc.sentences.size();
  for (const auto& s : doc.sentences) {
    const auto n = s.sentence.size();
    st.words += n;
    st.max_sentence_length = std::max(st.max_sentence_length, n);
    std::set<std::string_view> forms;
    bool repeated = false;
    for (const auto& w : s.sentence.words())
      if (!forms.insert(w).second) repeated = true;
    if (repeated) ++st.repeated_word_sentences;
    for (Position d = 1; d <= static_cast<Position>(n); ++d) {
      const auto g = s.graph.arcs_of(d);
      if (g.front().is_isolated()) ++st.isolated_words;
      if (g.size() > 1) ++st.multi_head_words;
    }
    for (const auto& a : s.graph.arcs())
      if (!a.is_isolated()) ++st.relation_histogram[a.relation];
  }
  return st;
}

std::string render_stats(const CorpusStats& st) {
  char buf[64];
  std::string out;
  auto line = [&](const char* key, const std::string& value) { out += std::string(key) + '\t' + value + '\n'; };
  auto frac = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  line("sentences", std::to_string(st.sentences));
  line("words", std::to_string(st.words));
  line("max_sentence_length", std::to_string(st.max_sentence_length));
  line("repeated_word_sentences", std::to_string(st.repeated_word_sentences));
  line("repeated_word_fraction", frac(st.repeated_word_fraction()));
  line("isolated_words", std::to_string(st.isolated_words));
  line("isolated_word_fraction", frac(st.isolated_word_fraction()));
  line("multi_head_words", std::to_string(st.multi_head_words));
  line("multi_head_word_fraction", frac(st.multi_head_word_fraction()));
  for (const auto& [label, count] : st.relation_histogram) out += "relation\t" + label + '\t' + std::to_string(count) + '\n';
  return out;
}

}  // namespace depseq
