// depseq: dataset preparation, output validation and scoring for
// dependency-unit sequence targets.
//
// Exit codes: 0 success, 1 usage or format error, 2 validation failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "depseq/alt_serializers.hpp"
#include "depseq/batch.hpp"
#include "depseq/corpus_io.hpp"
#include "depseq/error.hpp"
#include "depseq/legality.hpp"
#include "depseq/metrics.hpp"
#include "depseq/serializer.hpp"

using namespace depseq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;

// Carries an exit code out of a command.
struct Exit {
  int code;
  std::string message;
};

struct RunConfig {
  std::string schema;  // KIND[:NAME]
  std::string format;
  std::string serializer = "unit";
  std::string relation_mode = "special";
  std::string relation_map;
  bool no_positional_prompt = false;
  std::string prefix;
  bool lenient = false;
  int jobs = 0;
  std::string output;
  std::vector<std::string> inputs;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void emit(const RunConfig& rc, const std::string& data) {
  if (rc.output.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(rc.output, std::ios::binary);
  if (!out) throw Exit{kExitUsage, "cannot write " + rc.output};
  out << data;
}

SerializerConfig serializer_config(const RunConfig& rc) {
  SerializerConfig cfg;
  cfg.positional_prompt = !rc.no_positional_prompt;
  if (!rc.prefix.empty()) cfg.schema_prefix = rc.prefix;
  if (rc.relation_mode == "word-map") {
    cfg.relation_mode = RelationMode::kWordMapping;
    if (rc.relation_map.empty()) throw Exit{kExitUsage, "--relation-mode word-map needs --relation-map FILE"};
    // One "label word" pair per line; blank lines and '#' comments ignored.
    for (const auto& line : read_lines(rc.relation_map)) {
      std::istringstream fields(line);
      std::string label, word, extra;
      if (!(fields >> label) || label.front() == '#') continue;
      if (!(fields >> word) || (fields >> extra)) throw Exit{kExitUsage, "bad relation map line: " + line};
      cfg.relation_words[label] = word;
    }
  }
  return cfg;
}

CorpusFormat corpus_format(const RunConfig& rc, const std::string& path) {
  if (!rc.format.empty()) {
    if (auto f = parse_format_name(rc.format)) return *f;
    throw Exit{kExitUsage, "unknown format '" + rc.format + "'"};
  }
  if (auto f = format_from_extension(path)) return *f;
  throw Exit{kExitUsage, "cannot infer the format of " + path + "; pass --format"};
}

// Re-types the document's inferred schema according to --schema.
void apply_schema_selector(const RunConfig& rc, CorpusDocument& doc) {
  if (rc.schema.empty()) return;
  const auto colon = rc.schema.find(':');
  const auto kind = rc.schema.substr(0, colon);
  const auto name = colon == std::string::npos ? doc.schema.name() : rc.schema.substr(colon + 1);
  const auto& s = doc.schema;
  if (kind == "tree")
    doc.schema = Schema::tree(name, s.relations(), s.root_label());
  else if (kind == "sdp15")
    doc.schema = Schema::graph(name, s.relations(), s.root_label(), true, true);
  else if (kind == "semeval16")
    doc.schema = Schema::graph(name, s.relations(), s.root_label(), true, false);
  else
    throw Exit{kExitUsage, "unknown schema kind '" + kind + "' (tree, sdp15, semeval16)"};
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto v = validate_graph(doc.sentences[i].graph, doc.schema);
    if (!v.ok())
      throw Exit{kExitUsage, "sentence " + std::to_string(i + 1) + " violates schema " + rc.schema + ": " + v.summary()};
  }
}

CorpusDocument load_corpus(const RunConfig& rc, const std::string& path) {
  ReadOptions options;
  options.serializer = serializer_config(rc);
  auto doc = read_corpus(read_file(path), corpus_format(rc, path), options);
  for (const auto& w : doc.warnings) std::cerr << path << ": " << w << '\n';
  apply_schema_selector(rc, doc);
  return doc;
}

// ---- serialize ----------------------------------------------------------------

std::string serialize_unit(const CorpusSentence& s, const Schema& schema, const SerializerConfig& cfg) {
  const auto target = serialize(s.sentence, s.graph, schema, cfg);
  const auto back = deserialize(s.sentence, target, schema, cfg);
  if (!(back == s.graph))
    throw Exit{kExitInvalid, "serialization of \"" + render(positional_prompt(s.sentence)) +
                                 "\" is ambiguous: it decodes to a different graph"};
  return render(encode_input(s.sentence, cfg)) + '\n' + render(target) + "\n\n";
}

std::string serialize_prufer(const CorpusSentence& s, const Schema& schema, const SerializerConfig& cfg) {
  const auto seq = prufer_encode(s.sentence, s.graph);
  if (!(prufer_decode(s.sentence, seq, schema.root_label()) == s.graph))
    throw Exit{kExitInvalid, "Prufer round trip failed"};
  return render(encode_input(s.sentence, cfg)) + '\n' + render(seq) + "\n\n";
}

std::string serialize_bracket(const CorpusSentence& s, const Schema&, const SerializerConfig& cfg) {
  const auto bt = bracket_encode(s.sentence, s.graph);
  if (!(bracket_decode(s.sentence, bt) == s.graph)) throw Exit{kExitInvalid, "bracket round trip failed"};
  return render(encode_input(s.sentence, cfg)) + '\n' + render(bt) + "\n\n";
}

int cmd_serialize(const RunConfig& rc) {
  if (rc.inputs.size() != 1) throw Exit{kExitUsage, "serialize takes one corpus"};
  const auto doc = load_corpus(rc, rc.inputs[0]);
  const auto cfg = with_shared_registry(serializer_config(rc), doc.schema);
  auto* fn = rc.serializer == "prufer" ? serialize_prufer : rc.serializer == "bracket" ? serialize_bracket : serialize_unit;
  const auto blocks = parallel_map(doc.sentences.size(), rc.jobs,
                                   [&](std::size_t i) { return fn(doc.sentences[i], doc.schema, cfg); });
  std::string out;
  for (const auto& b : blocks) out += b;
  emit(rc, out);
  return kExitOk;
}

// ---- predictions ------------------------------------------------------------

struct Predictions {
  CorpusDocument gold;
  std::vector<TokenSequence> outputs;
  SerializerConfig config;
};

Predictions load_predictions(const RunConfig& rc) {
  if (rc.inputs.size() != 2) throw Exit{kExitUsage, "expected a gold corpus and a predictions file"};
  Predictions p{load_corpus(rc, rc.inputs[0]), {}, {}};
  p.config = with_shared_registry(serializer_config(rc), p.gold.schema);
  auto lines = read_lines(rc.inputs[1]);
  if (lines.size() != p.gold.sentences.size())
    throw Exit{kExitUsage, std::to_string(lines.size()) + " predictions for " + std::to_string(p.gold.sentences.size()) +
                               " sentences"};
  for (const auto& line : lines) p.outputs.push_back(parse_sequence(line, *p.config.registry));
  return p;
}

std::vector<LegalityInput> legality_inputs(const Predictions& p) {
  std::vector<LegalityInput> in;
  for (std::size_t i = 0; i < p.outputs.size(); ++i) in.push_back({p.gold.sentences[i].sentence, p.outputs[i]});
  return in;
}

int cmd_validate(const RunConfig& rc) {
  const auto p = load_predictions(rc);
  const auto inputs = legality_inputs(p);
  const auto report = legality_rates_parallel(inputs, p.gold.schema, p.config, rc.jobs);
  emit(rc, render_report(report));
  std::cerr << "formation " << format_percent(report.formation_legal, report.total) << "%, structure "
            << format_percent(report.structural_legal, report.total) << "%\n";
  return report.structural_legal == report.total ? kExitOk : kExitInvalid;
}

DependencyGraph empty_prediction(std::size_t n) {
  std::vector<Arc> arcs;
  for (std::size_t d = 1; d <= n; ++d) arcs.push_back(Arc::isolated(static_cast<Position>(d)));
  return DependencyGraph(n, std::move(arcs));
}

// Arcs of a formation-legal output, minus repeated pairs and isolated arcs
// that clash with real heads.
DependencyGraph lenient_graph(std::size_t n, std::vector<Arc> arcs) {
  std::vector<Arc> kept;
  std::vector<char> headed(n + 1, 0);
  for (const auto& a : arcs)
    if (!a.is_isolated()) headed[static_cast<std::size_t>(a.dependent)] = 1;
  for (auto& a : arcs) {
    if (a.is_isolated() && headed[static_cast<std::size_t>(a.dependent)]) continue;
    const bool dup = std::any_of(kept.begin(), kept.end(),
                                 [&](const Arc& k) { return k.dependent == a.dependent && k.head == a.head; });
    if (!dup) kept.push_back(std::move(a));
  }
  return DependencyGraph(n, std::move(kept));
}

DependencyGraph predicted_graph(const Sentence& sentence, const TokenSequence& out, const Schema& schema,
                                const SerializerConfig& cfg, bool lenient) {
  const auto legality = check_legality(sentence, out, schema, cfg);
  if (legality.structure_ok()) return deserialize(sentence, out, schema, cfg);
  if (lenient && legality.formation_ok())
    return lenient_graph(sentence.size(), std::get<std::vector<Arc>>(decode_arcs(sentence, out, schema, cfg)));
  return empty_prediction(sentence.size());
}

// Predictions are a corpus when their extension names a corpus format,
// otherwise one rendered sequence per line.
bool is_sequence_file(const std::string& path) { return !format_from_extension(path); }

int cmd_score(const RunConfig& rc) {
  if (rc.inputs.size() != 2) throw Exit{kExitUsage, "score takes a gold corpus and predictions"};
  std::vector<DependencyGraph> gold, pred;
  MetricKind kind;
  if (is_sequence_file(rc.inputs[1])) {
    const auto p = load_predictions(rc);
    kind = p.gold.schema.is_tree() ? MetricKind::kAttachment : MetricKind::kF1;
    for (const auto& s : p.gold.sentences) gold.push_back(s.graph);
    pred = parallel_map(p.outputs.size(), rc.jobs, [&](std::size_t i) {
      return predicted_graph(p.gold.sentences[i].sentence, p.outputs[i], p.gold.schema, p.config, rc.lenient);
    });
  } else {
    const auto g = load_corpus(rc, rc.inputs[0]);
    const auto q = load_corpus(rc, rc.inputs[1]);
    if (g.schema.is_tree() != q.schema.is_tree() || g.schema.allows_isolated() != q.schema.allows_isolated() ||
        g.schema.allows_multi_head() != q.schema.allows_multi_head())
      throw Exit{kExitUsage, "gold and predicted corpora have different schema kinds; pass --schema"};
    if (g.sentences.size() != q.sentences.size())
      throw Exit{kExitUsage, "gold has " + std::to_string(g.sentences.size()) + " sentences, predictions " +
                                 std::to_string(q.sentences.size())};
    kind = g.schema.is_tree() ? MetricKind::kAttachment : MetricKind::kF1;
    for (std::size_t i = 0; i < g.sentences.size(); ++i) {
      if (!(g.sentences[i].sentence == q.sentences[i].sentence))
        throw Exit{kExitUsage, "sentence " + std::to_string(i + 1) + " differs between gold and predictions"};
      gold.push_back(g.sentences[i].graph);
      pred.push_back(q.sentences[i].graph);
    }
  }
  const auto score = score_corpus(gold, pred, kind, rc.jobs);
  emit(rc, render_percentages(score.total) + render_counts(score.total) + '\n');
  return kExitOk;
}

// ---- deserialize -------------------------------------------------------------

int cmd_deserialize(const RunConfig& rc) {
  const auto p = load_predictions(rc);
  const auto graphs = parallel_map(p.outputs.size(), rc.jobs, [&](std::size_t i) {
    return deserialize(p.gold.sentences[i].sentence, p.outputs[i], p.gold.schema, p.config);
  });
  CorpusDocument out{{}, p.gold.source_format, p.gold.schema, {}};
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto v = validate_graph(graphs[i], p.gold.schema);
    if (!v.ok()) throw Exit{kExitInvalid, "prediction " + std::to_string(i + 1) + ": " + v.summary()};
    out.sentences.push_back({p.gold.sentences[i].sentence, graphs[i], p.gold.sentences[i].extra});
  }
  emit(rc, write_corpus(out, out.source_format, p.config));
  return kExitOk;
}

// ---- stats -------------------------------------------------------------------

int cmd_stats(const RunConfig& rc) {
  if (rc.inputs.size() != 1) throw Exit{kExitUsage, "stats takes one corpus"};
  emit(rc, render_stats(corpus_stats(load_corpus(rc, rc.inputs[0]))));
  return kExitOk;
}

// ---- roundtrip -----------------------------------------------------------------

struct Trip {
  bool applicable = false;
  bool ok = true;
  bool order_preserved = false;
  std::string rendered;
  std::string decoded;
};

std::string arcs_text(const DependencyGraph& g) {
  std::string out;
  for (const auto& a : g.arcs()) {
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(a.dependent) + "," + (a.is_isolated() ? "NO" : a.relation) + "," +
           (a.head ? std::to_string(*a.head) : "no") + ")";
  }
  return out;
}

// Runs encode -> decode -> compare for one serializer on one sentence.
Trip trip(const std::string& name, const CorpusSentence& s, const Schema& schema, const SerializerConfig& cfg) {
  Trip t;
  const auto n = s.sentence.size();
  try {
    if (name == "unit") {
      t.applicable = true;
      const auto seq = serialize(s.sentence, s.graph, schema, cfg);
      t.rendered = render(seq);
      t.order_preserved = preserves_word_order(unit_emission_positions(s.graph), n);
      const auto back = deserialize(s.sentence, seq, schema, cfg);
      t.ok = back == s.graph;
      t.decoded = arcs_text(back);
      return t;
    }
    if (tree_shape_violation(s.graph)) return t;
    t.applicable = true;
    if (name == "prufer") {
      const auto seq = prufer_encode(s.sentence, s.graph);
      t.rendered = render(seq);
      t.order_preserved = preserves_word_order(prufer_emission_positions(seq), n);
      const auto back = prufer_decode(s.sentence, seq, schema.root_label());
      t.ok = back == s.graph;
      t.decoded = arcs_text(back);
    } else {
      const auto bt = bracket_encode(s.sentence, s.graph);
      t.rendered = render(bt);
      t.order_preserved = preserves_word_order(bracket_emission_positions(bt), n);
      const auto back = bracket_decode(s.sentence, bt);
      t.ok = back == s.graph;
      t.decoded = arcs_text(back);
    }
  } catch (const Error& e) {
    t.ok = false;
    t.decoded = e.what();
  }
  return t;
}

int cmd_roundtrip(const RunConfig& rc, bool serializer_given) {
  if (rc.inputs.size() != 1) throw Exit{kExitUsage, "roundtrip takes one corpus"};
  const auto doc = load_corpus(rc, rc.inputs[0]);
  const auto cfg = with_shared_registry(serializer_config(rc), doc.schema);
  const std::vector<std::string> names =
      serializer_given ? std::vector<std::string>{rc.serializer} : std::vector<std::string>{"unit", "prufer", "bracket"};

  std::ostringstream out;
  out << "serializer\tcases\tmismatches\torder_preserved\torder_fraction\n";
  std::optional<std::pair<std::size_t, Trip>> worst;
  std::string worst_name;
  bool failed = false;
  for (const auto& name : names) {
    const auto trips = parallel_map(doc.sentences.size(), rc.jobs,
                                    [&](std::size_t i) { return trip(name, doc.sentences[i], doc.schema, cfg); });
    std::size_t cases = 0, mismatches = 0, preserved = 0;
    for (std::size_t i = 0; i < trips.size(); ++i) {
      const auto& t = trips[i];
      if (!t.applicable) continue;
      ++cases;
      if (t.order_preserved) ++preserved;
      if (t.ok) continue;
      ++mismatches;
      failed = true;
      // Keep the shortest failing sentence; ties go to the earliest.
      if (!worst || doc.sentences[i].sentence.size() < doc.sentences[worst->first].sentence.size()) {
        worst.emplace(i, t);
        worst_name = name;
      }
    }
    out << name << '\t' << cases << '\t' << mismatches << '\t' << preserved << '\t' << format_rate(preserved, cases)
        << '\n';
  }
  emit(rc, out.str());
  if (!failed) return kExitOk;
  const auto& [i, t] = *worst;
  const auto& s = doc.sentences[i];
  std::cerr << "minimal failing case (" << worst_name << ", sentence " << i + 1 << "):\n"
            << "  words:   " << render(positional_prompt(s.sentence)) << '\n'
            << "  gold:    " << arcs_text(s.graph) << '\n'
            << "  encoded: " << t.rendered << '\n'
            << "  decoded: " << t.decoded << '\n';
  return kExitInvalid;
}

void add_common(CLI::App* cmd, RunConfig& rc, bool serializer_options) {
  cmd->add_option("--schema", rc.schema, "Schema selector KIND[:NAME], KIND in tree, sdp15, semeval16");
  cmd->add_option("--format", rc.format, "Corpus format (conllx, conllu, sdp2015, semeval16, seqtext)");
  cmd->add_option("--jobs", rc.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--output", rc.output, "Write data here instead of stdout");
  if (!serializer_options) return;
  cmd->add_option("--relation-mode", rc.relation_mode, "Relation rendering")->check(CLI::IsMember({"special", "word-map"}));
  cmd->add_option("--relation-map", rc.relation_map, "File of 'label word' lines for word-map mode");
  cmd->add_flag("--no-positional-prompt", rc.no_positional_prompt, "Emit raw words as model input");
  cmd->add_option("--prefix", rc.prefix, "Schema name whose prefix token starts every input");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependency graphs as token sequences: serialize, validate, score"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* ser = app.add_subcommand("serialize", "Write SEQTEXT input/target pairs for a corpus");
  add_common(ser, rc, true);
  ser->add_option("--serializer", rc.serializer)->check(CLI::IsMember({"unit", "prufer", "bracket"}));
  ser->add_option("corpus", rc.inputs)->required();

  auto* des = app.add_subcommand("deserialize", "Decode predicted sequences into a corpus");
  add_common(des, rc, true);
  des->add_option("gold_and_predictions", rc.inputs, "Gold corpus, then predictions")->required()->expected(2);

  auto* val = app.add_subcommand("validate", "Formation and structural legality of predictions");
  add_common(val, rc, true);
  val->add_option("gold_and_predictions", rc.inputs, "Gold corpus, then predictions")->required()->expected(2);

  auto* sco = app.add_subcommand("score", "Attachment scores (trees) or F1 (graphs)");
  add_common(sco, rc, true);
  sco->add_flag("--lenient", rc.lenient, "Score decodable arcs of structurally illegal predictions");
  sco->add_option("gold_and_predictions", rc.inputs, "Gold corpus, then predictions")->required()->expected(2);

  auto* sta = app.add_subcommand("stats", "Corpus statistics");
  add_common(sta, rc, false);
  sta->add_option("corpus", rc.inputs)->required();

  auto* rt = app.add_subcommand("roundtrip", "Encode/decode every sentence with each serializer");
  add_common(rt, rc, true);
  auto* rt_ser = rt->add_option("--serializer", rc.serializer)->check(CLI::IsMember({"unit", "prufer", "bracket"}));
  rt->add_option("corpus", rc.inputs)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_exit = app.exit(e);
    return rc_exit == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ser->parsed()) return cmd_serialize(rc);
    if (des->parsed()) return cmd_deserialize(rc);
    if (val->parsed()) return cmd_validate(rc);
    if (sco->parsed()) return cmd_score(rc);
    if (sta->parsed()) return cmd_stats(rc);
    if (rt->parsed()) return cmd_roundtrip(rc, rt_ser->count() > 0);
  } catch (const Exit& e) {
    std::cerr << "depseq: " << e.message << '\n';
    return e.code;
  } catch (const depseq::Error& e) {
    std::cerr << "depseq: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
