#include "depseq/serializer.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace depseq {

SpecialToken split_token() { return {SpecialKind::kSplit, {}, {}, "[SPT]"}; }
SpecialToken position_id_token() { return {SpecialKind::kPositionId, {}, {}, "[PID]"}; }
SpecialToken no_token() { return {SpecialKind::kNo, {}, {}, "[NO]"}; }

std::string surface(const TokenItem& item) {
  struct Visitor {
    std::string operator()(const WordItem& w) const { return w.text; }
    std::string operator()(const SpecialToken& s) const { return s.surface; }
    std::string operator()(const NumberItem& n) const { return std::to_string(n.value); }
    std::string operator()(const NoMarker&) const { return "no"; }
  };
  return std::visit(Visitor{}, item);
}

std::string render(const TokenSequence& seq) {
  std::string out;
  for (const auto& item : seq.items) {
    if (!out.empty()) out += ' ';
    out += surface(item);
  }
  return out;
}

std::string prefix_surface(std::string_view schema_name) {
  std::string s = "[parse-";
  for (char c : schema_name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  s += ']';
  return s;
}

void validate_config(const SerializerConfig& config, const Schema& schema) {
  if (config.relation_mode != RelationMode::kWordMapping) return;
  std::set<std::string> seen;
  for (const auto& r : schema.relations()) {
    auto it = config.relation_words.find(r);
    if (it == config.relation_words.end())
      throw Error(ErrorCode::kInvalidConfig, "relation '" + r + "' has no mapped word");
    if (it->second.empty() || !seen.insert(it->second).second)
      throw Error(ErrorCode::kInvalidConfig, "relation word map is not injective at '" + it->second + "'");
  }
}

// ---- registry -------------------------------------------------------------

TokenRegistry::TokenRegistry(std::span<const Schema> schemata, const SerializerConfig& config) {
  auto add = [this](SpecialToken tok) {
    if (!by_surface_.emplace(tok.surface, tokens_.size()).second)
      throw Error(ErrorCode::kDuplicateSurface, "surface " + tok.surface + " is registered twice");
    tokens_.push_back(std::move(tok));
    return tokens_.size() - 1;
  };
  add(split_token());
  add(position_id_token());
  add(no_token());

  if (config.relation_mode == RelationMode::kSpecialToken) {
    std::map<std::string, int> owners;
    for (const auto& s : schemata)
      for (const auto& r : s.relations()) ++owners[r];
    const bool multi = schemata.size() > 1;
    for (const auto& s : schemata) {
      for (const auto& r : s.relations()) {
        const bool qualify = multi && owners[r] > 1;
        std::string surf = qualify ? "[" + s.name() + ":" + r + "]" : "[" + r + "]";
        const auto idx = add({SpecialKind::kRelation, r, s.name(), std::move(surf)});
        relations_.emplace(std::make_pair(s.name(), r), idx);
      }
    }
  }

  if (config.schema_prefix) {
    std::vector<std::string> names;
    for (const auto& s : schemata) names.push_back(s.name());
    if (std::find(names.begin(), names.end(), *config.schema_prefix) == names.end())
      names.push_back(*config.schema_prefix);
    for (const auto& name : names) {
      const auto idx = add({SpecialKind::kSchemaPrefix, name, name, prefix_surface(name)});
      prefixes_.emplace(name, idx);
    }
  }
}

const SpecialToken* TokenRegistry::find(std::string_view surface) const {
  auto it = by_surface_.find(std::string(surface));
  return it == by_surface_.end() ? nullptr : &tokens_[it->second];
}

const SpecialToken* TokenRegistry::relation(std::string_view schema, std::string_view label) const {
  auto it = relations_.find(std::make_pair(std::string(schema), std::string(label)));
  return it == relations_.end() ? nullptr : &tokens_[it->second];
}

const SpecialToken* TokenRegistry::prefix(std::string_view schema) const {
  auto it = prefixes_.find(std::string(schema));
  return it == prefixes_.end() ? nullptr : &tokens_[it->second];
}

TokenRegistry build_token_registry(std::span<const Schema> schemata, const SerializerConfig& config) {
  return TokenRegistry(schemata, config);
}

SerializerConfig with_shared_registry(SerializerConfig config, const Schema& schema) {
  if (!config.registry) config.registry = std::make_shared<const TokenRegistry>(std::span<const Schema>(&schema, 1), config);
  return config;
}

namespace {

// Registry view for one call: the shared one from the config, or a local one.
class RegistryRef {
 public:
  RegistryRef(const Schema& schema, const SerializerConfig& config) {
    if (config.registry) {
      ptr_ = config.registry.get();
    } else {
      local_.emplace(std::span<const Schema>(&schema, 1), config);
      ptr_ = &*local_;
    }
  }
  const TokenRegistry& operator*() const { return *ptr_; }
  const TokenRegistry* operator->() const { return ptr_; }

 private:
  std::optional<TokenRegistry> local_;
  const TokenRegistry* ptr_ = nullptr;
};

std::optional<int> parse_number(std::string_view tok) {
  if (tok.empty() || tok.size() > 9 || tok[0] == '0') return std::nullopt;
  int value = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

bool looks_bracketed(std::string_view s) { return s.size() >= 2 && s.front() == '[' && s.back() == ']'; }

}  // namespace

TokenSequence parse_sequence(std::string_view text, const TokenRegistry& registry) {
  TokenSequence seq;
  for (auto tok : split_ws(text)) {
    if (const auto* special = registry.find(tok)) {
      seq.items.emplace_back(*special);
    } else if (auto num = parse_number(tok)) {
      seq.items.emplace_back(NumberItem{*num});
    } else if (tok == "no") {
      seq.items.emplace_back(NoMarker{});
    } else {
      seq.items.emplace_back(WordItem{std::string(tok)});
    }
  }
  return seq;
}

// ---- serializer -----------------------------------------------------------

TokenSequence serialize(const Sentence& sentence, const DependencyGraph& graph, const Schema& schema,
                        const SerializerConfig& config) {
  if (graph.sentence_length() != sentence.size())
    throw Error(ErrorCode::kInvalidGraph, "graph length " + std::to_string(graph.sentence_length()) +
                                              " != sentence length " + std::to_string(sentence.size()));
  for (const auto& a : graph.arcs())
    if (!a.is_isolated() && !schema.has_relation(a.relation))
      throw Error(ErrorCode::kUnknownRelation, "'" + a.relation + "' is not in schema " + schema.name());
  if (auto v = validate_graph(graph, schema); !v.ok()) throw Error(ErrorCode::kInvalidGraph, v.summary());
  validate_config(config, schema);

  const RegistryRef registry(schema, config);
  TokenSequence out;
  out.items.reserve(graph.arcs().size() * 4);
  for (const auto& a : graph.arcs()) {
    if (!out.empty()) out.items.emplace_back(split_token());
    out.items.emplace_back(WordItem{sentence.word(a.dependent)});
    if (a.is_isolated()) {
      out.items.emplace_back(no_token());
      out.items.emplace_back(NoMarker{});
      continue;
    }
    if (config.relation_mode == RelationMode::kWordMapping) {
      out.items.emplace_back(WordItem{config.relation_words.at(a.relation)});
    } else {
      const auto* tok = registry->relation(schema.name(), a.relation);
      if (!tok)
        throw Error(ErrorCode::kInvalidConfig,
                    "registry has no token for " + schema.name() + ":" + a.relation);
      out.items.emplace_back(*tok);
    }
    out.items.emplace_back(NumberItem{*a.head});
  }
  return out;
}

namespace {

struct Unit {
  std::string word;
  std::optional<Position> head;  // nullopt: isolated
  std::string relation;
};

// Alignment search over units x positions. State (k, p): unit k belongs to
// word p. From (k, p) unit k+1 may stay on p or advance to p+1.
class Aligner {
 public:
  Aligner(const Sentence& sentence, const std::vector<Unit>& units) : sentence_(sentence), units_(units) {
    n_ = static_cast<Position>(sentence.size());
    m_ = units.size();
  }

  bool matches(std::size_t k, Position p) const {
    return p >= 1 && p <= n_ && units_[k].word == sentence_.word(p);
  }

  // A stay step keeps the canonical serializer order: heads strictly
  // ascending, isolated units alone.
  bool canonical_stay(std::size_t k) const {
    const auto& a = units_[k];
    const auto& b = units_[k + 1];
    return a.head && b.head && *b.head > *a.head;
  }

  // can_finish[k][p]: units k.. can be aligned starting with unit k at p.
  std::vector<std::vector<char>> feasibility(bool canonical) const {
    std::vector<std::vector<char>> can(m_, std::vector<char>(static_cast<std::size_t>(n_) + 2, 0));
    for (Position p = 1; p <= n_; ++p) can[m_ - 1][static_cast<std::size_t>(p)] = (p == n_) && matches(m_ - 1, p);
    for (std::size_t k = m_ - 1; k-- > 0;) {
      for (Position p = 1; p <= n_; ++p) {
        if (!matches(k, p)) continue;
        const auto up = static_cast<std::size_t>(p);
        const bool stay = can[k + 1][up] && (!canonical || canonical_stay(k));
        const bool advance = p < n_ && can[k + 1][up + 1];
        can[k][up] = stay || advance;
      }
    }
    return can;
  }

  // Enumerates up to `limit` complete alignments, advance-first.
  std::vector<std::vector<Position>> paths(const std::vector<std::vector<char>>& can, bool canonical,
                                           std::size_t limit) const {
    std::vector<std::vector<Position>> out;
    if (!can[0][1]) return out;
    std::vector<Position> path{1};
    walk(can, canonical, limit, path, out);
    return out;
  }

  // Explains an infeasible alignment.
  std::string diagnose() const {
    std::vector<char> reach(static_cast<std::size_t>(n_) + 2, 0);
    if (!matches(0, 1)) return explain(0, 0);
    reach[1] = 1;
    for (std::size_t k = 0; k + 1 < m_; ++k) {
      std::vector<char> next(reach.size(), 0);
      Position furthest = 0;
      for (Position p = 1; p <= n_; ++p) {
        if (!reach[static_cast<std::size_t>(p)]) continue;
        furthest = p;
        if (matches(k + 1, p)) next[static_cast<std::size_t>(p)] = 1;
        if (matches(k + 1, p + 1)) next[static_cast<std::size_t>(p + 1)] = 1;
      }
      if (std::none_of(next.begin(), next.end(), [](char c) { return c; })) return explain(k + 1, furthest);
      reach.swap(next);
    }
    Position furthest = 0;
    for (Position p = 1; p <= n_; ++p)
      if (reach[static_cast<std::size_t>(p)]) furthest = p;
    return "uncovered word at position " + std::to_string(furthest + 1);
  }

 private:
  std::string explain(std::size_t unit, Position covered) const {
    for (Position p = covered + 1; p <= n_; ++p)
      if (units_[unit].word == sentence_.word(p)) return "uncovered word at position " + std::to_string(covered + 1);
    return "word mismatch at unit " + std::to_string(unit + 1) + ": '" + units_[unit].word + "'";
  }

  void walk(const std::vector<std::vector<char>>& can, bool canonical, std::size_t limit,
            std::vector<Position>& path, std::vector<std::vector<Position>>& out) const {
    if (out.size() >= limit) return;
    const std::size_t k = path.size() - 1;
    const Position p = path.back();
    if (k + 1 == m_) {
      out.push_back(path);
      return;
    }
    if (p < n_ && can[k + 1][static_cast<std::size_t>(p + 1)]) {
      path.push_back(p + 1);
      walk(can, canonical, limit, path, out);
      path.pop_back();
    }
    if (can[k + 1][static_cast<std::size_t>(p)] && (!canonical || canonical_stay(k))) {
      path.push_back(p);
      walk(can, canonical, limit, path, out);
      path.pop_back();
    }
  }

  const Sentence& sentence_;
  const std::vector<Unit>& units_;
  Position n_ = 0;
  std::size_t m_ = 0;
};

constexpr std::size_t kCandidateLimit = 64;

std::vector<Arc> arcs_for(const std::vector<Unit>& units, const std::vector<Position>& path) {
  std::vector<Arc> arcs;
  arcs.reserve(units.size());
  for (std::size_t k = 0; k < units.size(); ++k) {
    if (units[k].head)
      arcs.push_back(Arc{path[k], units[k].head, units[k].relation});
    else
      arcs.push_back(Arc::isolated(path[k]));
  }
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace

ArcsOrIssue decode_arcs(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                        const SerializerConfig& config) {
  const auto n = static_cast<Position>(sentence.size());
  const RegistryRef registry(schema, config);
  std::map<std::string, std::string> word_to_relation;
  if (config.relation_mode == RelationMode::kWordMapping)
    for (const auto& [label, word] : config.relation_words) word_to_relation.emplace(word, label);

  // Split into units.
  std::vector<std::vector<const TokenItem*>> raw(1);
  for (const auto& item : output.items) {
    if (is_special(item, SpecialKind::kSplit))
      raw.emplace_back();
    else
      raw.back().push_back(&item);
  }
  if (output.empty()) return DecodeIssue{ErrorCode::kMalformedUnit, "empty output"};

  std::vector<Unit> units;
  units.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& u = raw[k];
    const std::string where = "unit " + std::to_string(k + 1);
    if (u.size() != 3)
      return DecodeIssue{ErrorCode::kMalformedUnit, where + " has " + std::to_string(u.size()) + " items, expected 3"};
    if (std::holds_alternative<SpecialToken>(*u[0]))
      return DecodeIssue{ErrorCode::kMalformedUnit, where + " starts with special token " + surface(*u[0])};

    Unit unit;
    unit.word = surface(*u[0]);
    bool isolated = false;
    const auto rel_surface = surface(*u[1]);
    if (is_special(*u[1], SpecialKind::kNo)) {
      isolated = true;
    } else if (config.relation_mode == RelationMode::kSpecialToken) {
      const auto* special = std::get_if<SpecialToken>(u[1]);
      if (special && special->kind == SpecialKind::kRelation) {
        if (special->schema != schema.name() || !schema.has_relation(special->label))
          return DecodeIssue{ErrorCode::kUnknownRelation, where + ": " + rel_surface + " is not a " + schema.name() + " relation"};
        unit.relation = special->label;
      } else if (!special && looks_bracketed(rel_surface)) {
        return DecodeIssue{ErrorCode::kUnknownRelation, where + ": unknown relation token " + rel_surface};
      } else {
        return DecodeIssue{ErrorCode::kMalformedUnit, where + ": expected a relation token, got '" + rel_surface + "'"};
      }
    } else {
      if (std::holds_alternative<SpecialToken>(*u[1]))
        return DecodeIssue{ErrorCode::kMalformedUnit, where + ": expected a relation word, got " + rel_surface};
      auto it = word_to_relation.find(rel_surface);
      if (it == word_to_relation.end() || !schema.has_relation(it->second))
        return DecodeIssue{ErrorCode::kUnknownRelation, where + ": '" + rel_surface + "' maps to no relation"};
      unit.relation = it->second;
    }

    if (std::holds_alternative<NoMarker>(*u[2])) {
      if (!isolated) return DecodeIssue{ErrorCode::kMalformedUnit, where + ": 'no' head without [NO]"};
    } else if (const auto* num = std::get_if<NumberItem>(u[2])) {
      if (isolated) return DecodeIssue{ErrorCode::kMalformedUnit, where + ": [NO] must be followed by 'no'"};
      if (num->value < 1 || num->value > n)
        return DecodeIssue{ErrorCode::kPositionOutOfRange,
                           where + ": position out of range (" + std::to_string(num->value) + ")"};
      unit.head = num->value;
    } else {
      const auto text = surface(*u[2]);
      const bool digits = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (digits && !isolated)
        return DecodeIssue{ErrorCode::kPositionOutOfRange, where + ": position out of range (" + text + ")"};
      return DecodeIssue{ErrorCode::kMalformedUnit, where + ": expected a head position, got '" + text + "'"};
    }
    units.push_back(std::move(unit));
  }

  const Aligner aligner(sentence, units);
  const auto canonical = aligner.feasibility(true);
  if (canonical[0][1]) {
    const auto candidates = aligner.paths(canonical, true, kCandidateLimit);
    if (candidates.size() == 1) return arcs_for(units, candidates.front());
    for (const auto& path : candidates) {
      auto arcs = arcs_for(units, path);
      // Canonical paths always satisfy the graph invariants.
      if (validate_graph(DependencyGraph(sentence.size(), arcs), schema).ok()) return arcs;
    }
    return arcs_for(units, candidates.front());
  }
  const auto any = aligner.feasibility(false);
  if (any[0][1]) return arcs_for(units, aligner.paths(any, false, 1).front());
  return DecodeIssue{ErrorCode::kWordMismatch, aligner.diagnose()};
}

DependencyGraph deserialize(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                            const SerializerConfig& config) {
  auto decoded = decode_arcs(sentence, output, schema, config);
  if (auto* issue = std::get_if<DecodeIssue>(&decoded)) throw Error(issue->code, issue->reason);
  auto& arcs = std::get<std::vector<Arc>>(decoded);
  for (std::size_t i = 1; i < arcs.size(); ++i)
    if (arcs[i].dependent == arcs[i - 1].dependent && arcs[i].head == arcs[i - 1].head)
      throw Error(ErrorCode::kDuplicateArc, "word " + std::to_string(arcs[i].dependent) + " repeats a head");
  return DependencyGraph(sentence.size(), std::move(arcs));
}

// ---- inputs ---------------------------------------------------------------

TokenSequence positional_prompt(const Sentence& sentence) {
  TokenSequence out;
  out.items.reserve(sentence.size() * 4);
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (i > 0) out.items.emplace_back(split_token());
    out.items.emplace_back(WordItem{sentence.words()[i]});
    out.items.emplace_back(position_id_token());
    out.items.emplace_back(NumberItem{static_cast<int>(i + 1)});
  }
  return out;
}

TokenSequence apply_schema_prefix(const TokenSequence& seq, std::string_view schema_name) {
  if (schema_name.empty()) return seq;
  TokenSequence out;
  out.items.reserve(seq.size() + 2);
  const std::string name(schema_name);
  out.items.emplace_back(SpecialToken{SpecialKind::kSchemaPrefix, name, name, prefix_surface(name)});
  out.items.emplace_back(split_token());
  out.items.insert(out.items.end(), seq.items.begin(), seq.items.end());
  return out;
}

TokenSequence apply_schema_prefix(const TokenSequence& seq, const Schema& schema) {
  return apply_schema_prefix(seq, schema.name());
}

TokenSequence encode_input(const Sentence& sentence, const SerializerConfig& config) {
  TokenSequence seq;
  if (config.positional_prompt) {
    seq = positional_prompt(sentence);
  } else {
    for (const auto& w : sentence.words()) seq.items.emplace_back(WordItem{w});
  }
  if (config.schema_prefix) seq = apply_schema_prefix(seq, *config.schema_prefix);
  return seq;
}

Sentence decode_input(std::string_view text) {
  auto toks = split_ws(text);
  std::size_t start = 0;
  if (toks.size() >= 2 && toks[0].starts_with("[parse-") && looks_bracketed(toks[0]) && toks[1] == "[SPT]") start = 2;
  std::vector<std::string> words;
  const bool prompted = toks.size() >= start + 3 && toks[start + 1] == "[PID]";
  if (!prompted) {
    for (std::size_t i = start; i < toks.size(); ++i) words.emplace_back(toks[i]);
    return Sentence(std::move(words));
  }
  std::size_t i = start;
  while (i < toks.size()) {
    if (i + 2 >= toks.size() || toks[i + 1] != "[PID]" ||
        parse_number(toks[i + 2]) != static_cast<int>(words.size() + 1))
      throw Error(ErrorCode::kMalformedUnit, "malformed positional prompt near token " + std::to_string(i + 1));
    words.emplace_back(toks[i]);
    i += 3;
    if (i < toks.size()) {
      if (toks[i] != "[SPT]") throw Error(ErrorCode::kMalformedUnit, "expected [SPT] at token " + std::to_string(i + 1));
      if (++i == toks.size()) throw Error(ErrorCode::kMalformedUnit, "trailing [SPT] in positional prompt");
    }
  }
  return Sentence(std::move(words));
}

}  // namespace depseq
