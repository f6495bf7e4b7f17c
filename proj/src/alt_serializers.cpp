#include "depseq/alt_serializers.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>

#include "depseq/error.hpp"

namespace depseq {

namespace {

void require_tree(const Sentence& sentence, const DependencyGraph& tree) {
  if (tree.sentence_length() != sentence.size())
    throw Error(ErrorCode::kNotATree, "graph length does not match sentence");
  if (auto why = tree_shape_violation(tree)) throw Error(ErrorCode::kNotATree, *why);
}

using MinHeap = std::priority_queue<Position, std::vector<Position>, std::greater<>>;

std::vector<std::string_view> tokens_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < text.size() && !(text[j] == ' ' || text[j] == '\t' || text[j] == '\n' || text[j] == '\r')) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<Position> to_position(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

// ---- Prufer ---------------------------------------------------------------

PruferSequence prufer_encode(const Sentence& sentence, const DependencyGraph& tree) {
  require_tree(sentence, tree);
  const auto n = static_cast<Position>(sentence.size());
  const Position virtual_root = n + 1;

  std::vector<Position> parent(static_cast<std::size_t>(n) + 2, 0);
  std::vector<std::string> relation(static_cast<std::size_t>(n) + 2);
  std::vector<int> degree(static_cast<std::size_t>(n) + 2, 0);
  for (const auto& a : tree.arcs()) {
    const auto d = static_cast<std::size_t>(a.dependent);
    parent[d] = a.is_root() ? virtual_root : *a.head;
    relation[d] = a.relation;
    ++degree[d];
    ++degree[static_cast<std::size_t>(parent[d])];
  }

  MinHeap leaves;
  for (Position v = 1; v <= virtual_root; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);

  PruferSequence seq;
  seq.virtual_root = virtual_root;
  seq.pairs.reserve(static_cast<std::size_t>(n - 1));
  for (Position step = 0; step < n - 1; ++step) {
    const Position leaf = leaves.top();
    leaves.pop();
    const auto up = parent[static_cast<std::size_t>(leaf)];
    seq.pairs.push_back({up, relation[static_cast<std::size_t>(leaf)]});
    if (--degree[static_cast<std::size_t>(up)] == 1) leaves.push(up);
  }
  return seq;
}

DependencyGraph prufer_decode(const Sentence& sentence, const PruferSequence& seq, std::string_view root_label) {
  const auto n = static_cast<Position>(sentence.size());
  const Position virtual_root = n + 1;
  if (seq.pairs.size() != static_cast<std::size_t>(n - 1))
    throw Error(ErrorCode::kMalformed, "sequence length " + std::to_string(seq.pairs.size()) + ", expected " +
                                           std::to_string(n - 1));
  std::vector<int> degree(static_cast<std::size_t>(n) + 2, 1);
  degree[0] = 0;
  for (const auto& p : seq.pairs) {
    if (p.parent < 1 || p.parent > virtual_root)
      throw Error(ErrorCode::kMalformed, "parent " + std::to_string(p.parent) + " out of range");
    if (p.parent == virtual_root)
      throw Error(ErrorCode::kNonTreeResult, "virtual root would receive a second child");
    if (p.relation.empty()) throw Error(ErrorCode::kMalformed, "empty relation");
    ++degree[static_cast<std::size_t>(p.parent)];
  }

  MinHeap leaves;
  for (Position v = 1; v <= virtual_root; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);

  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(n));
  for (const auto& p : seq.pairs) {
    const Position leaf = leaves.top();
    leaves.pop();
    if (leaf == virtual_root) throw Error(ErrorCode::kNonTreeResult, "virtual root removed early");
    arcs.push_back(Arc{leaf, p.parent, p.relation});
    degree[static_cast<std::size_t>(leaf)] = 0;
    if (--degree[static_cast<std::size_t>(p.parent)] == 1) leaves.push(p.parent);
  }

  Position root = 0;
  while (!leaves.empty()) {
    const Position v = leaves.top();
    leaves.pop();
    if (v != virtual_root) {
      if (root != 0) throw Error(ErrorCode::kNonTreeResult, "more than one root candidate");
      root = v;
    }
  }
  if (root == 0) throw Error(ErrorCode::kNonTreeResult, "no root");
  arcs.push_back(Arc{root, root, std::string(root_label)});
  return DependencyGraph(sentence.size(), std::move(arcs));
}

std::string render(const PruferSequence& seq) {
  std::string out;
  for (const auto& p : seq.pairs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p.parent);
    out += " [";
    out += p.relation;
    out += ']';
  }
  return out;
}

PruferSequence parse_prufer(std::string_view text, std::size_t sentence_length) {
  const auto toks = tokens_of(text);
  if (toks.size() % 2 != 0) throw Error(ErrorCode::kMalformed, "odd number of tokens in Prufer text");
  PruferSequence seq;
  seq.virtual_root = static_cast<Position>(sentence_length) + 1;
  for (std::size_t i = 0; i < toks.size(); i += 2) {
    auto parent = to_position(toks[i]);
    const auto rel = toks[i + 1];
    if (!parent) throw Error(ErrorCode::kMalformed, "expected a parent index, got '" + std::string(toks[i]) + "'");
    if (rel.size() < 3 || rel.front() != '[' || rel.back() != ']')
      throw Error(ErrorCode::kMalformed, "expected [relation], got '" + std::string(rel) + "'");
    seq.pairs.push_back({*parent, std::string(rel.substr(1, rel.size() - 2))});
  }
  return seq;
}

// ---- bracket --------------------------------------------------------------

BracketTree bracket_encode(const Sentence& sentence, const DependencyGraph& tree) {
  require_tree(sentence, tree);
  const auto n = sentence.size();
  std::vector<std::vector<Position>> children(n + 1);
  Position root = 0;
  for (const auto& a : tree.arcs()) {
    if (a.is_root())
      root = a.dependent;
    else
      children[static_cast<std::size_t>(*a.head)].push_back(a.dependent);
  }
  // arcs() is sorted by dependent, so each child list is already ascending.

  BracketTree bt;
  bt.items.reserve(3 * n);
  std::function<void(Position)> emit = [&](Position v) {
    bt.items.push_back(BracketItem::open());
    bt.items.push_back(BracketItem::node(sentence.word(v), v, tree.arcs_of(v).front().relation));
    for (auto c : children[static_cast<std::size_t>(v)]) emit(c);
    bt.items.push_back(BracketItem::close());
  };
  emit(root);
  return bt;
}

DependencyGraph bracket_decode(const Sentence& sentence, const BracketTree& bt) {
  using Kind = BracketItem::Kind;
  const auto n = static_cast<Position>(sentence.size());
  std::vector<Position> stack;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Arc> arcs;
  bool root_done = false;

  for (std::size_t i = 0; i < bt.items.size(); ++i) {
    const auto& item = bt.items[i];
    switch (item.kind) {
      case Kind::kOpen: {
        if (i + 1 >= bt.items.size()) throw Error(ErrorCode::kUnbalanced, "dangling '('");
        const auto& next = bt.items[i + 1];
        if (next.kind == Kind::kClose) throw Error(ErrorCode::kEmptyBracket, "empty bracket at item " + std::to_string(i + 1));
        if (next.kind != Kind::kNode) throw Error(ErrorCode::kMalformed, "'(' must be followed by a node");
        if (stack.empty() && root_done) throw Error(ErrorCode::kMalformed, "more than one top-level bracket");
        const auto pos = next.position;
        if (pos < 1 || pos > n) throw Error(ErrorCode::kPositionOutOfRange, "position " + std::to_string(pos));
        if (seen[static_cast<std::size_t>(pos)]) throw Error(ErrorCode::kPositionConflict, "position " + std::to_string(pos) + " appears twice");
        if (next.word != sentence.word(pos))
          throw Error(ErrorCode::kWordMismatch, "'" + next.word + "' is not word " + std::to_string(pos));
        if (next.relation.empty()) throw Error(ErrorCode::kMalformed, "empty relation");
        seen[static_cast<std::size_t>(pos)] = 1;
        arcs.push_back(Arc{pos, stack.empty() ? pos : stack.back(), next.relation});
        if (stack.empty()) root_done = true;
        stack.push_back(pos);
        ++i;
        break;
      }
      case Kind::kClose:
        if (stack.empty()) throw Error(ErrorCode::kUnbalanced, "unmatched ')' at item " + std::to_string(i + 1));
        stack.pop_back();
        break;
      case Kind::kNode:
        throw Error(ErrorCode::kMalformed, "node outside its bracket at item " + std::to_string(i + 1));
    }
  }
  if (!stack.empty()) throw Error(ErrorCode::kUnbalanced, std::to_string(stack.size()) + " unclosed '('");
  for (Position p = 1; p <= n; ++p)
    if (!seen[static_cast<std::size_t>(p)]) throw Error(ErrorCode::kMalformed, "missing position " + std::to_string(p));
  return DependencyGraph(sentence.size(), std::move(arcs));
}

std::string render(const BracketTree& bt) {
  std::string out;
  for (const auto& item : bt.items) {
    if (!out.empty()) out += ' ';
    switch (item.kind) {
      case BracketItem::Kind::kOpen: out += '('; break;
      case BracketItem::Kind::kClose: out += ')'; break;
      case BracketItem::Kind::kNode:
        out += item.word + ' ' + std::to_string(item.position) + ' ' + item.relation;
        break;
    }
  }
  return out;
}

BracketTree parse_bracket(std::string_view text) {
  const auto toks = tokens_of(text);
  BracketTree bt;
  std::size_t i = 0;
  while (i < toks.size()) {
    if (toks[i] == ")") {
      bt.items.push_back(BracketItem::close());
      ++i;
      continue;
    }
    if (toks[i] != "(") throw Error(ErrorCode::kMalformed, "unexpected token '" + std::string(toks[i]) + "'");
    bt.items.push_back(BracketItem::open());
    ++i;
    // The three tokens after '(' are taken verbatim, so words may be brackets.
    const bool node_fits = i + 2 < toks.size() && to_position(toks[i + 1]).has_value();
    if (!node_fits) {
      if (i < toks.size() && toks[i] == ")") throw Error(ErrorCode::kEmptyBracket, "empty bracket");
      throw Error(ErrorCode::kMalformed, "'(' must be followed by word, position and relation");
    }
    bt.items.push_back(BracketItem::node(std::string(toks[i]), *to_position(toks[i + 1]), std::string(toks[i + 2])));
    i += 3;
  }
  return bt;
}

std::size_t bracket_depth(const BracketTree& bt) {
  std::size_t depth = 0;
  std::size_t best = 0;
  for (const auto& item : bt.items) {
    if (item.kind == BracketItem::Kind::kOpen) best = std::max(best, ++depth);
    if (item.kind == BracketItem::Kind::kClose && depth > 0) --depth;
  }
  return best;
}

// ---- order diagnostics ----------------------------------------------------

bool preserves_word_order(std::span<const Position> positions, std::size_t n) {
  Position last = 0;
  for (auto p : positions) {
    if (p == last) continue;
    if (p != last + 1) return false;
    last = p;
  }
  return static_cast<std::size_t>(last) == n;
}

std::vector<Position> unit_emission_positions(const DependencyGraph& graph) {
  std::vector<Position> out;
  out.reserve(graph.arcs().size());
  for (const auto& a : graph.arcs()) out.push_back(a.dependent);
  return out;
}

std::vector<Position> prufer_emission_positions(const PruferSequence& seq) {
  std::vector<Position> out;
  out.reserve(seq.pairs.size());
  for (const auto& p : seq.pairs) out.push_back(p.parent);
  return out;
}

std::vector<Position> bracket_emission_positions(const BracketTree& bt) {
  std::vector<Position> out;
  for (const auto& item : bt.items)
    if (item.kind == BracketItem::Kind::kNode) out.push_back(item.position);
  return out;
}

}  // namespace depseq
