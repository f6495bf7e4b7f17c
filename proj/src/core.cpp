#include "depseq/core.hpp"

#include <algorithm>
#include <cctype>
#include <queue>

#include "depseq/error.hpp"

namespace depseq {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidGraph: return "INVALID-GRAPH";
    case ErrorCode::kInvalidSchema: return "INVALID-SCHEMA";
    case ErrorCode::kInvalidConfig: return "INVALID-CONFIG";
    case ErrorCode::kUnknownRelation: return "UNKNOWN-RELATION";
    case ErrorCode::kMalformedUnit: return "MALFORMED-UNIT";
    case ErrorCode::kWordMismatch: return "WORD-MISMATCH";
    case ErrorCode::kPositionOutOfRange: return "POSITION-OUT-OF-RANGE";
    case ErrorCode::kDuplicateArc: return "DUPLICATE-ARC";
    case ErrorCode::kDuplicateSurface: return "DUPLICATE-SURFACE";
    case ErrorCode::kNotATree: return "NOT-A-TREE";
    case ErrorCode::kMalformed: return "MALFORMED";
    case ErrorCode::kNonTreeResult: return "NON-TREE-RESULT";
    case ErrorCode::kUnbalanced: return "UNBALANCED";
    case ErrorCode::kPositionConflict: return "POSITION-CONFLICT";
    case ErrorCode::kEmptyBracket: return "EMPTY-BRACKET";
    case ErrorCode::kPrecondition: return "PRECONDITION";
    case ErrorCode::kLengthMismatch: return "LENGTH-MISMATCH";
    case ErrorCode::kMixedKinds: return "MIXED-KINDS";
    case ErrorCode::kBadColumnCount: return "BAD-COLUMN-COUNT";
    case ErrorCode::kNonIntegerHead: return "NON-INTEGER-HEAD";
    case ErrorCode::kHeadOutOfRange: return "HEAD-OUT-OF-RANGE";
    case ErrorCode::kEmptyFile: return "EMPTY-FILE";
    case ErrorCode::kIsolatedNotAllowed: return "ISOLATED-NOT-ALLOWED";
    case ErrorCode::kIncompatibleFormat: return "INCOMPATIBLE-FORMAT";
  }
  return "UNKNOWN";
}

Sentence::Sentence(std::vector<std::string> words) : words_(std::move(words)) {
  if (words_.empty()) throw Error(ErrorCode::kInvalidGraph, "sentence must contain at least one word");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const auto& w = words_[i];
    if (w.empty()) throw Error(ErrorCode::kInvalidGraph, "empty word at position " + std::to_string(i + 1));
    if (std::any_of(w.begin(), w.end(), [](unsigned char c) { return std::isspace(c); }))
      throw Error(ErrorCode::kInvalidGraph, "whitespace inside word at position " + std::to_string(i + 1));
  }
}

DependencyGraph::DependencyGraph(std::size_t sentence_length, std::vector<Arc> arcs)
    : length_(sentence_length), arcs_(std::move(arcs)) {
  if (length_ == 0) throw Error(ErrorCode::kInvalidGraph, "sentence length must be positive");
  const auto n = static_cast<Position>(length_);
  for (const auto& a : arcs_) {
    if (a.dependent < 1 || a.dependent > n)
      throw Error(ErrorCode::kInvalidGraph, "dependent " + std::to_string(a.dependent) + " out of range");
    if (a.head && (*a.head < 1 || *a.head > n))
      throw Error(ErrorCode::kInvalidGraph, "head " + std::to_string(*a.head) + " out of range");
    if (a.is_isolated() != a.relation.empty())
      throw Error(ErrorCode::kInvalidGraph,
                  "word " + std::to_string(a.dependent) + ": isolated arcs carry no relation, others must");
  }
  std::sort(arcs_.begin(), arcs_.end());

  offsets_.assign(length_ + 1, 0);
  for (const auto& a : arcs_) ++offsets_[static_cast<std::size_t>(a.dependent)];
  for (std::size_t i = 1; i <= length_; ++i) offsets_[i] += offsets_[i - 1];

  for (Position d = 1; d <= n; ++d) {
    auto group = arcs_of(d);
    if (group.empty()) throw Error(ErrorCode::kInvalidGraph, "word " + std::to_string(d) + " has no arc");
    if (group.size() > 1) {
      if (group.front().is_isolated())
        throw Error(ErrorCode::kInvalidGraph,
                    "word " + std::to_string(d) + " is isolated but also has heads");
      for (std::size_t i = 1; i < group.size(); ++i)
        if (group[i].head == group[i - 1].head)
          throw Error(ErrorCode::kInvalidGraph, "duplicate arc (" + std::to_string(d) + ", " +
                                                    std::to_string(*group[i].head) + ")");
    }
  }
}

std::span<const Arc> DependencyGraph::arcs_of(Position dependent) const {
  if (dependent < 1 || static_cast<std::size_t>(dependent) > length_) return {};
  const auto begin = offsets_[static_cast<std::size_t>(dependent - 1)];
  const auto end = offsets_[static_cast<std::size_t>(dependent)];
  return std::span<const Arc>(arcs_).subspan(begin, end - begin);
}

Schema::Schema(std::string name, std::vector<std::string> relations, std::string root_label,
               StructureKind kind, bool allows_multi_head, bool allows_isolated)
    : name_(std::move(name)),
      relations_(std::move(relations)),
      root_label_(std::move(root_label)),
      kind_(kind),
      multi_head_(allows_multi_head),
      isolated_(allows_isolated) {
  for (const auto& r : relations_) {
    if (r.empty()) throw Error(ErrorCode::kInvalidSchema, "empty relation label");
    if (!members_.insert(r).second) throw Error(ErrorCode::kInvalidSchema, "duplicate relation '" + r + "'");
  }
  if (!members_.count(root_label_))
    throw Error(ErrorCode::kInvalidSchema, "root label '" + root_label_ + "' is not a schema relation");
  if (kind_ == StructureKind::kTree && (multi_head_ || isolated_))
    throw Error(ErrorCode::kInvalidSchema, "tree schemata allow neither multiple heads nor isolated words");
}

Schema Schema::tree(std::string name, std::vector<std::string> relations, std::string root_label) {
  return Schema(std::move(name), std::move(relations), std::move(root_label), StructureKind::kTree, false,
                false);
}

Schema Schema::graph(std::string name, std::vector<std::string> relations, std::string root_label,
                     bool allows_multi_head, bool allows_isolated) {
  return Schema(std::move(name), std::move(relations), std::move(root_label), StructureKind::kGraph,
                allows_multi_head, allows_isolated);
}

bool Schema::has_relation(std::string_view label) const { return members_.count(std::string(label)) > 0; }

std::string ValidationResult::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

bool cycle_check(const DependencyGraph& graph) {
  const auto n = graph.sentence_length();
  std::vector<std::vector<Position>> children(n + 1);
  std::vector<int> indegree(n + 1, 0);
  for (const auto& a : graph.arcs()) {
    if (a.is_isolated() || a.is_root()) continue;
    children[static_cast<std::size_t>(*a.head)].push_back(a.dependent);
    ++indegree[static_cast<std::size_t>(a.dependent)];
  }
  std::queue<std::size_t> ready;
  for (std::size_t v = 1; v <= n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = ready.front();
    ready.pop();
    ++visited;
    for (auto c : children[v])
      if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push(static_cast<std::size_t>(c));
  }
  return visited == n;
}

namespace {

void check_labels(const DependencyGraph& graph, const Schema& schema, std::vector<std::string>& out) {
  for (const auto& a : graph.arcs()) {
    if (a.is_isolated()) continue;
    if (!schema.has_relation(a.relation))
      out.push_back("unknown relation '" + a.relation + "' on word " + std::to_string(a.dependent));
    else if (a.is_root() && a.relation != schema.root_label())
      out.push_back("self-loop on word " + std::to_string(a.dependent) + " with non-root relation '" +
                    a.relation + "'");
  }
}

}  // namespace

ValidationResult validate_graph(const DependencyGraph& graph, const Schema& schema) {
  ValidationResult result;
  auto& out = result.violations;
  const auto n = static_cast<Position>(graph.sentence_length());

  check_labels(graph, schema, out);

  // The root self-arc counts as a head, so a root with a second head is
  // multi-headed.
  std::size_t roots = 0;
  for (Position d = 1; d <= n; ++d) {
    const auto group = graph.arcs_of(d);
    if (group.front().is_isolated()) {
      if (schema.is_tree())
        out.push_back("isolated word " + std::to_string(d));
      else if (!schema.allows_isolated())
        out.push_back("isolated word " + std::to_string(d) + " not allowed");
      continue;
    }
    if (group.size() > 1 && !schema.allows_multi_head())
      out.push_back("multiple heads for word " + std::to_string(d));
    for (const auto& a : group)
      if (a.is_root()) ++roots;
  }

  if (schema.is_tree()) {
    if (roots == 0) out.push_back("no root");
    if (roots > 1) out.push_back("multiple roots");
  }
  if (!cycle_check(graph)) out.push_back("cycle");
  return result;
}

std::optional<std::string> tree_shape_violation(const DependencyGraph& graph) {
  const auto n = static_cast<Position>(graph.sentence_length());
  std::size_t roots = 0;
  for (Position d = 1; d <= n; ++d) {
    const auto group = graph.arcs_of(d);
    if (group.front().is_isolated()) return "isolated word " + std::to_string(d);
    if (group.size() > 1) return "multiple heads for word " + std::to_string(d);
    if (group.front().is_root()) ++roots;
  }
  if (roots == 0) return "no root";
  if (roots > 1) return "multiple roots";
  if (!cycle_check(graph)) return "cycle";
  return std::nullopt;
}

}  // namespace depseq
