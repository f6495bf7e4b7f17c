#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace depseq {

// Word positions are 1-based throughout.
using Position = int;

class Sentence {
 public:
  explicit Sentence(std::vector<std::string> words);

  std::size_t size() const noexcept { return words_.size(); }
  const std::string& word(Position pos) const { return words_.at(static_cast<std::size_t>(pos - 1)); }
  const std::vector<std::string>& words() const noexcept { return words_; }

  bool operator==(const Sentence&) const = default;

 private:
  std::vector<std::string> words_;
};

// One dependency pair. A root arc points at its own dependent; an isolated
// word carries a single arc with no head and an empty relation.
struct Arc {
  Position dependent = 0;
  std::optional<Position> head;
  std::string relation;

  static Arc isolated(Position dependent) { return Arc{dependent, std::nullopt, {}}; }

  bool is_isolated() const noexcept { return !head.has_value(); }
  bool is_root() const noexcept { return head && *head == dependent; }

  auto operator<=>(const Arc&) const = default;
  bool operator==(const Arc&) const = default;
};

class DependencyGraph {
 public:
  // Throws Error(kInvalidGraph) when an arc is out of bounds, a (dependent,
  // head) pair repeats, an isolated arc shares its word with other arcs, or a
  // word has no arc at all.
  DependencyGraph(std::size_t sentence_length, std::vector<Arc> arcs);

  std::size_t sentence_length() const noexcept { return length_; }

  // Sorted by dependent, then head.
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  std::span<const Arc> arcs_of(Position dependent) const;

  bool operator==(const DependencyGraph& other) const {
    return length_ == other.length_ && arcs_ == other.arcs_;
  }

 private:
  std::size_t length_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;  // offsets_[d-1]..offsets_[d] index arcs_ of word d
};

enum class StructureKind { kTree, kGraph };

class Schema {
 public:
  Schema(std::string name, std::vector<std::string> relations, std::string root_label,
         StructureKind kind, bool allows_multi_head, bool allows_isolated);

  static Schema tree(std::string name, std::vector<std::string> relations,
                     std::string root_label = "root");
  static Schema graph(std::string name, std::vector<std::string> relations,
                      std::string root_label, bool allows_multi_head, bool allows_isolated);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& relations() const noexcept { return relations_; }
  const std::string& root_label() const noexcept { return root_label_; }
  StructureKind kind() const noexcept { return kind_; }
  bool is_tree() const noexcept { return kind_ == StructureKind::kTree; }
  bool allows_multi_head() const noexcept { return multi_head_; }
  bool allows_isolated() const noexcept { return isolated_; }

  bool has_relation(std::string_view label) const;

  bool operator==(const Schema& o) const {
    return name_ == o.name_ && relations_ == o.relations_ && root_label_ == o.root_label_ &&
           kind_ == o.kind_ && multi_head_ == o.multi_head_ && isolated_ == o.isolated_;
  }

 private:
  std::string name_;
  std::vector<std::string> relations_;
  std::unordered_set<std::string> members_;
  std::string root_label_;
  StructureKind kind_;
  bool multi_head_;
  bool isolated_;
};

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

ValidationResult validate_graph(const DependencyGraph& graph, const Schema& schema);

// True iff the head -> dependent edges, excluding self-arcs and isolated
// arcs, contain no directed cycle.
bool cycle_check(const DependencyGraph& graph);

// Schema-free tree shape check: one root self-arc, one head per word, no
// isolated words, acyclic. Returns the first violation or nullopt.
std::optional<std::string> tree_shape_violation(const DependencyGraph& graph);

}  // namespace depseq
