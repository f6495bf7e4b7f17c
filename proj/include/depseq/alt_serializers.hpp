#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depseq/core.hpp"

namespace depseq {

// ---- Prufer sequence ------------------------------------------------------
//
// The tree is augmented with a virtual node n+1 pointing at the real root.
// Since n+1 is the maximum index it is never the minimum leaf, so it and the
// real root are the two nodes left at the end, and every removed node's only
// remaining neighbour is its head.

struct PruferPair {
  Position parent = 0;
  std::string relation;  // label of the removed node's arc

  bool operator==(const PruferPair&) const = default;
};

struct PruferSequence {
  std::vector<PruferPair> pairs;
  Position virtual_root = 0;  // n + 1

  bool operator==(const PruferSequence&) const = default;
};

// Throws Error(kNotATree).
PruferSequence prufer_encode(const Sentence& sentence, const DependencyGraph& tree);

// The child of the virtual node becomes the root, carrying `root_label`.
// Throws Error(kMalformed) on a wrong length or out-of-range parent and
// Error(kNonTreeResult) if the virtual node ends up with more than one child.
DependencyGraph prufer_decode(const Sentence& sentence, const PruferSequence& seq, std::string_view root_label);

// "2 [nn] 3 [nsubj] ..."
std::string render(const PruferSequence& seq);
PruferSequence parse_prufer(std::string_view text, std::size_t sentence_length);

// ---- bracket tree ---------------------------------------------------------

struct BracketItem {
  enum class Kind { kOpen, kClose, kNode };

  Kind kind = Kind::kOpen;
  std::string word;
  Position position = 0;
  std::string relation;

  static BracketItem open() { return {Kind::kOpen, {}, 0, {}}; }
  static BracketItem close() { return {Kind::kClose, {}, 0, {}}; }
  static BracketItem node(std::string word, Position pos, std::string rel) {
    return {Kind::kNode, std::move(word), pos, std::move(rel)};
  }

  bool operator==(const BracketItem&) const = default;
};

struct BracketTree {
  std::vector<BracketItem> items;

  bool operator==(const BracketTree&) const = default;
};

// Pre-order: ( word pos rel child_1 ... child_k ), children by position.
// Throws Error(kNotATree).
BracketTree bracket_encode(const Sentence& sentence, const DependencyGraph& tree);

// Throws Error(kUnbalanced), Error(kPositionConflict), Error(kEmptyBracket),
// Error(kPositionOutOfRange), Error(kWordMismatch) or Error(kMalformed).
DependencyGraph bracket_decode(const Sentence& sentence, const BracketTree& bt);

std::string render(const BracketTree& bt);
BracketTree parse_bracket(std::string_view text);

// Maximum bracket nesting.
std::size_t bracket_depth(const BracketTree& bt);

// ---- order diagnostics ----------------------------------------------------

// True iff `positions`, with consecutive repeats collapsed, is exactly 1..n:
// the linearization walks the sentence left to right.
bool preserves_word_order(std::span<const Position> positions, std::size_t n);

// Word positions in emission order for each linearization.
std::vector<Position> unit_emission_positions(const DependencyGraph& graph);
std::vector<Position> prufer_emission_positions(const PruferSequence& seq);
std::vector<Position> bracket_emission_positions(const BracketTree& bt);

}  // namespace depseq
