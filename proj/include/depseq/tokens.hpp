#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace depseq {

enum class SpecialKind { kRelation, kSplit, kPositionId, kNo, kSchemaPrefix };

// A reserved, out-of-vocabulary token. `label` is the relation label for
// kRelation and the schema name for kSchemaPrefix; `schema` names the owning
// schema of a relation token.
struct SpecialToken {
  SpecialKind kind = SpecialKind::kSplit;
  std::string label;
  std::string schema;
  std::string surface;

  bool operator==(const SpecialToken&) const = default;
};

SpecialToken split_token();        // [SPT]
SpecialToken position_id_token();  // [PID]
SpecialToken no_token();           // [NO]

struct WordItem {
  std::string text;
  bool operator==(const WordItem&) const = default;
};

struct NumberItem {
  int value = 1;
  bool operator==(const NumberItem&) const = default;
};

// The head slot of an isolated unit; renders as the word "no".
struct NoMarker {
  bool operator==(const NoMarker&) const = default;
};

using TokenItem = std::variant<WordItem, SpecialToken, NumberItem, NoMarker>;

std::string surface(const TokenItem& item);

inline bool is_special(const TokenItem& item, SpecialKind kind) {
  const auto* s = std::get_if<SpecialToken>(&item);
  return s && s->kind == kind;
}

struct TokenSequence {
  std::vector<TokenItem> items;

  std::size_t size() const noexcept { return items.size(); }
  bool empty() const noexcept { return items.empty(); }
  bool operator==(const TokenSequence&) const = default;
};

// Canonical text form: item surfaces joined by single spaces.
std::string render(const TokenSequence& seq);

}  // namespace depseq
