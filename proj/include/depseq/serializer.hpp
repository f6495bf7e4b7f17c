#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "depseq/core.hpp"
#include "depseq/error.hpp"
#include "depseq/tokens.hpp"

namespace depseq {

enum class RelationMode { kSpecialToken, kWordMapping };

class TokenRegistry;

struct SerializerConfig {
  RelationMode relation_mode = RelationMode::kSpecialToken;
  bool positional_prompt = true;
  // Schema name whose prefix token is prepended to inputs; unset disables prefixing.
  std::optional<std::string> schema_prefix;
  // Relation label -> vocabulary word, required in kWordMapping mode.
  std::map<std::string, std::string> relation_words;
  // Shared registry for multi-schema setups. When null, a single-schema
  // registry is derived on each call.
  std::shared_ptr<const TokenRegistry> registry;
};

// Throws Error(kInvalidConfig) if word mapping is selected without a total,
// injective map over the schema's relations.
void validate_config(const SerializerConfig& config, const Schema& schema);

std::string prefix_surface(std::string_view schema_name);

// Ordered special-token vocabulary: [SPT] [PID] [NO], then relation tokens
// in schema order, then schema prefixes.
class TokenRegistry {
 public:
  // Throws Error(kDuplicateSurface) if two tokens share a surface after
  // colliding relation labels across schemata are qualified as [schema:label].
  TokenRegistry(std::span<const Schema> schemata, const SerializerConfig& config);

  const std::vector<SpecialToken>& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }

  const SpecialToken* find(std::string_view surface) const;
  const SpecialToken* relation(std::string_view schema, std::string_view label) const;
  const SpecialToken* prefix(std::string_view schema) const;

 private:
  std::vector<SpecialToken> tokens_;
  std::unordered_map<std::string, std::size_t> by_surface_;
  std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> relations_;
  std::unordered_map<std::string, std::size_t> prefixes_;
};

TokenRegistry build_token_registry(std::span<const Schema> schemata, const SerializerConfig& config);

// Copy of `config` carrying a single-schema registry built once, for reuse
// across many calls (and threads). Keeps an existing registry.
SerializerConfig with_shared_registry(SerializerConfig config, const Schema& schema);

// Tokenizes canonical text. Registry surfaces become special tokens, digit
// strings without leading zeros become numbers, "no" becomes the no-marker,
// everything else is a word.
TokenSequence parse_sequence(std::string_view text, const TokenRegistry& registry);

TokenSequence serialize(const Sentence& sentence, const DependencyGraph& graph, const Schema& schema,
                        const SerializerConfig& config);

DependencyGraph deserialize(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                            const SerializerConfig& config);

TokenSequence positional_prompt(const Sentence& sentence);

TokenSequence apply_schema_prefix(const TokenSequence& seq, std::string_view schema_name);
TokenSequence apply_schema_prefix(const TokenSequence& seq, const Schema& schema);

// Model input: positional prompt (or raw words when disabled), then the
// configured schema prefix.
TokenSequence encode_input(const Sentence& sentence, const SerializerConfig& config);

// Recovers the sentence from an encode_input rendering.
Sentence decode_input(std::string_view text);

struct DecodeIssue {
  ErrorCode code;
  std::string reason;
};

using ArcsOrIssue = std::variant<std::vector<Arc>, DecodeIssue>;

// Unit grammar check plus dependent alignment. Returns raw arcs without
// enforcing graph invariants, so duplicate and conflicting units survive for
// structural checking.
//
// Alignment scans sentence and units together: each unit either stays on the
// current dependent or moves to the next word, and every word must be
// covered. When several alignments fit, canonical ones (heads strictly
// ascending per dependent) are preferred, and among those the first whose
// graph is schema-valid.
ArcsOrIssue decode_arcs(const Sentence& sentence, const TokenSequence& output, const Schema& schema,
                        const SerializerConfig& config);

}  // namespace depseq
