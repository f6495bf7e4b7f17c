#include "depseq/error.hpp"
#include "depseq/serializer.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "support/testkit.hpp"

using namespace depseq;
using fixtures::code_of;

namespace {

TokenSequence parse(std::string_view text, const Schema& schema, const SerializerConfig& config = {}) {
  return parse_sequence(text, TokenRegistry(std::span<const Schema>(&schema, 1), config));
}

}  // namespace

TEST_SUITE("serializer") {
  TEST_CASE("five word example") {
    const auto out = serialize(fixtures::haag(), fixtures::haag_tree(), fixtures::stanford(), {});
    CHECK(render(out) ==
          "Ms. [nn] 2 [SPT] Haag [nsubj] 3 [SPT] plays [root] 3 [SPT] Elianti [dobj] 3 [SPT] . [punct] 3");
    CHECK(deserialize(fixtures::haag(), out, fixtures::stanford(), {}) == fixtures::haag_tree());
  }

  TEST_CASE("single word") {
    const auto schema = Schema::tree("t", {"root"});
    const Sentence s({"Go"});
    const DependencyGraph g(1, {{1, 1, "root"}});
    CHECK(render(serialize(s, g, schema, {})) == "Go [root] 1");
  }

  TEST_CASE("isolated word renders as [NO] no in position order") {
    const auto schema = Schema::graph("psd", {"ACT", "PAT", "root"}, "root", false, true);
    const Sentence s({"he", "sees", "it", "."});
    const DependencyGraph g(4, {{1, 2, "ACT"}, {2, 2, "root"}, {3, 2, "PAT"}, Arc::isolated(4)});
    const auto out = serialize(s, g, schema, {});
    CHECK(render(out) == "he [ACT] 2 [SPT] sees [root] 2 [SPT] it [PAT] 2 [SPT] . [NO] no");
    CHECK(deserialize(s, out, schema, {}) == g);
  }

  TEST_CASE("multiple heads emit consecutive units by head position") {
    const auto schema = Schema::graph("dm", {"ARG1", "ARG2", "root"}, "root", true, false);
    const Sentence s({"x", "y", "z", "w"});
    const DependencyGraph g(4, {{1, 4, "ARG2"}, {1, 3, "ARG1"}, {2, 2, "root"}, {3, 2, "ARG1"}, {4, 2, "ARG1"}});
    const auto out = serialize(s, g, schema, {});
    CHECK(render(out) == "x [ARG1] 3 [SPT] x [ARG2] 4 [SPT] y [root] 2 [SPT] z [ARG1] 2 [SPT] w [ARG1] 2");
    CHECK(deserialize(s, out, schema, {}) == g);
  }

  TEST_CASE("repeated words bind by scan order") {
    const auto schema = Schema::tree("t", {"r", "root"});
    const Sentence s({"a", "b", "a"});
    const auto g = deserialize(s, parse("a [r] 2 [SPT] b [root] 2 [SPT] a [r] 2", schema), schema, {});
    CHECK(g == DependencyGraph(3, {{1, 2, "r"}, {2, 2, "root"}, {3, 2, "r"}}));
  }

  TEST_CASE("decode errors") {
    const auto schema = Schema::tree("t", {"r", "root"});
    const Sentence s({"a", "b", "c"});
    CHECK(code_of([&] { deserialize(s, parse("a [r] 9", schema), schema, {}); }) == ErrorCode::kPositionOutOfRange);
    CHECK(code_of([&] { deserialize(s, parse("a [r] [SPT] b [root] 2", schema), schema, {}); }) ==
          ErrorCode::kMalformedUnit);
    CHECK(code_of([&] { deserialize(s, parse("a [zz] 2 [SPT] b [root] 2 [SPT] c [r] 2", schema), schema, {}); }) ==
          ErrorCode::kUnknownRelation);
    CHECK(code_of([&] { deserialize(s, parse("a [r] 2 [SPT] q [root] 2 [SPT] c [r] 2", schema), schema, {}); }) ==
          ErrorCode::kWordMismatch);
  }

  TEST_CASE("serialize rejects invalid graphs and unknown relations") {
    const auto schema = Schema::tree("t", {"r", "root"});
    const Sentence s({"a", "b"});
    CHECK(code_of([&] { serialize(s, DependencyGraph(2, {{1, 2, "q"}, {2, 2, "root"}}), schema, {}); }) ==
          ErrorCode::kUnknownRelation);
    CHECK(code_of([&] { serialize(s, DependencyGraph(2, {{1, 1, "root"}, {2, 2, "root"}}), schema, {}); }) ==
          ErrorCode::kInvalidGraph);
    CHECK(code_of([&] { serialize(s, DependencyGraph(1, {{1, 1, "root"}}), schema, {}); }) ==
          ErrorCode::kInvalidGraph);
  }

  TEST_CASE("positional prompt") {
    CHECK(render(positional_prompt(fixtures::haag())) ==
          "Ms. [PID] 1 [SPT] Haag [PID] 2 [SPT] plays [PID] 3 [SPT] Elianti [PID] 4 [SPT] . [PID] 5");
    CHECK(render(positional_prompt(Sentence({"Go"}))) == "Go [PID] 1");
    SerializerConfig raw;
    raw.positional_prompt = false;
    CHECK(render(encode_input(fixtures::haag(), raw)) == "Ms. Haag plays Elianti .");
    testkit::Rng rng(5);
    for (std::size_t n = 1; n <= 15; ++n)
      CHECK(positional_prompt(testkit::random_sentence(rng, n)).size() == 4 * n - 1);
  }

  TEST_CASE("schema prefix") {
    const auto pp = positional_prompt(fixtures::haag());
    const auto dm = Schema::graph("DM", {"ARG1", "root"}, "root", true, false);
    const auto psd = Schema::graph("PSD", {"ACT", "root"}, "root", false, true);
    const auto a = apply_schema_prefix(pp, dm);
    const auto b = apply_schema_prefix(pp, psd);
    CHECK(render(a).rfind("[parse-dm] [SPT] Ms. [PID] 1", 0) == 0);
    CHECK(apply_schema_prefix(pp, std::string_view{}) == pp);
    REQUIRE(a.size() == b.size());
    CHECK(a.items[0] != b.items[0]);
    CHECK(std::equal(a.items.begin() + 1, a.items.end(), b.items.begin() + 1));
    SerializerConfig cfg;
    cfg.schema_prefix = "dm";
    CHECK(decode_input(render(encode_input(fixtures::haag(), cfg))) == fixtures::haag());
  }

  TEST_CASE("token registry") {
    const auto t = Schema::tree("t", {"rel-a", "rel-b", "root"});
    const TokenRegistry single(std::span<const Schema>(&t, 1), {});
    REQUIRE(single.size() == 6);
    const std::vector<std::string> expected{"[SPT]", "[PID]", "[NO]", "[rel-a]", "[rel-b]", "[root]"};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(single.tokens()[i].surface == expected[i]);

    SerializerConfig words;
    words.relation_mode = RelationMode::kWordMapping;
    words.schema_prefix = "t";
    const TokenRegistry mapped(std::span<const Schema>(&t, 1), words);
    REQUIRE(mapped.size() == 4);
    CHECK(mapped.tokens()[3].surface == "[parse-t]");
  }

  TEST_CASE("multi-schema registry qualifies colliding labels") {
    const std::vector<Schema> both{Schema::tree("ptb", {"nsubj", "conj", "root"}),
                                   Schema::graph("dm", {"ARG1", "conj", "root"}, "root", true, false)};
    const TokenRegistry reg(both, {});
    std::set<std::string> surfaces;
    for (const auto& tok : reg.tokens()) surfaces.insert(tok.surface);
    CHECK(surfaces.size() == reg.size());
    CHECK(reg.relation("ptb", "conj")->surface == "[ptb:conj]");
    CHECK(reg.relation("dm", "conj")->surface == "[dm:conj]");
    CHECK(reg.relation("ptb", "nsubj")->surface == "[nsubj]");
    // A relation whose surface equals a fixed special cannot be resolved.
    const auto bad = Schema::tree("x", {"SPT", "root"});
    CHECK(code_of([&] { TokenRegistry(std::span<const Schema>(&bad, 1), {}); }) == ErrorCode::kDuplicateSurface);
  }

  TEST_CASE("word mapping mode") {
    const auto schema = Schema::tree("t", {"conj", "root"});
    SerializerConfig cfg;
    cfg.relation_mode = RelationMode::kWordMapping;
    CHECK(code_of([&] { validate_config(cfg, schema); }) == ErrorCode::kInvalidConfig);
    cfg.relation_words = {{"conj", "conjunct"}, {"root", "conjunct"}};
    CHECK(code_of([&] { validate_config(cfg, schema); }) == ErrorCode::kInvalidConfig);
    cfg.relation_words = {{"conj", "conjunct"}, {"root", "head"}};
    const Sentence s({"a", "a"});
    const DependencyGraph g(2, {{1, 2, "conj"}, {2, 2, "root"}});
    const auto out = serialize(s, g, schema, cfg);
    CHECK(render(out) == "a conjunct 2 [SPT] a head 2");
    CHECK(deserialize(s, out, schema, cfg) == g);
  }

  TEST_CASE("unit count and order invariants on random trees") {
    testkit::Rng rng(21);
    const auto schema = Schema::tree("t", {"x", "y", "root"});
    for (int i = 0; i < 500; ++i) {
      const auto s = testkit::random_sentence(rng, 1 + i % 15);
      const auto g = testkit::random_tree(rng, s.size(), schema);
      const auto out = serialize(s, g, schema, {});
      const auto splits = std::count_if(out.items.begin(), out.items.end(),
                                        [](const TokenItem& t) { return is_special(t, SpecialKind::kSplit); });
      CHECK(std::size_t(splits) + 1 == g.arcs().size());
      CHECK(deserialize(s, out, schema, {}) == g);
    }
  }
}
