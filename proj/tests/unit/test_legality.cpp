#include "depseq/batch.hpp"
#include "depseq/error.hpp"
#include "depseq/legality.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "support/testkit.hpp"

using namespace depseq;

namespace {

TokenSequence parse(std::string_view text, const Schema& schema) {
  return parse_sequence(text, TokenRegistry(std::span<const Schema>(&schema, 1), {}));
}

}  // namespace

TEST_SUITE("legality") {
  TEST_CASE("gold output is legal at both stages") {
    const auto out = serialize(fixtures::haag(), fixtures::haag_tree(), fixtures::stanford(), {});
    CHECK_FALSE(check_formation(fixtures::haag(), out, fixtures::stanford(), {}));
    CHECK_FALSE(check_structure(fixtures::haag(), out, fixtures::stanford(), {}));
  }

  TEST_CASE("dropping a unit leaves a word uncovered") {
    const auto schema = fixtures::stanford();
    const auto out = parse("Ms. [nn] 2 [SPT] Haag [nsubj] 3 [SPT] Elianti [dobj] 3 [SPT] . [punct] 3", schema);
    const auto reason = check_formation(fixtures::haag(), out, schema, {});
    REQUIRE(reason);
    CHECK(*reason == "uncovered word at position 3");
    CHECK_THROWS_AS(check_structure(fixtures::haag(), out, schema, {}), Error);
  }

  TEST_CASE("head beyond the sentence") {
    const auto schema = fixtures::stanford();
    const auto out = parse("Ms. [nn] 8 [SPT] Haag [nsubj] 3 [SPT] plays [root] 3 [SPT] Elianti [dobj] 3 [SPT] . [punct] 3",
                           schema);
    const auto reason = check_formation(fixtures::haag(), out, schema, {});
    REQUIRE(reason);
    CHECK(reason->find("position out of range") != std::string::npos);
  }

  TEST_CASE("structural failures") {
    const auto schema = Schema::tree("t", {"r", "root"});
    const Sentence s({"a", "b", "c"});
    const auto two_roots = check_structure(s, parse("a [root] 1 [SPT] b [root] 2 [SPT] c [r] 2", schema), schema, {});
    REQUIRE(two_roots);
    CHECK(two_roots->find("multiple roots") != std::string::npos);
    const auto cyc = check_structure(s, parse("a [r] 2 [SPT] b [r] 1 [SPT] c [root] 3", schema), schema, {});
    REQUIRE(cyc);
    CHECK(cyc->find("cycle") != std::string::npos);
    const auto g = DependencyGraph(3, {{1, 2, "r"}, {2, 1, "r"}, {3, 3, "root"}});
    CHECK_FALSE(cycle_check(g));
  }

  TEST_CASE("duplicate units are structural under graph schemata") {
    const auto schema = Schema::graph("g", {"A", "root"}, "root", true, false);
    const Sentence s({"a", "b"});
    const auto out = parse("a [A] 2 [SPT] a [A] 2 [SPT] b [root] 2", schema);
    CHECK_FALSE(check_formation(s, out, schema, {}));
    const auto reason = check_structure(s, out, schema, {});
    REQUIRE(reason);
    CHECK(*reason == "duplicate arc (1, 2)");
  }

  TEST_CASE("rates and rendering") {
    const auto schema = Schema::tree("t", {"r", "root"});
    testkit::Rng rng(1);
    std::vector<LegalityInput> inputs;
    for (int i = 0; i < 100; ++i) {
      const auto s = testkit::random_sentence(rng, 2 + i % 8);
      inputs.push_back({s, serialize(s, testkit::random_tree(rng, s.size(), schema), schema, {})});
    }
    auto report = legality_rates(inputs, schema, {});
    CHECK(format_rate(report.formation_legal, report.total) == "1.0000");
    CHECK(format_rate(report.structural_legal, report.total) == "1.0000");
    CHECK(legality_rates_parallel(inputs, schema, {}, 4) == report);

    const auto empty = legality_rates({}, schema, {});
    CHECK(empty.total == 0);
    CHECK(format_rate(empty.formation_legal, empty.total) == "n/a");

    inputs[4].output.items.pop_back();
    report = legality_rates(inputs, schema, {});
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].sentence_id == 5);
    const auto text = render_report(report);
    CHECK(text.find("\"sentence\":5") != std::string::npos);
    CHECK(text.find("\"summary\"") != std::string::npos);
  }
}
