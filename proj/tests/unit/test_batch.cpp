#include <stdexcept>

#include "depseq/batch.hpp"
#include "depseq/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "support/testkit.hpp"

using namespace depseq;

namespace {

CorpusDocument random_document(testkit::Rng& rng, const Schema& schema, std::size_t count) {
  CorpusDocument doc{{}, CorpusFormat::kConllU, schema, {}};
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(testkit::uniform(rng, 1, 15));
    auto s = testkit::random_sentence(rng, n);
    auto g = schema.is_tree() ? testkit::random_tree(rng, n, schema) : testkit::random_dag(rng, n, schema);
    doc.sentences.push_back({std::move(s), std::move(g), {}});
  }
  return doc;
}

}  // namespace

TEST_SUITE("batch") {
  TEST_CASE("parallel_map keeps index order") {
    for (int jobs : {1, 2, 8}) {
      const auto out = parallel_map(1000, jobs, [](std::size_t i) { return i * i; });
      REQUIRE(out.size() == 1000);
      for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
    }
    CHECK(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
  }

  TEST_CASE("parallel_map rethrows the lowest failing index") {
    auto fn = [](std::size_t i) -> int {
      if (i == 700 || i == 300 || i == 901) throw std::runtime_error(std::to_string(i));
      return int(i);
    };
    for (int jobs : {1, 3, 8}) {
      try {
        parallel_map(1000, jobs, fn);
        FAIL("expected a throw");
      } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "300");
      }
    }
  }

  TEST_CASE("serialize_corpus matches the serial reference") {
    testkit::Rng rng(11);
    for (const auto& schema : {Schema::tree("t", {"p", "q", "root"}),
                               Schema::graph("g", {"p", "q", "root"}, "root", true, true)}) {
      const auto doc = random_document(rng, schema, 500);
      const auto serial = serialize_corpus_serial(doc, {});
      CHECK(serialize_corpus(doc, {}, 1) == serial);
      CHECK(serialize_corpus(doc, {}, 8) == serial);
    }
  }

  TEST_CASE("legality_rates_parallel matches legality_rates") {
    testkit::Rng rng(12);
    const auto schema = Schema::tree("t", {"p", "q", "root"});
    const auto doc = random_document(rng, schema, 300);
    std::vector<LegalityInput> inputs;
    for (const auto& s : doc.sentences) {
      auto out = serialize(s.sentence, s.graph, schema, {});
      if (testkit::coin(rng, 0.3)) out.items.pop_back();
      inputs.push_back({s.sentence, out});
    }
    const auto serial = legality_rates(inputs, schema, {});
    const auto parallel = legality_rates_parallel(inputs, schema, {}, 8);
    CHECK(parallel.total == serial.total);
    CHECK(parallel.formation_legal == serial.formation_legal);
    CHECK(parallel.structural_legal == serial.structural_legal);
    CHECK(serial.formation_legal < serial.total);
  }

  TEST_CASE("score_corpus rejects spans of different length") {
    const std::vector<DependencyGraph> gold{fixtures::haag_tree(), fixtures::haag_tree()};
    const std::vector<DependencyGraph> pred{fixtures::haag_tree()};
    CHECK(fixtures::code_of([&] { score_corpus(gold, pred, MetricKind::kAttachment, 2); }) ==
          ErrorCode::kLengthMismatch);
    CHECK(fixtures::code_of([&] { score_corpus_serial(gold, pred, MetricKind::kAttachment); }) ==
          ErrorCode::kLengthMismatch);
  }
}
