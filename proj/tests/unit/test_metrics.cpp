#include "depseq/batch.hpp"
#include "depseq/error.hpp"
#include "depseq/metrics.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "support/testkit.hpp"

using namespace depseq;

namespace {

DependencyGraph with_arc(const DependencyGraph& g, Position d, Position head, const std::string& rel) {
  auto arcs = g.arcs();
  for (auto& a : arcs)
    if (a.dependent == d) a = {d, head, rel};
  return DependencyGraph(g.sentence_length(), arcs);
}

ScoreCounts attachment(std::size_t words, std::size_t correct) {
  ScoreCounts c;
  c.words = words;
  c.correct_head_words = c.correct_head_label_words = correct;
  return c;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("attachment scores") {
    const auto gold = fixtures::haag_tree();
    const auto same = score_sydp(gold, gold);
    CHECK(*same.uas == 1.0);
    CHECK(*same.las == 1.0);
    const auto wrong_head = score_sydp(gold, with_arc(gold, 4, 2, "dobj"));
    CHECK(*wrong_head.uas == doctest::Approx(0.8));
    CHECK(*wrong_head.las == doctest::Approx(0.8));
    const auto wrong_label = score_sydp(gold, with_arc(gold, 4, 3, "nsubj"));
    CHECK(*wrong_label.uas == 1.0);
    CHECK(*wrong_label.las == doctest::Approx(0.8));
    CHECK(render_percentages(wrong_head) == "UAS 80.00\nLAS 80.00\n");
    CHECK_THROWS_AS(score_sydp(gold, DependencyGraph(1, {{1, 1, "root"}})), Error);
  }

  TEST_CASE("punctuation exclusion is opt-in") {
    const auto gold = fixtures::haag_tree();
    const auto pred = with_arc(gold, 5, 4, "punct");
    CHECK(*score_sydp(gold, pred).uas == doctest::Approx(0.8));
    const auto mask = punctuation_mask(fixtures::haag());
    CHECK(mask == std::vector<char>{0, 0, 0, 0, 1});
    CHECK(*score_sydp(gold, pred, mask).uas == 1.0);
  }

  TEST_CASE("F1 scores") {
    const DependencyGraph gold(4, {{1, 2, "A"}, {2, 2, "root"}, {3, 2, "B"}, {4, 3, "A"}});
    CHECK(*score_sedp(gold, gold).uf == 1.0);
    CHECK(*score_sedp(gold, gold).lf == 1.0);
    const DependencyGraph pred(4, {{1, 2, "A"}, {2, 2, "root"}, {3, 2, "B"}, {4, 1, "A"}});
    CHECK(*score_sedp(gold, pred).lf == doctest::Approx(0.75));
    const DependencyGraph none(4, {Arc::isolated(1), Arc::isolated(2), Arc::isolated(3), Arc::isolated(4)});
    CHECK(*score_sedp(gold, none).uf == 0.0);
    CHECK(*score_sedp(gold, none).lf == 0.0);
    CHECK_FALSE(score_sedp(none, none).uf.has_value());
  }

  TEST_CASE("micro average") {
    const std::vector<ScoreReport> two{ScoreReport::from_counts(MetricKind::kAttachment, attachment(5, 4)),
                                       ScoreReport::from_counts(MetricKind::kAttachment, attachment(5, 5))};
    CHECK(*aggregate(two).uas == doctest::Approx(0.9));
    CHECK(*aggregate(std::span(two.data(), 1)).uas == *two[0].uas);
    const std::vector<ScoreReport> skewed{ScoreReport::from_counts(MetricKind::kAttachment, attachment(3, 3)),
                                          ScoreReport::from_counts(MetricKind::kAttachment, attachment(7, 0))};
    CHECK(*aggregate(skewed).uas == doctest::Approx(0.3));
    CHECK(render_percentages(aggregate(skewed)) == "UAS 30.00\nLAS 30.00\n");
    const std::vector<ScoreReport> mixed{two[0], ScoreReport::from_counts(MetricKind::kF1, {})};
    CHECK_THROWS_AS(aggregate(mixed), Error);
  }

  TEST_CASE("random agreement with brute force, bounds and symmetry") {
    testkit::Rng rng(17);
    const auto tree = Schema::tree("t", {"x", "y", "root"});
    const auto graph = Schema::graph("g", {"x", "y", "root"}, "root", true, true);
    std::vector<DependencyGraph> golds, preds;
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = 1 + i % 12;
      const auto g = testkit::random_tree(rng, n, tree);
      const auto p = testkit::random_tree(rng, n, tree);
      const auto a = score_sydp(g, p);
      const auto o = testkit::oracle_attachment(g, p);
      REQUIRE(std::abs(*a.uas - o.uas) <= 1e-12);
      REQUIRE(std::abs(*a.las - o.las) <= 1e-12);
      REQUIRE(*a.las <= *a.uas);
      const auto gg = testkit::random_dag(rng, n, graph);
      const auto pg = testkit::random_dag(rng, n, graph);
      const auto f = score_sedp(gg, pg);
      const auto of = testkit::oracle_f1(gg, pg);
      REQUIRE(f.uf.has_value() == of.uf.has_value());
      if (f.uf) {
        REQUIRE(std::abs(*f.uf - *of.uf) <= 1e-12);
        REQUIRE(std::abs(*f.lf - *of.lf) <= 1e-12);
        REQUIRE(*f.lf <= *f.uf);
        const auto swapped = score_sedp(pg, gg);
        REQUIRE(*swapped.uf == *f.uf);
        REQUIRE(*swapped.lf == *f.lf);
      }
      golds.push_back(g);
      preds.push_back(p);
    }
    const auto parallel = score_corpus(golds, preds, MetricKind::kAttachment, 4);
    const auto serial = score_corpus_serial(golds, preds, MetricKind::kAttachment);
    CHECK(parallel.total.counts == serial.total.counts);
    const std::vector<ScoreReport> copies(3, serial.sentences[7]);
    CHECK(*aggregate(copies).uas == *serial.sentences[7].uas);
  }

  TEST_CASE("counts rendering") {
    const auto r = score_sydp(fixtures::haag_tree(), fixtures::haag_tree());
    const auto text = render_counts(r);
    CHECK(text.find("\"kind\":\"attachment\"") != std::string::npos);
    CHECK(text.find("\"words\":5") != std::string::npos);
  }
}
