#include <fstream>
#include <sstream>

#include "depseq/corpus_io.hpp"
#include "depseq/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace depseq;
using fixtures::code_of;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(DEPSEQ_SAMPLE_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("corpus-io") {
  TEST_CASE("minimal CoNLL-X block") {
    const auto doc = read_conll("1\ta\t_\t_\t_\t_\t2\tr\n2\tb\t_\t_\t_\t_\t0\troot\n");
    REQUIRE(doc.sentences.size() == 1);
    CHECK(doc.source_format == CorpusFormat::kConllX);
    CHECK(doc.sentences[0].graph == DependencyGraph(2, {{1, 2, "r"}, {2, 2, "root"}}));
    CHECK(doc.schema.is_tree());
    CHECK(doc.schema.root_label() == "root");
  }

  TEST_CASE("CoNLL errors carry line numbers") {
    std::string msg;
    CHECK(code_of([] { read_conll("1\ta\t_\t_\t_\t_\t0\troot\n2\tb\t_\t_\t_\t_\t7\tr\n"); }, &msg) ==
          ErrorCode::kHeadOutOfRange);
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(code_of([] { read_conll("1\ta\t_\t_\t_\t_\tx\troot\n"); }) == ErrorCode::kNonIntegerHead);
    CHECK(code_of([] { read_conll("1\ta\t_\t_\t0\troot\n"); }) == ErrorCode::kBadColumnCount);
    CHECK(code_of([] { read_conll("\n\n"); }) == ErrorCode::kEmptyFile);
  }

  TEST_CASE("multiword ranges and empty nodes are pass-through") {
    const auto doc = read_conll(slurp("ud_sample.conllu"));
    REQUIRE(doc.sentences.size() == 3);
    CHECK(doc.source_format == CorpusFormat::kConllU);
    CHECK(doc.sentences[0].sentence.words() == std::vector<std::string>{"Do", "n't", "stop", "."});
    CHECK(doc.sentences[0].extra.extra_lines.size() == 3);
    CHECK(doc.sentences[2].sentence.size() == 6);
    CHECK(doc.sentences[2].sentence.word(6) == "tea");
  }

  TEST_CASE("skipped source ids are renumbered with a warning and written back") {
    const std::string text = "1\ta\t_\t_\t_\t_\t3\tr\n3\tb\t_\t_\t_\t_\t0\troot\n\n";
    const auto doc = read_conll(text);
    CHECK(doc.sentences[0].graph == DependencyGraph(2, {{1, 2, "r"}, {2, 2, "root"}}));
    CHECK(doc.warnings.size() == 1);
    CHECK(write_corpus(doc, CorpusFormat::kConllX) == text);
  }

  TEST_CASE("SDP 2015 isolated words, tops and multiple heads") {
    const auto doc = read_sdp(slurp("dm_sample.sdp"), CorpusFormat::kSdp2015);
    REQUIRE(doc.sentences.size() == 3);
    const auto& g = doc.sentences[0].graph;
    CHECK(g.arcs_of(5).front() == Arc::isolated(5));
    CHECK(g.arcs_of(3).front() == Arc{3, 3, "root"});
    CHECK(g.arcs_of(1).front() == Arc{1, 2, "compound"});
    CHECK(doc.sentences[1].graph.arcs_of(1).size() == 2);
    CHECK(doc.schema.allows_isolated());
    CHECK(code_of([] { read_sdp("1\ta\ta\tX\t+\t+\t_\n2\tb\tb\tX\t-\t-\t_\tARG1\tARG2\n", CorpusFormat::kSdp2015); }) ==
          ErrorCode::kBadColumnCount);
  }

  TEST_CASE("SemEval-2016 duplicated ids give multiple heads; isolated words are refused") {
    const auto doc = read_sdp(slurp("semeval_sample.sem16"), CorpusFormat::kSemEval16);
    REQUIRE(doc.sentences.size() == 2);
    CHECK(doc.sentences[0].graph.arcs_of(1).size() == 2);
    CHECK(doc.sentences[0].sentence.size() == 4);
    CHECK(doc.schema.allows_multi_head());
    CHECK_FALSE(doc.schema.allows_isolated());
    const auto reserialized = read_sdp(write_corpus(doc, CorpusFormat::kSemEval16), CorpusFormat::kSemEval16);
    CHECK(same_content(doc, reserialized));
    CHECK(code_of([] {
            read_sdp("1\ta\t_\t_\t_\t_\t0\tRoot\t_\t_\n2\t.\t_\t_\t_\t_\t_\t_\t_\t_\n", CorpusFormat::kSemEval16);
          }) == ErrorCode::kIsolatedNotAllowed);
    ReadOptions strict;
    strict.schema = Schema::graph("sem", {"ARG1", "ARG2", "BV", "_and_c", "compound", "root"}, "root", true, false);
    CHECK(code_of([&] { read_sdp(slurp("dm_sample.sdp"), CorpusFormat::kSdp2015, strict); }) ==
          ErrorCode::kIsolatedNotAllowed);
  }

  TEST_CASE("format compatibility on write") {
    const auto tree = read_conll(slurp("ptb_sample.conllx"));
    CHECK_NOTHROW(write_corpus(tree, CorpusFormat::kConllU));
    const auto graph = read_sdp(slurp("semeval_sample.sem16"), CorpusFormat::kSemEval16);
    CHECK(code_of([&] { write_corpus(graph, CorpusFormat::kConllX); }) == ErrorCode::kIncompatibleFormat);
    const auto dm = read_sdp(slurp("dm_sample.sdp"), CorpusFormat::kSdp2015);
    CHECK(code_of([&] { write_corpus(dm, CorpusFormat::kSemEval16); }) == ErrorCode::kIncompatibleFormat);
  }

  TEST_CASE("every sample is a read-write-read fixpoint and canonical files are byte stable") {
    const std::vector<std::pair<std::string, CorpusFormat>> files{
        {"ptb_sample.conllx", CorpusFormat::kConllX},   {"ud_sample.conllu", CorpusFormat::kConllU},
        {"dm_sample.sdp", CorpusFormat::kSdp2015},      {"semeval_sample.sem16", CorpusFormat::kSemEval16},
        {"mixed_sample.seq", CorpusFormat::kSeqText}};
    for (const auto& [name, format] : files) {
      CAPTURE(name);
      const auto text = slurp(name);
      const auto first = read_corpus(text, format);
      const auto written = write_corpus(first, format);
      const auto second = read_corpus(written, format);
      CHECK(same_content(first, second));
      CHECK(written == text);
    }
  }

  TEST_CASE("SEQTEXT schema is tightened to the data") {
    const auto doc = read_seqtext(slurp("mixed_sample.seq"));
    REQUIRE(doc.sentences.size() == 3);
    CHECK_FALSE(doc.schema.is_tree());
    CHECK(doc.schema.allows_isolated());
    CHECK_FALSE(doc.schema.allows_multi_head());
    CHECK(doc.sentences[1].graph == DependencyGraph(3, {{1, 2, "r"}, {2, 2, "root"}, {3, 2, "r"}}));
  }

  TEST_CASE("statistics") {
    auto one = read_seqtext("a [PID] 1 [SPT] b [PID] 2 [SPT] a [PID] 3\na [r] 2 [SPT] b [root] 2 [SPT] a [r] 2\n");
    CHECK(corpus_stats(one).repeated_word_fraction() == 1.0);
    auto two = read_conll("1\ta\t_\t_\t_\t_\t0\troot\n2\tb\t_\t_\t_\t_\t1\tr\n\n1\tc\t_\t_\t_\t_\t0\troot\n2\td\t_\t_\t_\t_\t1\tr\n");
    CHECK(corpus_stats(two).repeated_word_fraction() == 0.0);
    const auto st = corpus_stats(read_sdp(slurp("dm_sample.sdp"), CorpusFormat::kSdp2015));
    CHECK(st.sentences == 3);
    CHECK(st.words == 17);
    CHECK(st.isolated_words == 6);
    CHECK(st.multi_head_words == 3);
    CHECK(st.repeated_word_sentences == 1);
    CHECK(render_stats(st).find("isolated_words\t6\n") != std::string::npos);
  }
}
