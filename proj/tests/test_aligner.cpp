#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ruleinfer/aligner.hpp"
#include "ruleinfer/error.hpp"
#include "test_support.hpp"

using namespace ruleinfer;
using testing::lf;

namespace {

Sentence words(std::initializer_list<const char*> lemmas) {
    Sentence s;
    for (const char* l : lemmas) s.push_back(lf(l, "n"));
    return s;
}

std::string key(const char* lemma) { return render(lf(lemma, "n")); }

std::vector<SentencePair> two_sentence_corpus() {
    return {{words({"a"}), words({"x"}), 1}, {words({"a", "b"}), words({"x", "y"}), 2}};
}

AlignmentMatrix matrix(std::size_t src, std::size_t tgt, std::initializer_list<std::pair<int, int>> links) {
    AlignmentMatrix a(src, tgt);
    for (auto [i, j] : links) a.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return a;
}

std::vector<SentencePair> random_corpus(testing::Rng& rng, std::size_t n, std::size_t vocab) {
    std::vector<SentencePair> pairs;
    for (std::size_t k = 0; k < n; ++k) {
        SentencePair p;
        std::size_t len = testing::uniform(rng, 1, 6);
        for (std::size_t w = 0; w < len; ++w) {
            std::size_t id = testing::uniform(rng, 0, vocab - 1);
            p.source.push_back(lf("s" + std::to_string(id), "n"));
            if (testing::coin(rng, 0.85)) p.target.push_back(lf("t" + std::to_string(id), "n"));
            if (testing::coin(rng, 0.1)) p.target.push_back(lf("t" + std::to_string((id + 1) % vocab), "n"));
        }
        if (p.target.empty()) p.target.push_back(lf("t0", "n"));
        pairs.push_back(std::move(p));
    }
    return pairs;
}

}  // namespace

TEST_CASE("EM on the two-sentence corpus matches the exact-arithmetic oracle") {
    // tests/oracles/ibm1_oracle.py
    const double ll[] = {-2.0794415416798362, -1.8079244060814106, -1.7228408866573197,
                         -1.6580061032483628, -1.6107884559535632, -1.5772747374863128};
    auto corpus = two_sentence_corpus();
    int seen = 0;
    auto table = train_ibm1(corpus, 5, 1, [&](int it, const LexicalTranslationTable& t) {
        CHECK(std::abs(corpus_log_likelihood(corpus, t) - ll[it]) < 1e-9);
        ++seen;
    });
    CHECK(seen == 6);
    CHECK(std::abs(table.prob(key("x"), key("a")) - 0.87759793702648281) < 1e-9);
    CHECK(std::abs(table.prob(key("y"), key("a")) - 0.12240206297351724) < 1e-9);
    CHECK(std::abs(table.prob(key("x"), key("b")) - 0.10799297785836545) < 1e-9);
    CHECK(std::abs(table.prob(key("y"), key("b")) - 0.89200702214163452) < 1e-9);
    CHECK(std::abs(table.null_prob(key("x")) - 0.87759793702648281) < 1e-9);
    CHECK(std::abs(table.null_prob(key("y")) - 0.12240206297351724) < 1e-9);
    CHECK(table.prob(key("x"), key("a")) > table.prob(key("y"), key("a")));
    CHECK(table.prob(key("y"), key("b")) > table.prob(key("x"), key("b")));
}

TEST_CASE("single pair gives t(x|a) = 1") {
    auto table = train_ibm1({{words({"a"}), words({"x"}), 1}}, 5);
    CHECK(table.prob(key("x"), key("a")) == 1.0);
    CHECK(table.null_prob(key("x")) == 1.0);
}

TEST_CASE("zero iterations returns the uniform initialization") {
    auto table = train_ibm1(two_sentence_corpus(), 0);
    CHECK(table.prob(key("x"), key("a")) == 0.5);
    CHECK(table.prob(key("y"), key("b")) == 0.5);
    CHECK(table.null_prob(key("y")) == 0.5);
    CHECK(table.prob(key("y"), key("zzz")) == 0.0);
}

TEST_CASE("training errors") {
    CHECK_THROWS_AS(train_ibm1({}, 5), DataError);
    CHECK_THROWS_AS(train_ibm1(two_sentence_corpus(), -1), DataError);
}

TEST_CASE("log-likelihood is monotone and tables stay normalized") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        testing::Rng rng(seed);
        auto corpus = random_corpus(rng, 40, 12);
        double prev = -INFINITY;
        train_ibm1(corpus, 5, 1, [&](int, const LexicalTranslationTable& t) {
            double ll = corpus_log_likelihood(corpus, t);
            CHECK(ll >= prev - 1e-9);
            prev = ll;
            CHECK(t.max_normalization_error() <= 1e-9);
        });
    }
}

TEST_CASE("training is bit-identical across thread counts") {
    testing::Rng rng(5);
    auto corpus = random_corpus(rng, 300, 20);
    auto one = train_ibm1(corpus, 5, 1);
    auto four = train_ibm1(corpus, 5, 4);
    CHECK(one == four);
    CHECK(align_corpus(corpus, {5, Symmetrization::Refined, 1}) == align_corpus(corpus, {5, Symmetrization::Refined, 3}));
}

TEST_CASE("viterbi alignment") {
    SentencePair p{words({"a", "b"}), words({"x"}), 0};
    SUBCASE("forced argmax") {
        auto t = LexicalTranslationTable::from_entries({{key("x"), key("a"), 0.9}, {key("x"), key("b"), 0.1}});
        CHECK(viterbi_align(p, t) == matrix(2, 1, {{0, 0}}));
    }
    SUBCASE("ties go to the lowest source index") {
        auto t = LexicalTranslationTable::from_entries({{key("x"), key("a"), 0.5}, {key("x"), key("b"), 0.5}});
        CHECK(viterbi_align(p, t) == matrix(2, 1, {{0, 0}}));
        auto unseen = LexicalTranslationTable::from_entries({});
        CHECK(viterbi_align(p, unseen) == matrix(2, 1, {{0, 0}}));
    }
    SUBCASE("NULL wins only when strictly greater") {
        auto t = LexicalTranslationTable::from_entries(
            {{key("x"), key("a"), 0.2}, {key("x"), key("b"), 0.1}, {key("x"), "", 0.7}});
        CHECK(viterbi_align(p, t).empty());
        auto tie = LexicalTranslationTable::from_entries({{key("x"), key("a"), 0.4}, {key("x"), "", 0.4}});
        CHECK(viterbi_align(p, tie) == matrix(2, 1, {{0, 0}}));
    }
    SUBCASE("at most one link per target position") {
        testing::Rng rng(9);
        auto corpus = random_corpus(rng, 50, 8);
        auto table = train_ibm1(corpus, 3);
        for (const auto& pair : corpus) {
            auto a = viterbi_align(pair, table);
            std::vector<int> per_row(pair.target.size());
            for (const auto& l : a.links()) ++per_row[l.target];
            for (int n : per_row) CHECK(n <= 1);
        }
    }
}

TEST_CASE("symmetrization examples") {
    auto fwd = matrix(2, 2, {{0, 0}, {1, 1}});
    auto bwd = matrix(2, 2, {{0, 0}});
    CHECK(symmetrize(fwd, bwd, Symmetrization::Intersection) == matrix(2, 2, {{0, 0}}));
    CHECK(symmetrize(fwd, bwd, Symmetrization::Union) == matrix(2, 2, {{0, 0}, {1, 1}}));
    auto f2 = matrix(2, 2, {{0, 0}, {1, 0}});
    auto b2 = matrix(2, 2, {{0, 0}, {1, 1}});
    CHECK(symmetrize(f2, b2, Symmetrization::Refined) == matrix(2, 2, {{0, 0}, {1, 1}, {1, 0}}));
    CHECK_THROWS_AS(symmetrize(matrix(2, 2, {}), matrix(3, 2, {}), Symmetrization::Union), DataError);
}

TEST_CASE("refined: non-adjacent union link needs both row and column uncovered") {
    // (2,2) is isolated from the intersection; row 2 and column 2 are free.
    auto f = matrix(3, 3, {{0, 0}, {2, 2}});
    auto b = matrix(3, 3, {{0, 0}});
    CHECK(symmetrize(f, b, Symmetrization::Refined) == matrix(3, 3, {{0, 0}, {2, 2}}));
    // (2,0) is not adjacent and column 0 is covered: stays out.
    auto f2 = matrix(3, 3, {{0, 0}, {2, 0}});
    CHECK(symmetrize(f2, b, Symmetrization::Refined) == matrix(3, 3, {{0, 0}}));
}

TEST_CASE("intersection <= refined <= union on random pairs") {
    testing::Rng rng(21);
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        std::size_t s = testing::uniform(rng, 1, 7), t = testing::uniform(rng, 1, 7);
        auto f = testing::random_alignment(rng, s, t, 0.25);
        auto b = testing::random_alignment(rng, s, t, 0.25);
        auto in = symmetrize(f, b, Symmetrization::Intersection);
        auto re = symmetrize(f, b, Symmetrization::Refined);
        auto un = symmetrize(f, b, Symmetrization::Union);
        for (const auto& l : in.links()) violations += !re.contains(l.target, l.source);
        for (const auto& l : re.links()) violations += !un.contains(l.target, l.source);
    }
    CHECK(violations == 0);
}

TEST_CASE("alignment file export and import") {
    std::vector<SentencePair> pairs{{words({"a", "b"}), words({"x", "y"}), 1}};
    auto a = import_alignments("0-0 1-1\n", pairs);
    CHECK(a[0] == matrix(2, 2, {{0, 0}, {1, 1}}));
    CHECK_THROWS_AS(import_alignments("5-0\n", pairs), DataError);
    try {
        import_alignments("# header\n0-0 0-7\n", pairs);
        FAIL("no error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(import_alignments("0-0\n0-0\n", pairs), DataError);
    CHECK_THROWS_AS(import_alignments("0:0\n", pairs), DataError);
    CHECK(export_alignments({matrix(2, 2, {{1, 0}, {0, 1}, {0, 0}})}) == "0-0 0-1 1-0\n");
}

TEST_CASE("import(export(A)) = A on random matrices") {
    testing::Rng rng(33);
    for (int round = 0; round < 10; ++round) {
        std::vector<SentencePair> pairs;
        std::vector<AlignmentMatrix> as;
        for (int k = 0; k < 120; ++k) {
            std::size_t s = testing::uniform(rng, 1, 12), t = testing::uniform(rng, 1, 12);
            SentencePair p;
            p.source.assign(s, lf("w", "n"));
            p.target.assign(t, lf("w", "n"));
            pairs.push_back(p);
            as.push_back(testing::random_alignment(rng, s, t, testing::coin(rng, 0.1) ? 0.0 : 0.2));
        }
        REQUIRE(import_alignments(export_alignments(as), pairs) == as);
        REQUIRE(import_alignments("# tool\n# config\n" + export_alignments(as), pairs) == as);
    }
}

TEST_CASE("align_corpus recovers a clean diagonal") {
    std::vector<SentencePair> pairs;
    for (int k = 0; k < 30; ++k) {
        SentencePair p;
        for (int w = 0; w < 3; ++w) {
            int id = (k + w * 7) % 9;
            p.source.push_back(lf("s" + std::to_string(id), "n"));
            p.target.push_back(lf("t" + std::to_string(id), "n"));
        }
        pairs.push_back(p);
    }
    auto as = align_corpus(pairs, {10, Symmetrization::Intersection, 1});
    for (const auto& a : as) CHECK(a == matrix(3, 3, {{0, 0}, {1, 1}, {2, 2}}));
}
