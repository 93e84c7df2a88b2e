#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "ruleinfer/error.hpp"
#include "ruleinfer/eval.hpp"
#include "test_support.hpp"

using namespace ruleinfer;

namespace {

Tokens random_tokens(testing::Rng& rng, std::size_t lo, std::size_t hi, std::size_t vocab) {
    Tokens t(testing::uniform(rng, lo, hi));
    for (auto& w : t) w = std::string(1, static_cast<char>('a' + testing::uniform(rng, 0, vocab - 1)));
    return t;
}

TokenCorpus random_corpus(testing::Rng& rng, std::size_t n) {
    TokenCorpus c;
    for (std::size_t k = 0; k < n; ++k) c.push_back(random_tokens(rng, 1, 12, 6));
    return c;
}

}  // namespace

TEST_CASE("tokenize and metric names") {
    CHECK(tokenize("  a  b\tc ") == Tokens{"a", "b", "c"});
    CHECK(tokenize("").empty());
    CHECK(parse_metric("bleu") == Metric::Bleu);
    CHECK(parse_metric("ter") == Metric::Ter);
    CHECK(parse_metric(to_string(Metric::Bleu)) == Metric::Bleu);
    CHECK_THROWS_AS(parse_metric("meteor"), DataError);
}

TEST_CASE("BLEU brevity penalty example") {
    auto s = bleu({tokenize("a b c d")}, {tokenize("a b c d e")});
    CHECK(s.value == doctest::Approx(0.7788007830714049).epsilon(1e-15));
    CHECK(s.value == oracle::bleu({tokenize("a b c d")}, {tokenize("a b c d e")}));
    CHECK(s.value == score_from_stats(Metric::Bleu, s.stats));
    CHECK(bleu({tokenize("a b")}, {tokenize("c d")}).value == 0.0);
    CHECK_THROWS_AS(bleu({tokenize("a")}, {}), DataError);
}

TEST_CASE("BLEU agrees with the textbook oracle") {
    testing::Rng rng(5);
    for (int round = 0; round < 500; ++round) {
        std::size_t n = testing::uniform(rng, 1, 5);
        auto ref = random_corpus(rng, n);
        TokenCorpus hyp;
        for (const auto& r : ref) hyp.push_back(testing::coin(rng, 0.3) ? r : random_tokens(rng, 1, 12, 4));
        double value = bleu(hyp, ref).value;
        REQUIRE(value == doctest::Approx(oracle::bleu(hyp, ref)).epsilon(1e-12));
        CHECK(value >= 0.0);
        CHECK(value <= 1.0);
    }
}

TEST_CASE("TER worked examples") {
    CHECK(ter(tokenize("a b x d e"), tokenize("a b c d e")).value == 0.2);
    CHECK(oracle::levenshtein(tokenize("a b x d e"), tokenize("a b c d e")) == 1);
    auto swapped = ter(tokenize("b a"), tokenize("a b"));
    CHECK(swapped.value == 0.5);
    CHECK(swapped.stats[1] == 1.0);
    CHECK(oracle::min_edits_with_shifts(tokenize("b a"), tokenize("a b"), 2) == 1);
    CHECK(oracle::levenshtein(tokenize("b a"), tokenize("a b")) == 2);
    CHECK_THROWS_AS(ter(tokenize("a"), {}), DataError);
}

TEST_CASE("corpus TER pools edits") {
    TokenCorpus hyp = {tokenize("a b c d"), tokenize("x")};
    TokenCorpus ref = {tokenize("a b c d"), tokenize("y")};
    CHECK(corpus_ter(hyp, ref).value == 0.2);
    double averaged = (ter(hyp[0], ref[0]).value + ter(hyp[1], ref[1]).value) / 2;
    CHECK(averaged == 0.5);
    CHECK(corpus_score(Metric::Ter, hyp, ref).value == 0.2);
}

TEST_CASE("identity scores") {
    testing::Rng rng(8);
    for (int round = 0; round < 1000; ++round) {
        auto x = random_tokens(rng, 1, 20, 8);
        REQUIRE(ter(x, x).value == 0.0);
        REQUIRE(bleu({x}, {x}).value == 1.0);
    }
}

TEST_CASE("greedy TER sits between the exhaustive shift optimum and plain edit distance") {
    testing::Rng rng(9);
    for (int round = 0; round < 1000; ++round) {
        auto ref = random_tokens(rng, 1, 5, 3);
        auto hyp = testing::coin(rng, 0.5) ? random_tokens(rng, 1, 5, 3) : ref;
        if (hyp == ref && hyp.size() > 1) std::swap(hyp.front(), hyp.back());
        auto s = ter_stats(hyp, ref);
        double edits = s[0] + s[1];
        REQUIRE(edits <= static_cast<double>(edit_distance(hyp, ref)));
        REQUIRE(edit_distance(hyp, ref) == oracle::levenshtein(hyp, ref));
        REQUIRE(edits >= static_cast<double>(oracle::min_edits_with_shifts(hyp, ref, 2)));
    }
}

TEST_CASE("bootstrap") {
    testing::Rng rng(10);
    auto ref = random_corpus(rng, 60);
    TokenCorpus hyp;
    for (const auto& r : ref) hyp.push_back(testing::coin(rng, 0.5) ? r : random_tokens(rng, 1, 12, 6));

    BootstrapOptions opts;
    auto a = bootstrap_ci(Metric::Ter, hyp, ref, opts);
    auto b = bootstrap_ci(Metric::Ter, hyp, ref, opts);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(a.lower <= a.upper);
    CHECK(a.survivors == 950);
    CHECK(bootstrap_trim(1000, 2.5) == 25);
    CHECK(a.level == doctest::Approx(0.95));
    CHECK(a.resamples == 1000);

    for (unsigned threads : {2u, 3u, 8u}) {
        opts.threads = threads;
        auto c = bootstrap_ci(Metric::Ter, hyp, ref, opts);
        CHECK(c.lower == a.lower);
        CHECK(c.upper == a.upper);
    }
    opts.threads = 1;

    auto same = bootstrap_ci(Metric::Ter, ref, ref, opts);
    CHECK(same.lower == 0.0);
    CHECK(same.upper == 0.0);

    // Point estimate falls inside the interval for every seed tried.
    double point = corpus_ter(hyp, ref).value;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        opts.seed = seed;
        auto ci = bootstrap_ci(Metric::Ter, hyp, ref, opts);
        CHECK(ci.lower <= point);
        CHECK(point <= ci.upper);
    }

    opts.resamples = 0;
    CHECK_THROWS_AS(bootstrap_ci(Metric::Ter, hyp, ref, opts), DataError);
    opts.resamples = 10;
    opts.q = 50;
    CHECK_THROWS_AS(bootstrap_ci(Metric::Ter, hyp, ref, opts), DataError);
    opts.q = 2.5;
    hyp.pop_back();
    CHECK_THROWS_AS(bootstrap_ci(Metric::Ter, hyp, ref, opts), DataError);
}

TEST_CASE("constant per-sentence scores collapse the interval") {
    std::vector<SufficientStats> stats(20, SufficientStats{1.0, 0.0, 4.0});
    auto ci = bootstrap_ci(stats, [](const SufficientStats& s) { return score_from_stats(Metric::Ter, s); }, {});
    CHECK(ci.lower == 0.25);
    CHECK(ci.upper == 0.25);
}
