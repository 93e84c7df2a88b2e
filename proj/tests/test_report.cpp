#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "worked_examples.hpp"
#include "json.hpp"
#include "ruleinfer/corpus_io.hpp"
#include "ruleinfer/fixture.hpp"
#include "ruleinfer/report.hpp"

using namespace ruleinfer;

namespace {

std::vector<TransferRule> two_rules() {
    return build_rules({{worked::periphrasis_template(), 3}, {worked::gender_template(), 2}});
}

struct Translated {
    BilingualDictionary dict = worked::gender_dictionary();
    std::vector<Sentence> corpus = {parse_analyzed_line(worked::red_chair), parse_analyzed_line(worked::red_street),
                                    parse_analyzed_line("^silla<noun><f><sg>$ ^zorblat<noun>$")};
    TransferEngine engine{build_rules({{worked::gender_template(), 2}}), dict, {"det"}};
    CorpusTranslation result = engine.translate_corpus(corpus);
};

}  // namespace

TEST_CASE("empty rule base gives an empty report") {
    CHECK(report_rulebase({}).empty());
    CHECK(nlohmann::json::parse(report_rulebase_json({})).empty());
}

TEST_CASE("rule base report marks lexicalized classes") {
    CHECK(report_rulebase(two_rules()) ==
          "rule base: 2 rules, 2 templates\n"
          "lexicalized words are shown as **lemma**-(tags)\n"
          "\n"
          "rule 1: (verb.pret.3rd.pl) **en**-(pr) (noun.loc)\n"
          "  1. [count 3] -> **anar**-(vaux.pres.3rd.pl) (verb.inf) **a**-(pr) (noun.loc)\n"
          "     alignment 1-1 1-2 2-3 3-4  R = {w2 = verb.*, w4 = noun.*}\n"
          "  2. default: word-for-word\n"
          "\n"
          "rule 2: **el**-(det.def.f.sg) (noun.f.sg) (adj.f.sg)\n"
          "  1. [count 2] -> **el**-(det.def.m.sg) (noun.m.sg) (adj.m.sg)\n"
          "     alignment 1-1 2-2 3-3  R = {w2 = noun.m.*, w3 = adj.*}\n"
          "  2. default: word-for-word\n");

    auto j = nlohmann::json::parse(report_rulebase_json(two_rules()));
    REQUIRE(j.size() == 2);
    CHECK(j[0]["display"] == "(verb.pret.3rd.pl) **en**-(pr) (noun.loc)");
    CHECK(j[0]["candidates"][0]["count"] == 3);
    CHECK(j[0]["candidates"][0]["canonical"] == canonical(worked::periphrasis_template()));
    CHECK(j[1]["candidates"][0]["restrictions"]["w2"] == "noun.m.*");
}

TEST_CASE("statistics report") {
    Translated t;
    auto text = report_statistics(t.result.stats);
    CHECK(text ==
          "sentences:              3\n"
          "words:                  8\n"
          "rules generated:        1\n"
          "rules used:             1\n"
          "% rules used:           100.00\n"
          "rule applications:      2\n"
          "default applications:   1\n"
          "% word-for-word:        50.00\n"
          "words outside rules:    2\n"
          "OOV words:              1\n"
          "% OOV:                  12.50\n"
          "\n"
          "length  rules  used  applications  default\n"
          "     3      1     1             2        1\n");
    auto j = nlohmann::json::parse(report_statistics_json(t.result.stats));
    CHECK(j["percent_default"] == 50.0);
    CHECK(j["percent_oov"] == 12.5);
    CHECK(j["by_length"][0]["applications"] == 2);
    CHECK(j["rule_use"] == nlohmann::json::array({2}));
}

TEST_CASE("trace report") {
    Translated t;
    CHECK(report_trace(t.corpus, t.result, t.engine.rules()) ==
          "sentence 1\n"
          "  in:  ^el<det><def><f><sg>$ ^silla<noun><f><sg>$ ^rojo<adj><f><sg>$\n"
          "  [1+3] ^el<det><def><f><sg>$ ^silla<noun><f><sg>$ ^rojo<adj><f><sg>$  -> rule 1 default\n"
          "       rejected: w2 = noun.m.* not met by noun.f.sg\n"
          "  out: ^el<det><def><f><sg>$ ^cadira<noun><f><sg>$ ^vermell<adj><f><sg>$\n"
          "sentence 2\n"
          "  in:  ^el<det><def><f><sg>$ ^calle<noun><f><sg>$ ^rojo<adj><f><sg>$\n"
          "  [1+3] ^el<det><def><f><sg>$ ^calle<noun><f><sg>$ ^rojo<adj><f><sg>$  -> rule 1 candidate 1 [count 2]\n"
          "  out: ^el<det><def><m><sg>$ ^carrer<noun><m><sg>$ ^vermell<adj><m><sg>$\n"
          "sentence 3\n"
          "  in:  ^silla<noun><f><sg>$ ^zorblat<noun>$\n"
          "  [1+1] ^silla<noun><f><sg>$  -> no rule (word-for-word)\n"
          "  [2+1] ^zorblat<noun>$  -> no rule (word-for-word)\n"
          "  out: ^cadira<noun><f><sg>$ ^*zorblat<noun>$\n");
}

TEST_CASE("length histogram matches the rule counts") {
    FixtureOptions opts;
    opts.sentences = 300;
    auto pairs = generate_fixture(opts);
    std::vector<ExtendedAlignmentTemplate> all;
    for (const auto& p : pairs) {
        // One-to-one prefix templates of lengths 1..4 per sentence.
        for (std::size_t n = 1; n <= 4 && n <= p.source.size(); ++n) {
            ExtendedAlignmentTemplate at{{}, {}, AlignmentMatrix(n, n), {}};
            for (std::size_t k = 0; k < n; ++k) {
                auto c = WordClass::morph(p.source[k].category, p.source[k].inflection);
                at.sl.push_back(c);
                at.tl.push_back(c);
                at.alignment.add(k, k);
                at.restrictions.emplace(k, Restriction{c.category, {}});
            }
            all.push_back(at);
        }
    }
    auto rules = build_rules(count_templates(all));
    auto summary = summarize(rules);
    auto j = nlohmann::json::parse(report_length_histogram_json(rules));
    std::size_t total = 0;
    for (const auto& row : j) {
        CHECK(row["rules"] == summary.rules_by_length.at(row["length"].get<std::size_t>()));
        total += row["rules"].get<std::size_t>();
    }
    CHECK(total == rules.size());
    auto text = report_length_histogram(rules);
    CHECK(text.rfind("rules by pattern length\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(j.size() + 1));
}

TEST_CASE("reports are byte-stable") {
    Translated a, b;
    CHECK(report_statistics(a.result.stats) == report_statistics(b.result.stats));
    CHECK(report_statistics_json(a.result.stats) == report_statistics_json(b.result.stats));
    CHECK(report_rulebase_json(two_rules()) == report_rulebase_json(two_rules()));
    CHECK(report_trace(a.corpus, a.result, a.engine.rules()) == report_trace(b.corpus, b.result, b.engine.rules()));
}

TEST_CASE("discard report") {
    LearnResult r;
    r.phrases = 10;
    r.discarded_unaligned = 3;
    r.discarded_unreproducible = 2;
    r.templates = {{worked::gender_template(), 5}};
    auto j = nlohmann::json::parse(report_discards_json(r));
    CHECK(j["discarded"]["unaligned-non-lexicalized"] == 3);
    CHECK(j["discarded"]["not-reproducible"] == 2);
    CHECK(j["discarded_total"] == 5);
    CHECK(j["generalized"] == 5);
    auto text = report_discards(r);
    CHECK(text.find("discarded total:                 5\n") != std::string::npos);
}
