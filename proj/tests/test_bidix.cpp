#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ruleinfer/bidix.hpp"
#include "ruleinfer/error.hpp"
#include "test_support.hpp"

using namespace ruleinfer;
using testing::lf;

namespace {

const char* kEntries = R"(<?xml version="1.0" encoding="UTF-8"?>
<dic>
  <!-- no change in inflection -->
  <e><p><l>castigo<s n="noun"/></l><r>càstig<s n="noun"/></r></p></e>
  <e><p><l>calle<s n="noun"/><s n="f"/></l><r>carrer<s n="noun"/><s n="m"/></r></p></e>
  <e><p><l>vivir<s n="verb"/></l><r>viure<s n="verb"/></r></p></e>
</dic>
)";

BilingualPhrasePair phrase(Sentence src, Sentence tgt, std::initializer_list<std::pair<int, int>> links) {
    BilingualPhrasePair p;
    p.alignment = AlignmentMatrix(src.size(), tgt.size());
    for (auto [i, j] : links) p.alignment.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    p.source = std::move(src);
    p.target = std::move(tgt);
    return p;
}

}  // namespace

TEST_CASE("parses the two documented entries") {
    auto dict = parse_dictionary(kEntries);
    REQUIRE(dict.size() == 3);
    const auto* castigo = dict.find("castigo", "noun");
    REQUIRE(castigo);
    CHECK(castigo->tl == DictSide{"càstig", "noun", {}});
    CHECK(castigo->sl.tags.empty());
    const auto* calle = dict.find("calle", "noun");
    REQUIRE(calle);
    CHECK(calle->sl == DictSide{"calle", "noun", {"f"}});
    CHECK(calle->tl == DictSide{"carrer", "noun", {"m"}});
    CHECK(parse_dictionary("<dic/>").size() == 0);
    CHECK(parse_dictionary("<dic></dic>").size() == 0);
}

TEST_CASE("dictionary errors") {
    CHECK_THROWS_AS(parse_dictionary("<dic><e><p><l><s n=\"noun\"/></l><r>x<s n=\"noun\"/></r></p></e></dic>"), DataError);
    CHECK_THROWS_AS(parse_dictionary("<dic><e><p><l>a</l><r>x<s n=\"noun\"/></r></p></e></dic>"), DataError);
    CHECK_THROWS_AS(parse_dictionary("<dic><e><p><l>a<s n=\"n\"/></l></p></e></dic>"), DataError);
    CHECK_THROWS_AS(parse_dictionary("<dic><e><p><l>a<s n=\"n\"/></l><r>b<s n=\"n\"/></r></p></e>"), DataError);
    try {
        parse_dictionary("<dic>\n<e><p><l>a<s n=\"n\"/></l><r>b<s n=\"n\"/></r></p></e>\n"
                         "<e><p><l>a<s n=\"n\"/></l><r>c<s n=\"n\"/></r></p></e>\n</dic>");
        FAIL("no error");
    } catch (const DataError& e) {
        std::string msg = e.what();
        CHECK(msg.find("entry 1") != std::string::npos);
        CHECK(msg.find("entry 2") != std::string::npos);
    }
    try {
        parse_dictionary("<dic>\n<e><p><l>a<s n=\"n\"/></l><r>b<s n=\"n\"/></r></p></e>\n<e><p><l>q</l></p></e></dic>");
        FAIL("no error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("entry 2") != std::string::npos);
    }
}

TEST_CASE("entities and round-trip through format_dictionary") {
    auto dict = parse_dictionary("<dic><e><p><l>a&amp;b<s n=\"n\"/></l><r>&lt;x&gt;<s n=\"n\"/></r></p></e></dic>");
    CHECK(dict.find("a&b", "n")->tl.lemma == "<x>");
    auto again = parse_dictionary(format_dictionary(dict));
    CHECK(again.entries() == dict.entries());
    auto base = parse_dictionary(kEntries);
    CHECK(parse_dictionary(format_dictionary(base)).entries() == base.entries());
}

TEST_CASE("lookup") {
    auto dict = parse_dictionary(kEntries);
    auto calle = dict.lookup(lf("calle", "noun", {"f", "sg"}));
    REQUIRE(calle);
    CHECK(calle->form() == lf("carrer", "noun", {"m", "sg"}));
    auto castigo = dict.lookup(lf("castigo", "noun", {"m", "pl"}));
    REQUIRE(castigo);
    CHECK(castigo->form() == lf("càstig", "noun", {"m", "pl"}));
    CHECK_FALSE(dict.lookup(lf("unknownword", "noun", {"f"})));
    // entry SL tags must prefix the word's tags
    CHECK_FALSE(dict.lookup(lf("calle", "noun", {"m", "sg"})));
    CHECK_FALSE(dict.lookup(lf("calle", "noun")));
    CHECK_FALSE(dict.lookup(lf("castigo", "verb")));
}

TEST_CASE("restriction derivation and rendering") {
    auto dict = parse_dictionary(kEntries);
    CHECK(to_string(derive_restriction(*dict.find("castigo", "noun"))) == "noun.*");
    CHECK(to_string(derive_restriction(*dict.find("calle", "noun"))) == "noun.m.*");
    DictEntry e{{"x", "noun", {}}, {"y", "noun", {"m", "sg"}}};
    CHECK(to_string(derive_restriction(e)) == "noun.m.sg.*");
    CHECK(parse_restriction("noun.m.sg.*") == Restriction{"noun", {"m", "sg"}});
    CHECK(parse_restriction("adj.*") == Restriction{"adj", {}});
    CHECK_THROWS_AS(parse_restriction("noun.m"), DataError);
    CHECK_THROWS_AS(parse_restriction(".*"), DataError);
    CHECK_THROWS_AS(parse_restriction("noun..*"), DataError);
}

TEST_CASE("restriction_satisfied") {
    CHECK(restriction_satisfied(parse_restriction("noun.m.*"), "noun", {"m", "sg"}));
    CHECK_FALSE(restriction_satisfied(parse_restriction("noun.m.*"), "noun", {"f", "sg"}));
    CHECK(restriction_satisfied(parse_restriction("adj.*"), "adj", {}));
    CHECK_FALSE(restriction_satisfied(parse_restriction("adj.*"), "noun", {}));
    CHECK_FALSE(restriction_satisfied(parse_restriction("noun.m.sg.*"), "noun", {"m"}));
}

TEST_CASE("restriction properties over random entries and forms") {
    testing::Rng rng(17);
    for (int k = 0; k < 2000; ++k) {
        auto w = testing::random_form(rng);
        w.unknown = false;
        std::size_t cut = testing::uniform(rng, 0, w.inflection.size());
        DictEntry e{{w.lemma, w.category, {w.inflection.begin(), w.inflection.begin() + static_cast<std::ptrdiff_t>(cut)}},
                    {"t" + w.lemma, testing::coin(rng) ? w.category : "verb", {}}};
        std::size_t tl_tags = testing::uniform(rng, 0, 3);
        for (std::size_t t = 0; t < tl_tags; ++t) e.tl.tags.push_back(testing::random_tag(rng));
        BilingualDictionary dict;
        dict.add(e);
        auto tr = dict.lookup(w);
        REQUIRE(tr);
        auto r = derive_restriction(e);
        // the restriction derived from an entry accepts that entry's own output
        CHECK(restriction_satisfied(r, tr->category, tr->tags));
        // dropping the last tag never turns true into false
        for (auto cur = r; !cur.tag_prefix.empty();) {
            bool before = restriction_satisfied(cur, tr->category, w.inflection);
            cur.tag_prefix.pop_back();
            if (before) CHECK(restriction_satisfied(cur, tr->category, w.inflection));
        }
        CHECK(parse_restriction(to_string(r)) == r);
    }
}

TEST_CASE("reproducible") {
    auto dict = parse_dictionary(kEntries);
    CategorySet lex{"pr", "vaux"};
    CHECK(reproducible(dict, phrase({lf("vivir", "verb", {"inf"})}, {lf("viure", "verb", {"inf"})}, {{0, 0}}), lex));
    CHECK_FALSE(reproducible(dict, phrase({lf("vivir", "verb", {"inf"})}, {lf("habitar", "verb", {"inf"})}, {{0, 0}}), lex));
    CHECK_FALSE(reproducible(dict, phrase({lf("casa", "noun", {"f"})}, {lf("casa", "noun", {"f"})}, {{0, 0}}), lex));
    // the auxiliary aligned to the verb is lexicalized and not compared
    auto periphrasis = phrase({lf("vivir", "verb", {"pret", "3rd", "pl"})},
                              {lf("anar", "vaux", {"pres", "3rd", "pl"}), lf("viure", "verb", {"inf"})}, {{0, 0}, {1, 0}});
    CHECK(reproducible(dict, periphrasis, lex));
    // lexicalized SL words need no dictionary entry
    CHECK(reproducible(dict, phrase({lf("en", "pr")}, {lf("a", "pr")}, {{0, 0}}), lex));
}

TEST_CASE("lemma_source prefers the lowest non-lexicalized source") {
    AlignmentMatrix a(3, 2);
    a.add(0, 0);
    a.add(0, 2);
    a.add(1, 0);
    CHECK(lemma_source(a, {true, false, false}, 0) == 2u);
    CHECK(lemma_source(a, {false, false, false}, 0) == 0u);
    CHECK(lemma_source(a, {true, false, false}, 1) == 0u);
    AlignmentMatrix b(2, 2);
    CHECK_FALSE(lemma_source(b, {false, false}, 0));
}

TEST_CASE("add rejects malformed entries") {
    BilingualDictionary dict;
    CHECK_THROWS_AS(dict.add({{"", "n", {}}, {"x", "n", {}}}), DataError);
    CHECK_THROWS_AS(dict.add({{"a", "", {}}, {"x", "n", {}}}), DataError);
    dict.add({{"a", "n", {}}, {"x", "n", {}}});
    CHECK_THROWS_AS(dict.add({{"a", "n", {"f"}}, {"y", "n", {}}}), DataError);
    dict.add({{"a", "v", {}}, {"x", "v", {}}});
    CHECK(dict.size() == 2);
}
