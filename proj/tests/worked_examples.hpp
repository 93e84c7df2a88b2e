#pragma once

// The English-Spanish sentence pair used for the phrase-extraction worked
// example, with the alignment reconstructed from its phrase listing.

#include <set>
#include <tuple>

#include "ruleinfer/corpus_io.hpp"
#include "ruleinfer/templates.hpp"
#include "test_support.hpp"

namespace worked {

inline ruleinfer::SentencePair request_pair() {
    using testing::lf;
    return {{lf("my", "det"), lf("personal", "adj"), lf("request", "n"), lf("has", "vaux"), lf("not", "adv"),
             lf("been", "vaux"), lf("met", "vblex")},
            {lf("mi", "det"), lf("petición", "n"), lf("personal", "adj"), lf("no", "adv"), lf("ha", "vaux"),
             lf("sido", "vaux"), lf("satisfecha", "vblex")},
            0};
}

/// my-mi, personal-personal, request-petición, has-ha, not-no, been-sido, met-satisfecha
inline ruleinfer::AlignmentMatrix request_alignment() {
    ruleinfer::AlignmentMatrix a(7, 7);
    a.add(0, 0);
    a.add(1, 2);
    a.add(2, 1);
    a.add(3, 4);
    a.add(4, 3);
    a.add(5, 5);
    a.add(6, 6);
    return a;
}

/// Multi-word source spans (start, end inclusive) of every extracted pair
/// except the whole sentence; each target span has the same indices.
inline std::set<std::pair<std::size_t, std::size_t>> multiword_spans() {
    return {{0, 2}, {0, 4}, {0, 5}, {1, 2}, {1, 4}, {1, 5}, {1, 6}, {3, 4}, {3, 5}, {3, 6}, {5, 6}};
}

// Spanish-Catalan periphrasis with a preposition change.
inline ruleinfer::ExtendedAlignmentTemplate periphrasis_template() {
    return ruleinfer::parse_canonical(
        "<verb><pret><3rd><pl> ^en<pr>$ <noun><loc> ||| ^anar<vaux><pres><3rd><pl>$ <verb><inf> ^a<pr>$ <noun><loc>"
        " ||| 0-0 1-0 2-1 3-2 ||| 1:verb.* 3:noun.*");
}

inline ruleinfer::BilingualDictionary periphrasis_dictionary() {
    ruleinfer::BilingualDictionary d;
    d.add({{"vivir", "verb", {}}, {"viure", "verb", {}}});
    d.add({{"Francia", "noun", {}}, {"França", "noun", {}}});
    d.add({{"en", "pr", {}}, {"en", "pr", {}}});
    return d;
}

inline const char* periphrasis_input = "^vivir<verb><pret><3rd><pl>$ ^en<pr>$ ^Francia<noun><loc>$";
inline const char* periphrasis_output = "^anar<vaux><pres><3rd><pl>$ ^viure<verb><inf>$ ^a<pr>$ ^França<noun><loc>$";

// Masculine propagation over article, noun and adjective, gated on the
// noun being masculine in the target language.
inline ruleinfer::ExtendedAlignmentTemplate gender_template() {
    return ruleinfer::parse_canonical(
        "^el<det><def><f><sg>$ <noun><f><sg> <adj><f><sg> ||| ^el<det><def><m><sg>$ <noun><m><sg> <adj><m><sg>"
        " ||| 0-0 1-1 2-2 ||| 1:noun.m.* 2:adj.*");
}

inline ruleinfer::BilingualDictionary gender_dictionary() {
    ruleinfer::BilingualDictionary d;
    d.add({{"el", "det", {}}, {"el", "det", {}}});
    d.add({{"silla", "noun", {}}, {"cadira", "noun", {}}});
    d.add({{"calle", "noun", {"f"}}, {"carrer", "noun", {"m"}}});
    d.add({{"rojo", "adj", {}}, {"vermell", "adj", {}}});
    return d;
}

inline const char* red_chair = "^el<det><def><f><sg>$ ^silla<noun><f><sg>$ ^rojo<adj><f><sg>$";
inline const char* red_chair_w4w = "^el<det><def><f><sg>$ ^cadira<noun><f><sg>$ ^vermell<adj><f><sg>$";
inline const char* red_street = "^el<det><def><f><sg>$ ^calle<noun><f><sg>$ ^rojo<adj><f><sg>$";
inline const char* red_street_out = "^el<det><def><m><sg>$ ^carrer<noun><m><sg>$ ^vermell<adj><m><sg>$";

}  // namespace worked
