#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ruleinfer/bidix.hpp"

namespace ruleinfer {

/// Synthetic related-language pair with three divergences between the SL
/// and the reference TL:
///  - a subset of feminine nouns are masculine in the TL, and articles and
///    adjectives agree with the TL gender;
///  - the preposition `en` becomes `a` before a location name;
///  - the SL preterite becomes `anar` (present) + infinitive.
/// The dictionary codes only the gender change, so word-for-word output
/// gets all three wrong.
struct FixtureOptions {
    std::size_t sentences = 2000;
    std::uint64_t seed = 1;
    /// Share of feminine SL nouns drawn from the gender-flip subset.
    double flip_share = 0.6;
    /// Probability that a noun is replaced by one missing from the dictionary.
    double oov_rate = 0.0;
};

std::vector<SentencePair> generate_fixture(const FixtureOptions& options);

/// Bilingual dictionary covering every in-vocabulary fixture lemma.
BilingualDictionary fixture_dictionary();

/// Lexicalized categories the fixture is designed around.
CategorySet fixture_lexicalized_categories();

}  // namespace ruleinfer
