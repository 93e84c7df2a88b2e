#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ruleinfer/phrase_extraction.hpp"

namespace ruleinfer {

/// One side of a bilingual entry. `tags` holds only the inflection
/// information the entry codes explicitly.
struct DictSide {
    std::string lemma;
    std::string category;
    std::vector<std::string> tags;

    friend auto operator<=>(const DictSide&, const DictSide&) = default;
};

struct DictEntry {
    DictSide sl;
    DictSide tl;

    friend auto operator<=>(const DictEntry&, const DictEntry&) = default;
};

/// TL side of a successful lookup.
struct Translation {
    std::string lemma;
    std::string category;
    std::vector<std::string> tags;
    const DictEntry* entry = nullptr;

    LexicalForm form() const { return {lemma, category, tags, false}; }
};

/// SL->TL dictionary with at most one entry per SL (lemma, category).
class BilingualDictionary {
  public:
    BilingualDictionary() = default;

    /// Throws DataError naming both entries if the SL key is already present.
    void add(DictEntry entry);

    /// Entry for (lemma, category) regardless of tags, or nullptr.
    const DictEntry* find(std::string_view lemma, std::string_view category) const;

    /// Entry whose SL tags are a prefix of the word's inflection, or nullptr.
    const DictEntry* match(const LexicalForm& sl) const;

    std::optional<Translation> lookup(const LexicalForm& sl) const;

    std::size_t size() const { return entries_.size(); }
    const std::vector<DictEntry>& entries() const { return entries_; }

  private:
    std::vector<DictEntry> entries_;
    std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> index_;
};

/// Parses the `<dic><e><p><l>..</l><r>..</r></p></e>...</dic>` subset.
BilingualDictionary parse_dictionary(std::string_view xml);

std::string format_dictionary(const BilingualDictionary& dict);

/// TL lexical category plus a tag prefix; the trailing wildcard is implicit.
struct Restriction {
    std::string category;
    std::vector<std::string> tag_prefix;

    friend auto operator<=>(const Restriction&, const Restriction&) = default;
};

/// `category[.tag]*.*`
std::string to_string(const Restriction& r);
/// Inverse of to_string(); throws DataError on malformed input.
Restriction parse_restriction(std::string_view text);

Restriction derive_restriction(const DictEntry& entry);

bool restriction_satisfied(const Restriction& r, std::string_view tl_category, const std::vector<std::string>& tl_tags);

using CategorySet = std::vector<std::string>;

bool is_lexicalized(const LexicalForm& w, const CategorySet& lexicalized_cats);

/// Index of the SL word whose translation supplies the lemma for TL
/// position `target`: the lowest aligned non-lexicalized SL position, else
/// the lowest aligned position. nullopt if `target` is unaligned.
std::optional<std::size_t> lemma_source(const AlignmentMatrix& alignment, const std::vector<bool>& sl_lexicalized,
                                        std::size_t target);

/// True if the dictionary translates every non-lexicalized word of the
/// phrase to the TL lemma observed for it.
bool reproducible(const BilingualDictionary& dict, const BilingualPhrasePair& phrase, const CategorySet& lexicalized_cats);

}  // namespace ruleinfer
