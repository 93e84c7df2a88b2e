#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ruleinfer/bidix.hpp"

namespace ruleinfer {

/// Either a morphological class (category + tags) or, for words of a
/// lexicalized category, a single-word class holding the full form.
struct WordClass {
    bool lexicalized = false;
    std::string lemma;  // empty for morphological classes
    std::string category;
    std::vector<std::string> tags;

    static WordClass morph(std::string category, std::vector<std::string> tags);
    static WordClass lexical(const LexicalForm& form);

    LexicalForm form() const { return {lemma, category, tags, false}; }

    friend auto operator<=>(const WordClass&, const WordClass&) = default;
};

WordClass word_class(const LexicalForm& w, const CategorySet& lexicalized_cats);

/// `^en<pr>$` for lexicalized classes, `<noun><loc>` otherwise.
std::string render(const WordClass& c);
/// Report form: `**en**-(pr)` or `(noun.loc)`.
std::string display(const WordClass& c);

std::string render_classes(const std::vector<WordClass>& classes);

/// z = (S, T, A, R). Alignment links are (TL position, SL position);
/// restrictions are keyed by TL position.
struct ExtendedAlignmentTemplate {
    std::vector<WordClass> sl;
    std::vector<WordClass> tl;
    AlignmentMatrix alignment;
    std::map<std::size_t, Restriction> restrictions;

    friend bool operator==(const ExtendedAlignmentTemplate&, const ExtendedAlignmentTemplate&) = default;
};

/// `S ||| T ||| i-j ... ||| pos:pattern ...`; equal templates and only equal
/// templates share a serialization.
std::string canonical(const ExtendedAlignmentTemplate& t);

/// Throws DataError if the template breaks the alignment/restriction
/// invariants (unaligned Morph positions, restrictions on lexicalized
/// positions, out-of-range links).
void validate(const ExtendedAlignmentTemplate& t);

enum class DiscardReason { UnalignedNonLexicalized, NotReproducible };

std::string_view to_string(DiscardReason reason);

using GeneralizeResult = std::variant<ExtendedAlignmentTemplate, DiscardReason>;

GeneralizeResult generalize(const BilingualPhrasePair& phrase, const CategorySet& lexicalized_cats,
                            const BilingualDictionary& dict);

struct CountedTemplate {
    ExtendedAlignmentTemplate at;
    std::size_t count = 0;

    friend bool operator==(const CountedTemplate&, const CountedTemplate&) = default;
};

/// Multiset count; sorted by count descending, then canonical text.
std::vector<CountedTemplate> count_templates(const std::vector<ExtendedAlignmentTemplate>& templates);

/// Orders by (count desc, canonical asc).
void sort_counted(std::vector<CountedTemplate>& counted);

enum class SelectionMode { Raw, LengthScaled };

SelectionMode parse_selection_mode(std::string_view name);
std::string_view to_string(SelectionMode mode);

/// 1 + log(l). Natural log.
double length_factor(std::size_t sl_length);

/// c (raw) or c·(1 + log l) (length-scaled).
double selection_score(const CountedTemplate& t, SelectionMode mode);

/// Keeps templates whose score is at least `threshold`, preserving order.
std::vector<CountedTemplate> select_templates(const std::vector<CountedTemplate>& counted, double threshold,
                                              SelectionMode mode);

struct LearnOptions {
    CategorySet lexicalized;
    std::size_t max_source_len = kDefaultMaxSourceLength;
    unsigned threads = 1;
};

struct LearnResult {
    std::vector<CountedTemplate> templates;
    std::size_t phrases = 0;
    std::size_t discarded_unaligned = 0;
    std::size_t discarded_unreproducible = 0;

    std::size_t discarded() const { return discarded_unaligned + discarded_unreproducible; }
};

/// Extracts, generalizes and counts over the whole aligned corpus.
LearnResult learn_templates(const std::vector<SentencePair>& pairs, const std::vector<AlignmentMatrix>& alignments,
                            const BilingualDictionary& dict, const LearnOptions& options);

/// One `count ||| canonical` record per line.
std::string format_template_dump(const std::vector<CountedTemplate>& counted);
/// Skips leading `#` header lines. Throws ParseError/DataError with line numbers.
std::vector<CountedTemplate> parse_template_dump(std::string_view text);

/// Parses the `S ||| T ||| A ||| R` part of one record.
ExtendedAlignmentTemplate parse_canonical(std::string_view text);

}  // namespace ruleinfer
