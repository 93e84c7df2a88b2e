#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace ruleinfer {

/// Lemma + lexical category + ordered inflection tags: the unit every
/// module works on.
struct LexicalForm {
    std::string lemma;
    std::string category;
    std::vector<std::string> inflection;
    /// Set on word-for-word output when the dictionary had no entry.
    bool unknown = false;

    friend auto operator<=>(const LexicalForm&, const LexicalForm&) = default;
    friend bool operator==(const LexicalForm&, const LexicalForm&) = default;
};

using Sentence = std::vector<LexicalForm>;

/// True if `tag` can appear inside `<...>` and in dotted restriction syntax.
bool valid_tag(std::string_view tag);

/// Throws DataError when a form breaks the lemma/category/tag invariants.
void validate(const LexicalForm& form);

/// `^lemma<cat><tag>...$`, escaping lemma metacharacters.
std::string render(const LexicalForm& form);

/// `<cat><tag>...` with no lemma part.
std::string render_tags(std::string_view category, const std::vector<std::string>& tags);

/// Dotted display form used in reports, e.g. `noun.m.sg`.
std::string dotted(std::string_view category, const std::vector<std::string>& tags);

}  // namespace ruleinfer
