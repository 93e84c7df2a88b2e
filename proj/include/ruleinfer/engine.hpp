#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ruleinfer/rulegen.hpp"

namespace ruleinfer {

/// Prefix trie over rule patterns.
class PatternMatcher {
  public:
    PatternMatcher() = default;
    /// Throws DataError if two rules share a pattern.
    explicit PatternMatcher(const std::vector<TransferRule>& rules);

    /// Rule index for exactly this class sequence, if any.
    std::optional<std::size_t> lookup(const std::vector<WordClass>& pattern) const;
    std::size_t max_length() const { return max_length_; }

    /// Walks the trie along `keys`; returns the longest rule-bearing prefix
    /// as (length, rule index).
    std::optional<std::pair<std::size_t, std::size_t>> longest(const std::vector<std::string>& keys,
                                                               std::size_t start) const;

  private:
    struct Node {
        std::map<std::string, std::size_t, std::less<>> children;
        std::optional<std::size_t> rule;
    };
    std::vector<Node> nodes_{1};
    std::size_t max_length_ = 0;
};

struct MatchSpan {
    std::size_t start = 0;
    std::size_t length = 0;
    std::optional<std::size_t> rule;

    friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

/// Left-to-right longest-match segmentation. When `dict` is given, words
/// the dictionary cannot translate never take part in a pattern.
std::vector<MatchSpan> match_sentence(const PatternMatcher& matcher, const Sentence& sentence,
                                      const CategorySet& lexicalized_cats, const BilingualDictionary* dict = nullptr);

enum class Application { Candidate, Default, NoRule };

struct TraceEvent {
    std::size_t start = 0;
    std::size_t length = 0;
    std::optional<std::size_t> rule;
    Application applied = Application::NoRule;
    std::size_t candidate = 0;  // meaningful for Application::Candidate
    std::vector<std::string> failures;  // one per rejected candidate

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Per-word dictionary translation; misses pass through marked unknown.
Sentence word_for_word(const Sentence& sl_words, const BilingualDictionary& dict);

/// Empty if the candidate applies, otherwise the reason it was rejected.
std::optional<std::string> check_applicable(const ExtendedAlignmentTemplate& t, const Sentence& sl_words,
                                            const BilingualDictionary& dict);

/// Emits the TL side of `t` for `sl_words`. Throws std::logic_error if a
/// needed dictionary lookup fails (check_applicable guarantees it cannot).
Sentence apply_template(const ExtendedAlignmentTemplate& t, const Sentence& sl_words, const BilingualDictionary& dict);

/// First applicable candidate, else the word-for-word default.
std::pair<Sentence, TraceEvent> apply_rule(const TransferRule& rule, const Sentence& sl_words,
                                           const BilingualDictionary& dict);

struct LengthStats {
    std::size_t rules = 0;
    std::size_t rules_used = 0;
    std::size_t applications = 0;
    std::size_t default_applications = 0;

    friend bool operator==(const LengthStats&, const LengthStats&) = default;
};

struct TranslationStats {
    std::size_t sentences = 0;
    std::size_t words = 0;
    std::size_t oov_words = 0;
    std::size_t rules = 0;
    std::size_t rules_used = 0;
    std::size_t rule_applications = 0;
    std::size_t default_applications = 0;
    std::size_t unmatched_words = 0;
    std::vector<std::size_t> rule_use;  // applications per rule index
    std::map<std::size_t, LengthStats> by_length;

    double percent_rules_used() const;
    double percent_default() const;
    double percent_oov() const;

    friend bool operator==(const TranslationStats&, const TranslationStats&) = default;
};

struct SentenceTranslation {
    Sentence output;
    std::vector<TraceEvent> trace;
};

struct CorpusTranslation {
    std::vector<Sentence> output;
    std::vector<std::vector<TraceEvent>> traces;
    TranslationStats stats;
};

/// Rule base + dictionary + lexicalized categories; immutable once built.
class TransferEngine {
  public:
    TransferEngine(std::vector<TransferRule> rules, const BilingualDictionary& dict, CategorySet lexicalized);

    SentenceTranslation translate(const Sentence& sentence) const;

    /// Sentences are independent; output and statistics do not depend on
    /// the thread count.
    CorpusTranslation translate_corpus(const std::vector<Sentence>& corpus, unsigned threads = 1) const;

    const std::vector<TransferRule>& rules() const { return rules_; }
    const PatternMatcher& matcher() const { return matcher_; }

  private:
    std::vector<TransferRule> rules_;
    PatternMatcher matcher_;
    const BilingualDictionary& dict_;
    CategorySet lexicalized_;
};

std::string_view to_string(Application a);

}  // namespace ruleinfer
