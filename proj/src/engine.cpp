#include "ruleinfer/engine.hpp"

#include <stdexcept>

#include "ruleinfer/error.hpp"
#include "ruleinfer/parallel.hpp"

namespace ruleinfer {

PatternMatcher::PatternMatcher(const std::vector<TransferRule>& rules) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
        std::size_t node = 0;
        for (const auto& c : rules[r].pattern) {
            auto key = render(c);
            auto it = nodes_[node].children.find(key);
            if (it == nodes_[node].children.end()) {
                nodes_.emplace_back();
                it = nodes_[node].children.emplace(std::move(key), nodes_.size() - 1).first;
            }
            node = it->second;
        }
        if (nodes_[node].rule)
            throw DataError("two rules share the pattern " + render_classes(rules[r].pattern));
        nodes_[node].rule = r;
        max_length_ = std::max(max_length_, rules[r].pattern.size());
    }
}

std::optional<std::size_t> PatternMatcher::lookup(const std::vector<WordClass>& pattern) const {
    std::size_t node = 0;
    for (const auto& c : pattern) {
        auto it = nodes_[node].children.find(render(c));
        if (it == nodes_[node].children.end()) return std::nullopt;
        node = it->second;
    }
    return nodes_[node].rule;
}

std::optional<std::pair<std::size_t, std::size_t>> PatternMatcher::longest(const std::vector<std::string>& keys,
                                                                           std::size_t start) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t node = 0;
    for (std::size_t k = start; k < keys.size(); ++k) {
        if (keys[k].empty()) break;
        auto it = nodes_[node].children.find(keys[k]);
        if (it == nodes_[node].children.end()) break;
        node = it->second;
        if (nodes_[node].rule) best = std::make_pair(k - start + 1, *nodes_[node].rule);
    }
    return best;
}

std::vector<MatchSpan> match_sentence(const PatternMatcher& matcher, const Sentence& sentence,
                                      const CategorySet& lexicalized_cats, const BilingualDictionary* dict) {
    // An empty key never matches: used for words that cannot be translated.
    std::vector<std::string> keys;
    keys.reserve(sentence.size());
    for (const auto& w : sentence) {
        bool blocked = w.unknown || (dict != nullptr && dict->match(w) == nullptr);
        keys.push_back(blocked ? std::string() : render(word_class(w, lexicalized_cats)));
    }
    std::vector<MatchSpan> spans;
    std::size_t pos = 0;
    while (pos < sentence.size()) {
        if (auto m = matcher.longest(keys, pos)) {
            spans.push_back({pos, m->first, m->second});
            pos += m->first;
        } else {
            spans.push_back({pos, 1, std::nullopt});
            ++pos;
        }
    }
    return spans;
}

Sentence word_for_word(const Sentence& sl_words, const BilingualDictionary& dict) {
    Sentence out;
    out.reserve(sl_words.size());
    for (const auto& w : sl_words) {
        if (auto t = dict.lookup(w)) {
            out.push_back(t->form());
        } else {
            LexicalForm copy = w;
            copy.unknown = true;
            out.push_back(std::move(copy));
        }
    }
    return out;
}

namespace {

std::vector<bool> sl_lexicalized(const ExtendedAlignmentTemplate& t) {
    std::vector<bool> lex(t.sl.size());
    for (std::size_t j = 0; j < t.sl.size(); ++j) lex[j] = t.sl[j].lexicalized;
    return lex;
}

}  // namespace

std::optional<std::string> check_applicable(const ExtendedAlignmentTemplate& t, const Sentence& sl_words,
                                            const BilingualDictionary& dict) {
    if (sl_words.size() != t.sl.size()) return "span length differs from the template";
    auto lex = sl_lexicalized(t);
    for (std::size_t i = 0; i < t.tl.size(); ++i) {
        if (t.tl[i].lexicalized) continue;
        std::string pos = "w" + std::to_string(i + 1);
        auto j = lemma_source(t.alignment, lex, i);
        if (!j) return pos + ": unaligned";
        auto tr = dict.lookup(sl_words[*j]);
        if (!tr) return pos + ": no translation for " + render(sl_words[*j]);
        auto r = t.restrictions.find(i);
        if (r != t.restrictions.end() && !restriction_satisfied(r->second, tr->category, tr->tags))
            return pos + " = " + to_string(r->second) + " not met by " + dotted(tr->category, tr->tags);
    }
    return std::nullopt;
}

Sentence apply_template(const ExtendedAlignmentTemplate& t, const Sentence& sl_words, const BilingualDictionary& dict) {
    auto lex = sl_lexicalized(t);
    Sentence out;
    out.reserve(t.tl.size());
    for (std::size_t i = 0; i < t.tl.size(); ++i) {
        const auto& c = t.tl[i];
        if (c.lexicalized) {
            out.push_back(c.form());
            continue;
        }
        auto j = lemma_source(t.alignment, lex, i);
        if (!j) throw std::logic_error("template TL position " + std::to_string(i) + " is unaligned");
        auto tr = dict.lookup(sl_words.at(*j));
        if (!tr) throw std::logic_error("no dictionary translation for " + render(sl_words[*j]));
        out.push_back({tr->lemma, c.category, c.tags, false});
    }
    return out;
}

std::pair<Sentence, TraceEvent> apply_rule(const TransferRule& rule, const Sentence& sl_words,
                                           const BilingualDictionary& dict) {
    TraceEvent ev;
    ev.length = sl_words.size();
    for (std::size_t k = 0; k < rule.candidates.size(); ++k) {
        const auto& t = rule.candidates[k].at;
        if (auto why = check_applicable(t, sl_words, dict)) {
            ev.failures.push_back(std::move(*why));
            continue;
        }
        ev.applied = Application::Candidate;
        ev.candidate = k;
        return {apply_template(t, sl_words, dict), std::move(ev)};
    }
    ev.applied = Application::Default;
    return {word_for_word(sl_words, dict), std::move(ev)};
}

std::string_view to_string(Application a) {
    switch (a) {
        case Application::Candidate: return "template";
        case Application::Default: return "default";
        case Application::NoRule: return "no-rule";
    }
    return "";
}

// ---------------------------------------------------------------------------

namespace {

double percent(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

double TranslationStats::percent_rules_used() const { return percent(rules_used, rules); }
double TranslationStats::percent_default() const { return percent(default_applications, rule_applications); }
double TranslationStats::percent_oov() const { return percent(oov_words, words); }

TransferEngine::TransferEngine(std::vector<TransferRule> rules, const BilingualDictionary& dict, CategorySet lexicalized)
    : rules_(std::move(rules)), matcher_(rules_), dict_(dict), lexicalized_(std::move(lexicalized)) {}

SentenceTranslation TransferEngine::translate(const Sentence& sentence) const {
    SentenceTranslation out;
    for (const auto& span : match_sentence(matcher_, sentence, lexicalized_, &dict_)) {
        Sentence words(sentence.begin() + static_cast<std::ptrdiff_t>(span.start),
                       sentence.begin() + static_cast<std::ptrdiff_t>(span.start + span.length));
        Sentence produced;
        TraceEvent ev;
        if (span.rule) {
            std::tie(produced, ev) = apply_rule(rules_[*span.rule], words, dict_);
            ev.rule = span.rule;
        } else {
            produced = word_for_word(words, dict_);
            ev.applied = Application::NoRule;
            ev.length = span.length;
        }
        ev.start = span.start;
        out.output.insert(out.output.end(), produced.begin(), produced.end());
        out.trace.push_back(std::move(ev));
    }
    return out;
}

CorpusTranslation TransferEngine::translate_corpus(const std::vector<Sentence>& corpus, unsigned threads) const {
    std::vector<SentenceTranslation> results(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t k) { results[k] = translate(corpus[k]); });

    CorpusTranslation out;
    auto& st = out.stats;
    st.sentences = corpus.size();
    st.rules = rules_.size();
    st.rule_use.assign(rules_.size(), 0);
    for (const auto& r : rules_) ++st.by_length[r.pattern.size()].rules;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        st.words += corpus[k].size();
        for (const auto& w : corpus[k])
            if (w.unknown || !dict_.match(w)) ++st.oov_words;
        for (const auto& ev : results[k].trace) {
            if (!ev.rule) {
                ++st.unmatched_words;
                continue;
            }
            ++st.rule_applications;
            ++st.rule_use[*ev.rule];
            auto& ls = st.by_length[ev.length];
            ++ls.applications;
            if (ev.applied == Application::Default) {
                ++st.default_applications;
                ++ls.default_applications;
            }
        }
        out.output.push_back(std::move(results[k].output));
        out.traces.push_back(std::move(results[k].trace));
    }
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        if (st.rule_use[r] == 0) continue;
        ++st.rules_used;
        ++st.by_length[rules_[r].pattern.size()].rules_used;
    }
    return out;
}

}  // namespace ruleinfer
