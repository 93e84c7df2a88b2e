#include "ruleinfer/templates.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ruleinfer/error.hpp"
#include "ruleinfer/parallel.hpp"
#include "template_text.hpp"

namespace ruleinfer {

WordClass WordClass::morph(std::string category, std::vector<std::string> tags) {
    return {false, "", std::move(category), std::move(tags)};
}

WordClass WordClass::lexical(const LexicalForm& form) { return {true, form.lemma, form.category, form.inflection}; }

WordClass word_class(const LexicalForm& w, const CategorySet& lexicalized_cats) {
    if (is_lexicalized(w, lexicalized_cats)) return WordClass::lexical(w);
    return WordClass::morph(w.category, w.inflection);
}

std::string render(const WordClass& c) {
    if (c.lexicalized) return render(c.form());
    return render_tags(c.category, c.tags);
}

std::string display(const WordClass& c) {
    std::string tags = "(" + dotted(c.category, c.tags) + ")";
    if (!c.lexicalized) return tags;
    return "**" + c.lemma + "**-" + tags;
}

std::string render_classes(const std::vector<WordClass>& classes) {
    std::string out;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        if (k > 0) out += ' ';
        out += render(classes[k]);
    }
    return out;
}

std::string canonical(const ExtendedAlignmentTemplate& t) {
    std::string out = render_classes(t.sl);
    out += " ||| ";
    out += render_classes(t.tl);
    out += " |||";
    for (const auto& l : t.alignment.links()) out += " " + std::to_string(l.target) + "-" + std::to_string(l.source);
    out += " |||";
    for (const auto& [pos, r] : t.restrictions) out += " " + std::to_string(pos) + ":" + to_string(r);
    return out;
}

void validate(const ExtendedAlignmentTemplate& t) {
    if (t.sl.empty() || t.tl.empty()) throw DataError("template with an empty side");
    if (t.alignment.source_len() != t.sl.size() || t.alignment.target_len() != t.tl.size())
        throw DataError("template alignment dimensions do not match its word classes");
    std::vector<bool> sl_aligned(t.sl.size()), tl_aligned(t.tl.size());
    for (const auto& l : t.alignment.links()) sl_aligned[l.source] = tl_aligned[l.target] = true;
    for (std::size_t j = 0; j < t.sl.size(); ++j)
        if (!t.sl[j].lexicalized && !sl_aligned[j])
            throw DataError("template leaves non-lexicalized SL position " + std::to_string(j) + " unaligned");
    for (std::size_t i = 0; i < t.tl.size(); ++i)
        if (!t.tl[i].lexicalized && !tl_aligned[i])
            throw DataError("template leaves non-lexicalized TL position " + std::to_string(i) + " unaligned");
    for (const auto& [pos, r] : t.restrictions) {
        if (pos >= t.tl.size()) throw DataError("restriction on TL position " + std::to_string(pos) + " out of range");
        if (t.tl[pos].lexicalized)
            throw DataError("restriction on lexicalized TL position " + std::to_string(pos));
    }
}

std::string_view to_string(DiscardReason reason) {
    switch (reason) {
        case DiscardReason::UnalignedNonLexicalized: return "unaligned-non-lexicalized";
        case DiscardReason::NotReproducible: return "not-reproducible";
    }
    return "";
}

GeneralizeResult generalize(const BilingualPhrasePair& phrase, const CategorySet& lexicalized_cats,
                            const BilingualDictionary& dict) {
    ExtendedAlignmentTemplate t;
    t.alignment = phrase.alignment;
    std::vector<bool> sl_aligned(phrase.source.size()), tl_aligned(phrase.target.size());
    for (const auto& l : phrase.alignment.links()) sl_aligned[l.source] = tl_aligned[l.target] = true;

    std::vector<bool> sl_lex(phrase.source.size());
    for (std::size_t j = 0; j < phrase.source.size(); ++j) {
        t.sl.push_back(word_class(phrase.source[j], lexicalized_cats));
        sl_lex[j] = t.sl.back().lexicalized;
        if (!sl_lex[j] && !sl_aligned[j]) return DiscardReason::UnalignedNonLexicalized;
    }
    for (std::size_t i = 0; i < phrase.target.size(); ++i) {
        t.tl.push_back(word_class(phrase.target[i], lexicalized_cats));
        if (!t.tl.back().lexicalized && !tl_aligned[i]) return DiscardReason::UnalignedNonLexicalized;
    }
    if (!reproducible(dict, phrase, lexicalized_cats)) return DiscardReason::NotReproducible;

    for (std::size_t i = 0; i < t.tl.size(); ++i) {
        if (t.tl[i].lexicalized) continue;
        auto j = lemma_source(t.alignment, sl_lex, i);
        const DictEntry* entry = dict.match(phrase.source[*j]);
        t.restrictions.emplace(i, derive_restriction(*entry));
    }
    return t;
}

void sort_counted(std::vector<CountedTemplate>& counted) {
    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(counted.size());
    for (std::size_t k = 0; k < counted.size(); ++k) keys.emplace_back(canonical(counted[k].at), k);
    std::vector<std::size_t> order(counted.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (counted[a].count != counted[b].count) return counted[a].count > counted[b].count;
        return keys[a].first < keys[b].first;
    });
    std::vector<CountedTemplate> sorted;
    sorted.reserve(counted.size());
    for (auto k : order) sorted.push_back(std::move(counted[k]));
    counted = std::move(sorted);
}

namespace {

void accumulate(std::unordered_map<std::string, std::size_t>& index, std::vector<CountedTemplate>& out,
                const ExtendedAlignmentTemplate& t, std::size_t n) {
    auto [it, inserted] = index.try_emplace(canonical(t), out.size());
    if (inserted)
        out.push_back({t, n});
    else
        out[it->second].count += n;
}

}  // namespace

std::vector<CountedTemplate> count_templates(const std::vector<ExtendedAlignmentTemplate>& templates) {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<CountedTemplate> out;
    for (const auto& t : templates) accumulate(index, out, t, 1);
    sort_counted(out);
    return out;
}

SelectionMode parse_selection_mode(std::string_view name) {
    if (name == "raw") return SelectionMode::Raw;
    if (name == "length_scaled") return SelectionMode::LengthScaled;
    throw DataError("unknown selection mode '" + std::string(name) + "' (expected raw or length_scaled)");
}

std::string_view to_string(SelectionMode mode) {
    return mode == SelectionMode::Raw ? "raw" : "length_scaled";
}

double length_factor(std::size_t sl_length) { return 1.0 + std::log(static_cast<double>(sl_length)); }

double selection_score(const CountedTemplate& t, SelectionMode mode) {
    double c = static_cast<double>(t.count);
    if (mode == SelectionMode::Raw) return c;
    return c * length_factor(t.at.sl.size());
}

std::vector<CountedTemplate> select_templates(const std::vector<CountedTemplate>& counted, double threshold,
                                              SelectionMode mode) {
    if (threshold < 0) throw DataError("selection threshold must be non-negative");
    std::vector<CountedTemplate> out;
    for (const auto& t : counted)
        if (selection_score(t, mode) >= threshold) out.push_back(t);
    return out;
}

LearnResult learn_templates(const std::vector<SentencePair>& pairs, const std::vector<AlignmentMatrix>& alignments,
                            const BilingualDictionary& dict, const LearnOptions& options) {
    if (pairs.size() != alignments.size())
        throw DataError("corpus has " + std::to_string(pairs.size()) + " pairs but " +
                        std::to_string(alignments.size()) + " alignments were given");
    struct PerSentence {
        std::vector<ExtendedAlignmentTemplate> templates;
        std::size_t phrases = 0, unaligned = 0, unreproducible = 0;
    };
    std::vector<PerSentence> results(pairs.size());
    parallel_for(pairs.size(), options.threads, [&](std::size_t k) {
        auto& r = results[k];
        for (const auto& phrase : extract_phrases(pairs[k], alignments[k], options.max_source_len)) {
            ++r.phrases;
            auto g = generalize(phrase, options.lexicalized, dict);
            if (auto* t = std::get_if<ExtendedAlignmentTemplate>(&g)) {
                r.templates.push_back(std::move(*t));
            } else if (std::get<DiscardReason>(g) == DiscardReason::UnalignedNonLexicalized) {
                ++r.unaligned;
            } else {
                ++r.unreproducible;
            }
        }
    });
    LearnResult out;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& r : results) {
        out.phrases += r.phrases;
        out.discarded_unaligned += r.unaligned;
        out.discarded_unreproducible += r.unreproducible;
        for (const auto& t : r.templates) accumulate(index, out.templates, t, 1);
    }
    sort_counted(out.templates);
    return out;
}

// ---------------------------------------------------------------------------
// Dump format

std::string format_template_dump(const std::vector<CountedTemplate>& counted) {
    std::string out;
    for (const auto& t : counted) {
        out += std::to_string(t.count);
        out += " ||| ";
        out += canonical(t.at);
        out += '\n';
    }
    return out;
}

ExtendedAlignmentTemplate parse_canonical(std::string_view text) {
    detail::StreamLexer lex(text);
    auto t = detail::read_template_body(lex);
    lex.skip_space();
    if (!lex.at_end()) throw ParseError("trailing text after template", lex.column());
    return t;
}

std::vector<CountedTemplate> parse_template_dump(std::string_view text) {
    std::vector<CountedTemplate> out;
    auto lines = split_lines(text);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& line = lines[k];
        if (line.empty() || line.starts_with("#")) continue;
        try {
            detail::StreamLexer lex(line);
            lex.skip_space();
            auto count_text = lex.read_word();
            std::size_t count = 0;
            if (count_text.empty() || count_text.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("expected a count", 1);
            count = std::stoull(count_text);
            detail::expect_separator(lex);
            auto t = detail::read_template_body(lex);
            lex.skip_space();
            if (!lex.at_end()) throw ParseError("trailing text after template", lex.column());
            out.push_back({std::move(t), count});
        } catch (const DataError& e) {
            throw DataError("template dump line " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace ruleinfer
