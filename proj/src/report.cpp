#include "ruleinfer/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace ruleinfer {

using nlohmann::ordered_json;

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string display_classes(const std::vector<WordClass>& classes) {
    std::string out;
    for (const auto& c : classes) {
        if (!out.empty()) out += ' ';
        out += display(c);
    }
    return out;
}

std::string display_alignment(const AlignmentMatrix& a) {
    std::string out;
    for (const auto& l : a.links()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(l.source + 1) + "-" + std::to_string(l.target + 1);
    }
    return out.empty() ? "(none)" : out;
}

std::string display_restrictions(const std::map<std::size_t, Restriction>& r) {
    if (r.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (const auto& [pos, restriction] : r) {
        if (!first) out += ", ";
        first = false;
        out += "w" + std::to_string(pos + 1) + " = " + to_string(restriction);
    }
    return out + "}";
}

ordered_json restrictions_json(const std::map<std::size_t, Restriction>& r) {
    ordered_json out = ordered_json::object();
    for (const auto& [pos, restriction] : r) out["w" + std::to_string(pos + 1)] = to_string(restriction);
    return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string display_sentence(const Sentence& s, std::size_t start, std::size_t length) {
    std::string out;
    for (std::size_t k = start; k < start + length && k < s.size(); ++k) {
        if (!out.empty()) out += ' ';
        out += render(s[k]);
    }
    return out;
}

}  // namespace

std::string report_rulebase(const std::vector<TransferRule>& rules) {
    if (rules.empty()) return {};
    std::ostringstream out;
    auto summary = summarize(rules);
    out << "rule base: " << summary.rules << " rules, " << summary.templates << " templates\n";
    out << "lexicalized words are shown as **lemma**-(tags)\n";
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const auto& rule = rules[r];
        out << "\nrule " << (r + 1) << ": " << display_classes(rule.pattern) << "\n";
        for (std::size_t c = 0; c < rule.candidates.size(); ++c) {
            const auto& at = rule.candidates[c].at;
            out << "  " << (c + 1) << ". [count " << rule.candidates[c].count << "] -> " << display_classes(at.tl)
                << "\n";
            out << "     alignment " << display_alignment(at.alignment) << "  R = "
                << display_restrictions(at.restrictions) << "\n";
        }
        out << "  " << (rule.candidates.size() + 1) << ". default: word-for-word\n";
    }
    return out.str();
}

std::string report_rulebase_json(const std::vector<TransferRule>& rules) {
    ordered_json out = ordered_json::array();
    for (const auto& rule : rules) {
        ordered_json r;
        r["pattern"] = render_classes(rule.pattern);
        r["display"] = display_classes(rule.pattern);
        ordered_json cands = ordered_json::array();
        for (const auto& c : rule.candidates) {
            ordered_json j;
            j["count"] = c.count;
            j["target"] = render_classes(c.at.tl);
            j["display"] = display_classes(c.at.tl);
            ordered_json links = ordered_json::array();
            for (const auto& l : c.at.alignment.links()) links.push_back({l.source, l.target});
            j["alignment"] = std::move(links);
            j["restrictions"] = restrictions_json(c.at.restrictions);
            j["canonical"] = canonical(c.at);
            cands.push_back(std::move(j));
        }
        r["candidates"] = std::move(cands);
        r["default"] = "word-for-word";
        out.push_back(std::move(r));
    }
    return dump(out);
}

std::string report_statistics(const TranslationStats& st) {
    std::ostringstream out;
    out << "sentences:              " << st.sentences << "\n";
    out << "words:                  " << st.words << "\n";
    out << "rules generated:        " << st.rules << "\n";
    out << "rules used:             " << st.rules_used << "\n";
    out << "% rules used:           " << fixed(st.percent_rules_used()) << "\n";
    out << "rule applications:      " << st.rule_applications << "\n";
    out << "default applications:   " << st.default_applications << "\n";
    out << "% word-for-word:        " << fixed(st.percent_default()) << "\n";
    out << "words outside rules:    " << st.unmatched_words << "\n";
    out << "OOV words:              " << st.oov_words << "\n";
    out << "% OOV:                  " << fixed(st.percent_oov()) << "\n";
    if (!st.by_length.empty()) {
        out << "\nlength  rules  used  applications  default\n";
        for (const auto& [len, ls] : st.by_length) {
            char line[96];
            std::snprintf(line, sizeof line, "%6zu %6zu %5zu %13zu %8zu\n", len, ls.rules, ls.rules_used,
                          ls.applications, ls.default_applications);
            out << line;
        }
    }
    return out.str();
}

std::string report_statistics_json(const TranslationStats& st) {
    ordered_json j;
    j["sentences"] = st.sentences;
    j["words"] = st.words;
    j["rules"] = st.rules;
    j["rules_used"] = st.rules_used;
    j["percent_rules_used"] = st.percent_rules_used();
    j["rule_applications"] = st.rule_applications;
    j["default_applications"] = st.default_applications;
    j["percent_default"] = st.percent_default();
    j["unmatched_words"] = st.unmatched_words;
    j["oov_words"] = st.oov_words;
    j["percent_oov"] = st.percent_oov();
    ordered_json lengths = ordered_json::array();
    for (const auto& [len, ls] : st.by_length) {
        lengths.push_back({{"length", len},
                           {"rules", ls.rules},
                           {"rules_used", ls.rules_used},
                           {"applications", ls.applications},
                           {"default_applications", ls.default_applications}});
    }
    j["by_length"] = std::move(lengths);
    j["rule_use"] = st.rule_use;
    return dump(j);
}

std::string report_length_histogram(const std::vector<TransferRule>& rules) {
    auto summary = summarize(rules);
    if (summary.rules_by_length.empty()) return {};
    std::size_t peak = 0;
    for (const auto& [len, n] : summary.rules_by_length) peak = std::max(peak, n);
    constexpr std::size_t kWidth = 50;
    std::ostringstream out;
    out << "rules by pattern length\n";
    for (const auto& [len, n] : summary.rules_by_length) {
        std::size_t bar = peak == 0 ? 0 : (n * kWidth + peak - 1) / peak;
        char head[48];
        std::snprintf(head, sizeof head, "%3zu %7zu ", len, n);
        out << head << std::string(bar, '#') << "\n";
    }
    return out.str();
}

std::string report_length_histogram_json(const std::vector<TransferRule>& rules) {
    ordered_json out = ordered_json::array();
    for (const auto& [len, n] : summarize(rules).rules_by_length) out.push_back({{"length", len}, {"rules", n}});
    return dump(out);
}

std::string report_discards(const LearnResult& result) {
    std::ostringstream out;
    std::size_t kept = 0;
    for (const auto& t : result.templates) kept += t.count;
    out << "phrase pairs extracted:          " << result.phrases << "\n";
    out << "generalized:                     " << kept << "\n";
    out << "distinct templates:              " << result.templates.size() << "\n";
    out << "discarded (unaligned word):      " << result.discarded_unaligned << "\n";
    out << "discarded (not reproducible):    " << result.discarded_unreproducible << "\n";
    out << "discarded total:                 " << result.discarded() << "\n";
    return out.str();
}

std::string report_discards_json(const LearnResult& result) {
    std::size_t kept = 0;
    for (const auto& t : result.templates) kept += t.count;
    ordered_json j;
    j["phrases"] = result.phrases;
    j["generalized"] = kept;
    j["distinct_templates"] = result.templates.size();
    j["discarded"] = {{std::string(to_string(DiscardReason::UnalignedNonLexicalized)), result.discarded_unaligned},
                      {std::string(to_string(DiscardReason::NotReproducible)), result.discarded_unreproducible}};
    j["discarded_total"] = result.discarded();
    return dump(j);
}

std::string report_trace(const std::vector<Sentence>& source, const CorpusTranslation& translation,
                         const std::vector<TransferRule>& rules) {
    std::ostringstream out;
    for (std::size_t s = 0; s < source.size() && s < translation.traces.size(); ++s) {
        out << "sentence " << (s + 1) << "\n";
        out << "  in:  " << format_analyzed_line(source[s]) << "\n";
        for (const auto& ev : translation.traces[s]) {
            out << "  [" << (ev.start + 1) << "+" << ev.length << "] " << display_sentence(source[s], ev.start, ev.length);
            switch (ev.applied) {
                case Application::NoRule: out << "  -> no rule (word-for-word)\n"; break;
                case Application::Default: out << "  -> rule " << (*ev.rule + 1) << " default\n"; break;
                case Application::Candidate:
                    out << "  -> rule " << (*ev.rule + 1) << " candidate " << (ev.candidate + 1) << " [count "
                        << rules[*ev.rule].candidates[ev.candidate].count << "]\n";
                    break;
            }
            for (const auto& f : ev.failures) out << "       rejected: " << f << "\n";
        }
        out << "  out: " << format_analyzed_line(translation.output[s]) << "\n";
    }
    return out.str();
}

}  // namespace ruleinfer
