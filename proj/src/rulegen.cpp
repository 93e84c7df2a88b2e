#include "ruleinfer/rulegen.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "ruleinfer/error.hpp"
#include "template_text.hpp"

namespace ruleinfer {

namespace {

constexpr std::string_view kHeader = "ruleinfer-rules 1";

}  // namespace

std::vector<TransferRule> build_rules(const std::vector<CountedTemplate>& selected) {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::string> keys;
    std::vector<TransferRule> rules;
    for (const auto& t : selected) {
        auto key = render_classes(t.at.sl);
        auto [it, inserted] = index.try_emplace(key, rules.size());
        if (inserted) {
            rules.push_back({t.at.sl, {}});
            keys.push_back(key);
        }
        rules[it->second].candidates.push_back(t);
    }
    for (auto& r : rules) sort_counted(r.candidates);
    std::vector<std::size_t> order(rules.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rules[a].pattern.size() != rules[b].pattern.size()) return rules[a].pattern.size() > rules[b].pattern.size();
        return keys[a] < keys[b];
    });
    std::vector<TransferRule> out;
    out.reserve(rules.size());
    for (auto k : order) out.push_back(std::move(rules[k]));
    return out;
}

std::string serialize_rules(const std::vector<TransferRule>& rules, const RuleFileMetadata& metadata) {
    std::string out(kHeader);
    out += '\n';
    for (const auto& [key, value] : metadata) out += "# " + key + ": " + value + "\n";
    out += "# rules: " + std::to_string(rules.size()) + "\n";
    for (const auto& r : rules) {
        out += "rule " + render_classes(r.pattern) + "\n";
        for (const auto& c : r.candidates) out += "  at " + std::to_string(c.count) + " ||| " + canonical(c.at) + "\n";
        out += "  default\nend\n";
    }
    return out;
}

std::vector<TransferRule> parse_rules(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty() || lines[0] != kHeader) throw DataError("rule file line 1: expected header '" + std::string(kHeader) + "'");
    std::vector<TransferRule> rules;
    std::set<std::string> patterns;
    enum class State { Outside, InRule, AfterDefault } state = State::Outside;
    std::size_t rule_line = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::string_view line = lines[k];
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;
        line.remove_prefix(first);
        auto fail = [&](const std::string& what) -> DataError {
            return DataError("rule file line " + std::to_string(k + 1) + ": " + what);
        };
        try {
            if (line.starts_with("rule ")) {
                if (state != State::Outside) throw fail("'rule' inside an unterminated rule");
                detail::StreamLexer lex(line.substr(5));
                TransferRule r;
                r.pattern = detail::read_classes(lex);
                if (!lex.at_end()) throw ParseError("unexpected '|||' in pattern", lex.column() + 5);
                if (r.pattern.empty()) throw fail("empty pattern");
                if (!patterns.insert(render_classes(r.pattern)).second)
                    throw fail("duplicate pattern " + render_classes(r.pattern));
                rules.push_back(std::move(r));
                state = State::InRule;
                rule_line = k + 1;
            } else if (line.starts_with("at ")) {
                if (state != State::InRule) throw fail("'at' outside a rule or after 'default'");
                detail::StreamLexer lex(line.substr(3));
                lex.skip_space();
                auto count_text = lex.read_word();
                if (count_text.empty() || count_text.find_first_not_of("0123456789") != std::string::npos)
                    throw fail("expected a count after 'at'");
                detail::expect_separator(lex);
                auto t = detail::read_template_body(lex);
                lex.skip_space();
                if (!lex.at_end()) throw fail("trailing text after template");
                if (t.sl != rules.back().pattern) throw fail("candidate SL classes differ from the rule pattern");
                auto& cands = rules.back().candidates;
                CountedTemplate c{std::move(t), std::stoull(count_text)};
                if (!cands.empty()) {
                    const auto& prev = cands.back();
                    bool ordered = prev.count > c.count || (prev.count == c.count && canonical(prev.at) < canonical(c.at));
                    if (!ordered) throw fail("candidates not in (count desc, canonical) order");
                }
                cands.push_back(std::move(c));
            } else if (line == "default") {
                if (state != State::InRule) throw fail("'default' outside a rule");
                state = State::AfterDefault;
            } else if (line == "end") {
                if (state != State::AfterDefault) throw fail("'end' without a preceding 'default'");
                state = State::Outside;
            } else {
                throw fail("unrecognized line");
            }
        } catch (const ParseError& e) {
            throw fail(e.what());
        }
    }
    if (state != State::Outside) throw DataError("rule file line " + std::to_string(rule_line) + ": rule is not terminated");
    return rules;
}

RuleBaseSummary summarize(const std::vector<TransferRule>& rules) {
    RuleBaseSummary s;
    s.rules = rules.size();
    for (const auto& r : rules) {
        s.templates += r.candidates.size();
        ++s.rules_by_length[r.pattern.size()];
    }
    return s;
}

}  // namespace ruleinfer
