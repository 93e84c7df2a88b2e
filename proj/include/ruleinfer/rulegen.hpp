#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ruleinfer/templates.hpp"

namespace ruleinfer {

/// All selected templates sharing one SL word-class sequence. The
/// word-for-word default is implicit and always ranks last.
struct TransferRule {
    std::vector<WordClass> pattern;
    std::vector<CountedTemplate> candidates;  // count desc, canonical asc

    friend bool operator==(const TransferRule&, const TransferRule&) = default;
};

/// One rule per distinct pattern, sorted by (pattern length desc, pattern text).
std::vector<TransferRule> build_rules(const std::vector<CountedTemplate>& selected);

/// Free-form `key: value` lines written as comments below the header.
using RuleFileMetadata = std::vector<std::pair<std::string, std::string>>;

std::string serialize_rules(const std::vector<TransferRule>& rules, const RuleFileMetadata& metadata = {});

/// Throws DataError with the offending line number; also rejects duplicate
/// patterns and candidates whose SL side differs from the rule pattern.
std::vector<TransferRule> parse_rules(std::string_view text);

struct RuleBaseSummary {
    std::size_t rules = 0;
    std::size_t templates = 0;
    std::map<std::size_t, std::size_t> rules_by_length;
};

RuleBaseSummary summarize(const std::vector<TransferRule>& rules);

}  // namespace ruleinfer
