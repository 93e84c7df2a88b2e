#pragma once

#include <string>
#include <vector>

#include "ruleinfer/engine.hpp"
#include "ruleinfer/templates.hpp"

namespace ruleinfer {

// Every report has a plain-text form and a JSON twin. All of them are
// pure functions of their arguments.

/// Rules in serialized order; an empty rule base gives an empty string.
std::string report_rulebase(const std::vector<TransferRule>& rules);
std::string report_rulebase_json(const std::vector<TransferRule>& rules);

/// Rules generated/used, % used, % default applications and OOV %.
std::string report_statistics(const TranslationStats& stats);
std::string report_statistics_json(const TranslationStats& stats);

/// Rule count per pattern length as a text bar chart.
std::string report_length_histogram(const std::vector<TransferRule>& rules);
std::string report_length_histogram_json(const std::vector<TransferRule>& rules);

std::string report_discards(const LearnResult& result);
std::string report_discards_json(const LearnResult& result);

/// One block per sentence listing each segment and how it was translated.
std::string report_trace(const std::vector<Sentence>& source, const CorpusTranslation& translation,
                         const std::vector<TransferRule>& rules);

}  // namespace ruleinfer
