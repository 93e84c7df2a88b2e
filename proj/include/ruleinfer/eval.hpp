#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ruleinfer {

using Tokens = std::vector<std::string>;
using TokenCorpus = std::vector<Tokens>;

Tokens tokenize(std::string_view line);

enum class Metric { Bleu, Ter };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric m);

/// Additive per-sentence tallies. BLEU: matches_n, totals_n for n = 1..N,
/// then hypothesis length, reference length. TER: word edits, shifts,
/// reference length.
using SufficientStats = std::vector<double>;

struct MetricScore {
    Metric metric = Metric::Ter;
    double value = 0.0;
    SufficientStats stats;
};

/// Recomputes a score from (summed) tallies.
double score_from_stats(Metric metric, const SufficientStats& stats);

SufficientStats bleu_stats(const Tokens& hyp, const Tokens& ref, std::size_t max_n = 4);

/// Greedy block-shift TER tallies. Shifts move a hypothesis block of at most
/// kMaxShiftLength words that matches a reference span and is currently
/// misaligned; a shift is applied only when it lowers the edit distance.
SufficientStats ter_stats(const Tokens& hyp, const Tokens& ref);

inline constexpr std::size_t kMaxShiftLength = 10;

/// Plain word-level Levenshtein distance.
std::size_t edit_distance(const Tokens& hyp, const Tokens& ref);

/// Corpus BLEU from pooled n-gram counts, single reference, no smoothing.
MetricScore bleu(const TokenCorpus& hyp, const TokenCorpus& ref, std::size_t max_n = 4);

/// Sentence TER; throws DataError if `ref` is empty.
MetricScore ter(const Tokens& hyp, const Tokens& ref);

/// Total edits over total reference words.
MetricScore corpus_ter(const TokenCorpus& hyp, const TokenCorpus& ref);

MetricScore corpus_score(Metric metric, const TokenCorpus& hyp, const TokenCorpus& ref);

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;  // 1 - 2q/100
    double q = 2.5;
    std::size_t resamples = 0;
    std::size_t survivors = 0;
    std::uint64_t seed = 0;
};

struct BootstrapOptions {
    std::size_t resamples = 1000;
    double q = 2.5;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// Rescoring of `resamples` with-replacement samples of the sentence
/// stats; the top and bottom floor(q% · resamples) scores are dropped and
/// the interval spans the survivors. Deterministic for a given seed.
ConfidenceInterval bootstrap_ci(const std::vector<SufficientStats>& sentence_stats,
                                const std::function<double(const SufficientStats&)>& scorer,
                                const BootstrapOptions& options);

ConfidenceInterval bootstrap_ci(Metric metric, const TokenCorpus& hyp, const TokenCorpus& ref,
                                const BootstrapOptions& options);

/// Number of scores trimmed from each tail.
std::size_t bootstrap_trim(std::size_t resamples, double q);

}  // namespace ruleinfer
