#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ruleinfer/aligner.hpp"
#include "ruleinfer/engine.hpp"
#include "ruleinfer/eval.hpp"
#include "ruleinfer/fixture.hpp"
#include "ruleinfer/templates.hpp"

namespace ruleinfer {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Bad invocation or configuration (exit code 1). Data problems use DataError.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// plain: whitespace tokens; lexical: each analyzed form re-rendered
/// canonically; lemma: lemmas only (unknown words keep their `*`).
enum class TokenMode { Plain, Lexical, Lemma };

struct EvalConfig {
    Metric metric = Metric::Ter;
    std::size_t resamples = 1000;
    double q = 2.5;
    std::uint64_t seed = 1;
    TokenMode tokens = TokenMode::Plain;
};

struct RunConfig {
    std::filesystem::path train_source;
    std::filesystem::path train_target;
    std::filesystem::path dictionary;
    CategorySet lexicalized;
    std::size_t max_source_len = kDefaultMaxSourceLength;
    int em_iterations = 5;
    Symmetrization symmetrization = Symmetrization::Refined;
    std::filesystem::path alignments;  // import instead of training when set
    SelectionMode selection = SelectionMode::Raw;
    double threshold = 5;
    std::vector<double> sweep;
    std::filesystem::path dev_source;
    std::filesystem::path dev_reference;
    std::filesystem::path test_source;
    std::filesystem::path test_reference;
    std::filesystem::path hypothesis;  // evaluate this file instead of translation.txt
    EvalConfig eval;
    unsigned threads = 1;
    std::filesystem::path output_dir = "out";
};

/// Parses a JSON config; relative paths resolve against `base_dir`.
/// Unknown keys and bad values raise UsageError.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& file);

/// Canonical JSON form (paths as given, output_dir included).
std::string config_to_json(const RunConfig& config);

/// FNV-1a over the canonical JSON without output_dir, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// `5..40`, `5..40:5` or `1,2,8`.
std::vector<double> parse_sweep(std::string_view text);

// Fixed artifact names under output_dir.
namespace artifact {
inline constexpr std::string_view kAlignments = "alignments.txt";
inline constexpr std::string_view kPhrases = "phrases.txt";
inline constexpr std::string_view kTemplates = "templates.txt";
inline constexpr std::string_view kDiscards = "discards.txt";
inline constexpr std::string_view kDiscardsJson = "discards.json";
inline constexpr std::string_view kRules = "rules.txt";
inline constexpr std::string_view kRuleReport = "rulebase-report.txt";
inline constexpr std::string_view kRuleReportJson = "rulebase-report.json";
inline constexpr std::string_view kHistogram = "rule-lengths.txt";
inline constexpr std::string_view kHistogramJson = "rule-lengths.json";
inline constexpr std::string_view kTranslation = "translation.txt";
inline constexpr std::string_view kStats = "stats.txt";
inline constexpr std::string_view kStatsJson = "stats.json";
inline constexpr std::string_view kTrace = "trace.txt";
inline constexpr std::string_view kEval = "eval.txt";
inline constexpr std::string_view kEvalJson = "eval.json";
inline constexpr std::string_view kSweep = "sweep.txt";
inline constexpr std::string_view kSweepJson = "sweep.json";
}  // namespace artifact

/// `rules-t<threshold>.txt`
std::string rules_file_name(double threshold);

/// `# ruleinfer <version>` and `# config <hash>` lines.
std::string artifact_header(const RunConfig& config);

void cmd_align(const RunConfig& config);
void cmd_extract(const RunConfig& config);
LearnResult cmd_learn(const RunConfig& config);
/// Writes rules.txt for the configured threshold, plus rules-t<N>.txt for
/// every threshold of the sweep list when one is given.
void cmd_genrules(const RunConfig& config);
TranslationStats cmd_translate(const RunConfig& config);

struct EvalReport {
    MetricScore score;
    ConfidenceInterval interval;
    std::optional<MetricScore> baseline;  // word-for-word, when the source is known
};
EvalReport cmd_evaluate(const RunConfig& config);

struct SweepRow {
    double threshold = 0;
    double ter = 0;
    double bleu = 0;
    std::size_t rules = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double best_threshold = 0;
};

/// Scores every threshold on the development corpus; the lowest TER wins,
/// ties going to the smaller threshold.
SweepResult cmd_sweep(const RunConfig& config);

/// align, learn, [sweep], genrules, translate, evaluate. Returns the
/// threshold that was used.
double cmd_run(const RunConfig& config);

/// Writes train/dev/test splits, the dictionary and a config.json for
/// them into `dir`; returns the config as written.
RunConfig write_fixture(const std::filesystem::path& dir, const FixtureOptions& train, std::size_t dev_sentences,
                        std::size_t test_sentences);

/// Scores a plain corpus of rendered lines.
TokenCorpus tokenize_corpus(const std::vector<std::string>& lines, TokenMode mode);

}  // namespace ruleinfer
