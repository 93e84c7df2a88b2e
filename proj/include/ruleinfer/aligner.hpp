#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ruleinfer/corpus_io.hpp"

namespace ruleinfer {

/// One alignment point between target position `target` (i) and source
/// position `source` (j), both 0-based.
struct Link {
    std::size_t target = 0;
    std::size_t source = 0;

    friend auto operator<=>(const Link&, const Link&) = default;
};

class AlignmentMatrix {
  public:
    AlignmentMatrix() = default;
    AlignmentMatrix(std::size_t source_len, std::size_t target_len)
        : source_len_(source_len), target_len_(target_len) {}

    std::size_t source_len() const { return source_len_; }
    std::size_t target_len() const { return target_len_; }

    /// Throws DataError if the link is outside the matrix.
    void add(std::size_t target, std::size_t source);
    bool contains(std::size_t target, std::size_t source) const { return links_.contains({target, source}); }
    std::size_t size() const { return links_.size(); }
    bool empty() const { return links_.empty(); }

    /// Links in row-major (target, source) order.
    const std::set<Link>& links() const { return links_; }

    /// Swaps the roles of source and target.
    AlignmentMatrix transposed() const;

    friend bool operator==(const AlignmentMatrix&, const AlignmentMatrix&) = default;

  private:
    std::size_t source_len_ = 0;
    std::size_t target_len_ = 0;
    std::set<Link> links_;
};

/// IBM Model 1 parameters t(target key | source key). Keys are rendered
/// lexical forms; the NULL source word is addressed through null_prob().
class LexicalTranslationTable {
  public:
    struct Entry {
        std::string target_key;
        std::string source_key;  // empty for NULL
        double prob = 0.0;
    };

    /// Builds a table from explicit parameters (no normalization applied).
    /// Throws DataError on a repeated (target, source) pair.
    static LexicalTranslationTable from_entries(const std::vector<Entry>& entries, std::string direction = {});

    const std::string& direction() const { return direction_; }

    /// 0 when the pair never co-occurred in training.
    double prob(std::string_view target_key, std::string_view source_key) const;
    double null_prob(std::string_view target_key) const;

    /// Source keys in first-appearance order, NULL excluded.
    std::vector<std::string> source_keys() const;

    /// Σ_f t(f|e) for a source key; the empty key selects NULL.
    double source_mass(std::string_view source_key) const;
    /// Largest |Σ_f t(f|e) − 1| over all source words including NULL.
    double max_normalization_error() const;

    std::size_t entry_count() const { return entry_prob_.size(); }

    friend bool operator==(const LexicalTranslationTable&, const LexicalTranslationTable&) = default;

  private:
    friend class Ibm1Trainer;

    double lookup(std::uint32_t source_id, std::string_view target_key) const;
    std::ptrdiff_t find_entry(std::uint32_t source_id, std::uint32_t target_id) const;

    std::string direction_;
    std::vector<std::string> source_vocab_;  // id 0 is NULL
    std::vector<std::string> target_vocab_;
    std::unordered_map<std::string, std::uint32_t> source_index_;
    std::unordered_map<std::string, std::uint32_t> target_index_;
    std::vector<std::size_t> offsets_;  // source id -> first entry; size = vocab + 1
    std::vector<std::uint32_t> entry_target_;
    std::vector<double> entry_prob_;
};

/// Called with the iteration number (0 = initialization) and the table.
using Ibm1Observer = std::function<void(int, const LexicalTranslationTable&)>;

/// EM training from uniform initialization over each source word's
/// co-occurring target vocabulary. Results are bit-identical for any
/// thread count. Throws DataError on an empty corpus.
LexicalTranslationTable train_ibm1(const std::vector<SentencePair>& pairs, int iterations = 5,
                                   unsigned threads = 1, const Ibm1Observer& observer = {});

/// Σ over pairs and target words of log((1/(J+1)) Σ_j t(f_i | e_j)), e_0 = NULL.
double corpus_log_likelihood(const std::vector<SentencePair>& pairs, const LexicalTranslationTable& table);

/// Probability used for pairs never seen together in training.
inline constexpr double kUnseenProbability = 1e-12;

/// At most one link per target position; ties go to the lowest source
/// index and NULL wins only when strictly more probable.
AlignmentMatrix viterbi_align(const SentencePair& pair, const LexicalTranslationTable& table);

enum class Symmetrization { Intersection, Union, Refined };

Symmetrization parse_symmetrization(std::string_view name);
std::string_view to_string(Symmetrization method);

/// Both inputs share the (target, source) orientation.
AlignmentMatrix symmetrize(const AlignmentMatrix& forward, const AlignmentMatrix& backward, Symmetrization method);

struct AlignOptions {
    int iterations = 5;
    Symmetrization method = Symmetrization::Refined;
    unsigned threads = 1;
};

/// Trains both directions, computes Viterbi alignments and symmetrizes.
std::vector<AlignmentMatrix> align_corpus(const std::vector<SentencePair>& pairs, const AlignOptions& options = {});

/// One line per matrix: `j-i` links sorted by (j, i).
std::string export_alignments(const std::vector<AlignmentMatrix>& alignments);

/// Leading lines starting with '#' are treated as a header and skipped.
std::vector<AlignmentMatrix> import_alignments(std::string_view text, const std::vector<SentencePair>& pairs);

}  // namespace ruleinfer
