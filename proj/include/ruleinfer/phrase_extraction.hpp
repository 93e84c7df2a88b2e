#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "ruleinfer/aligner.hpp"

namespace ruleinfer {

/// A consistent, boundary-aligned pair of spans with its sub-alignment in
/// span-local coordinates.
struct BilingualPhrasePair {
    std::size_t source_start = 0;
    std::size_t target_start = 0;
    Sentence source;
    Sentence target;
    AlignmentMatrix alignment;  // local (target, source) links

    std::size_t source_len() const { return source.size(); }
    std::size_t target_len() const { return target.size(); }

    /// Canonical order: (source start, source len, target start, target len).
    friend bool operator<(const BilingualPhrasePair& a, const BilingualPhrasePair& b) {
        return std::tuple(a.source_start, a.source.size(), a.target_start, a.target.size()) <
               std::tuple(b.source_start, b.source.size(), b.target_start, b.target.size());
    }
    friend bool operator==(const BilingualPhrasePair&, const BilingualPhrasePair&) = default;
};

inline constexpr std::size_t kDefaultMaxSourceLength = 7;

/// Every phrase pair whose spans are closed under the alignment and whose
/// four boundary words are aligned, with at most `max_source_len` source
/// words. Output is in canonical order.
std::vector<BilingualPhrasePair> extract_phrases(const SentencePair& pair, const AlignmentMatrix& alignment,
                                                 std::size_t max_source_len = kDefaultMaxSourceLength);

/// `src_tokens ||| tgt_tokens ||| j-i links`
std::string format_phrase(const BilingualPhrasePair& phrase);

}  // namespace ruleinfer
