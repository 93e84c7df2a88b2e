#include "ruleinfer/phrase_extraction.hpp"

#include <algorithm>
#include <limits>

#include "ruleinfer/error.hpp"

namespace ruleinfer {

std::vector<BilingualPhrasePair> extract_phrases(const SentencePair& pair, const AlignmentMatrix& alignment,
                                                 std::size_t max_source_len) {
    const std::size_t J = pair.source.size();
    const std::size_t I = pair.target.size();
    if (alignment.source_len() != J || alignment.target_len() != I)
        throw DataError("alignment dimensions do not match the sentence pair");

    std::vector<std::vector<std::size_t>> by_source(J);
    std::vector<std::vector<std::size_t>> by_target(I);
    for (const auto& l : alignment.links()) {
        by_source[l.source].push_back(l.target);
        by_target[l.target].push_back(l.source);
    }

    std::vector<BilingualPhrasePair> out;
    for (std::size_t j1 = 0; j1 < J; ++j1) {
        if (by_source[j1].empty()) continue;
        std::size_t tmin = std::numeric_limits<std::size_t>::max();
        std::size_t tmax = 0;
        for (std::size_t j2 = j1; j2 < J && j2 - j1 + 1 <= max_source_len; ++j2) {
            for (auto i : by_source[j2]) {
                tmin = std::min(tmin, i);
                tmax = std::max(tmax, i);
            }
            if (by_source[j2].empty()) continue;
            // The target span is forced to [tmin, tmax]: any wider span would
            // start or end on a word aligned outside the source span or not at all.
            bool consistent = true;
            for (std::size_t i = tmin; i <= tmax && consistent; ++i)
                for (auto j : by_target[i])
                    if (j < j1 || j > j2) {
                        consistent = false;
                        break;
                    }
            if (!consistent) continue;

            BilingualPhrasePair phrase;
            phrase.source_start = j1;
            phrase.target_start = tmin;
            phrase.source.assign(pair.source.begin() + static_cast<std::ptrdiff_t>(j1),
                                 pair.source.begin() + static_cast<std::ptrdiff_t>(j2 + 1));
            phrase.target.assign(pair.target.begin() + static_cast<std::ptrdiff_t>(tmin),
                                 pair.target.begin() + static_cast<std::ptrdiff_t>(tmax + 1));
            phrase.alignment = AlignmentMatrix(j2 - j1 + 1, tmax - tmin + 1);
            for (const auto& l : alignment.links())
                if (l.source >= j1 && l.source <= j2) phrase.alignment.add(l.target - tmin, l.source - j1);
            out.push_back(std::move(phrase));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_phrase(const BilingualPhrasePair& phrase) {
    std::string out = format_analyzed_line(phrase.source);
    out += " ||| ";
    out += format_analyzed_line(phrase.target);
    out += " |||";
    std::vector<std::pair<std::size_t, std::size_t>> sj;
    for (const auto& l : phrase.alignment.links()) sj.emplace_back(l.source, l.target);
    std::sort(sj.begin(), sj.end());
    for (const auto& [j, i] : sj) out += " " + std::to_string(j) + "-" + std::to_string(i);
    return out;
}

}  // namespace ruleinfer
