#include "ruleinfer/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "ruleinfer/error.hpp"
#include "ruleinfer/parallel.hpp"
#include "random.hpp"

namespace ruleinfer {

Tokens tokenize(std::string_view line) {
    Tokens out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos > start) out.emplace_back(line.substr(start, pos - start));
    }
    return out;
}

Metric parse_metric(std::string_view name) {
    if (name == "bleu" || name == "BLEU") return Metric::Bleu;
    if (name == "ter" || name == "TER") return Metric::Ter;
    throw DataError("unknown metric '" + std::string(name) + "' (expected bleu or ter)");
}

std::string_view to_string(Metric m) { return m == Metric::Bleu ? "BLEU" : "TER"; }

// ---------------------------------------------------------------------------
// BLEU

SufficientStats bleu_stats(const Tokens& hyp, const Tokens& ref, std::size_t max_n) {
    SufficientStats s(2 * max_n + 2, 0.0);
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::map<std::vector<std::string>, std::size_t> ref_counts;
        for (std::size_t k = 0; k + n <= ref.size(); ++k)
            ++ref_counts[std::vector<std::string>(ref.begin() + static_cast<std::ptrdiff_t>(k),
                                                  ref.begin() + static_cast<std::ptrdiff_t>(k + n))];
        std::map<std::vector<std::string>, std::size_t> hyp_counts;
        for (std::size_t k = 0; k + n <= hyp.size(); ++k)
            ++hyp_counts[std::vector<std::string>(hyp.begin() + static_cast<std::ptrdiff_t>(k),
                                                  hyp.begin() + static_cast<std::ptrdiff_t>(k + n))];
        std::size_t matches = 0;
        for (const auto& [gram, c] : hyp_counts) {
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) matches += std::min(c, it->second);
        }
        s[2 * (n - 1)] = static_cast<double>(matches);
        s[2 * (n - 1) + 1] = static_cast<double>(hyp.size() >= n ? hyp.size() - n + 1 : 0);
    }
    s[2 * max_n] = static_cast<double>(hyp.size());
    s[2 * max_n + 1] = static_cast<double>(ref.size());
    return s;
}

namespace {

double bleu_from_stats(const SufficientStats& s) {
    std::size_t max_n = (s.size() - 2) / 2;
    double hyp_len = s[2 * max_n];
    double ref_len = s[2 * max_n + 1];
    if (hyp_len <= 0.0) return 0.0;
    // Orders the hypothesis is too short to have any n-gram for drop out
    // of the mean, so bleu(x, x) = 1 also for x shorter than max_n.
    double log_precision = 0.0;
    std::size_t orders = 0;
    for (std::size_t n = 0; n < max_n; ++n) {
        double matches = s[2 * n];
        double total = s[2 * n + 1];
        if (total <= 0.0) continue;
        if (matches <= 0.0) return 0.0;
        log_precision += std::log(matches / total);
        ++orders;
    }
    log_precision /= static_cast<double>(orders);
    double log_bp = hyp_len < ref_len ? 1.0 - ref_len / hyp_len : 0.0;
    return std::exp(log_precision + log_bp);
}

double ter_from_stats(const SufficientStats& s) {
    if (s[2] <= 0.0) return s[0] + s[1] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return (s[0] + s[1]) / s[2];
}

}  // namespace

double score_from_stats(Metric metric, const SufficientStats& stats) {
    return metric == Metric::Bleu ? bleu_from_stats(stats) : ter_from_stats(stats);
}

// ---------------------------------------------------------------------------
// TER

namespace {

enum class Op : unsigned char { Match, Sub, Del, Ins };

struct EditResult {
    std::size_t cost = 0;
    std::vector<Op> path;
};

EditResult edit_path(const Tokens& hyp, const Tokens& ref) {
    const std::size_t n = hyp.size(), m = ref.size();
    std::vector<std::size_t> d((n + 1) * (m + 1));
    auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * (m + 1) + j]; };
    for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
    for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t diag = at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
            at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
        }
    EditResult r;
    r.cost = at(n, m);
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1)) {
            r.path.push_back(hyp[i - 1] == ref[j - 1] ? Op::Match : Op::Sub);
            --i;
            --j;
        } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
            r.path.push_back(Op::Del);
            --i;
        } else {
            r.path.push_back(Op::Ins);
            --j;
        }
    }
    std::reverse(r.path.begin(), r.path.end());
    return r;
}

struct PathInfo {
    std::vector<bool> hyp_ok;     // hyp word matched
    std::vector<bool> ref_ok;     // ref word matched
    std::vector<std::size_t> ref_at;  // hyp position aligned to / inserted before ref word
};

PathInfo path_info(const std::vector<Op>& path, std::size_t n, std::size_t m) {
    PathInfo p{std::vector<bool>(n, false), std::vector<bool>(m, false), std::vector<std::size_t>(m, 0)};
    std::size_t hi = 0, ri = 0;
    for (Op op : path) {
        switch (op) {
            case Op::Match:
                p.hyp_ok[hi] = p.ref_ok[ri] = true;
                [[fallthrough]];
            case Op::Sub:
                p.ref_at[ri] = hi;
                ++hi;
                ++ri;
                break;
            case Op::Del:
                ++hi;
                break;
            case Op::Ins:
                p.ref_at[ri] = hi;
                ++ri;
                break;
        }
    }
    return p;
}

Tokens shifted(const Tokens& words, std::size_t start, std::size_t len, std::size_t insert_at) {
    Tokens block(words.begin() + static_cast<std::ptrdiff_t>(start), words.begin() + static_cast<std::ptrdiff_t>(start + len));
    Tokens rest;
    rest.reserve(words.size());
    rest.insert(rest.end(), words.begin(), words.begin() + static_cast<std::ptrdiff_t>(start));
    rest.insert(rest.end(), words.begin() + static_cast<std::ptrdiff_t>(start + len), words.end());
    std::size_t dest = insert_at > start ? insert_at - len : insert_at;
    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(dest), block.begin(), block.end());
    return rest;
}

}  // namespace

std::size_t edit_distance(const Tokens& hyp, const Tokens& ref) { return edit_path(hyp, ref).cost; }

SufficientStats ter_stats(const Tokens& hyp, const Tokens& ref) {
    Tokens current = hyp;
    std::size_t shifts = 0;
    EditResult ed = edit_path(current, ref);
    for (;;) {
        if (ed.cost == 0) break;
        const std::size_t n = current.size(), m = ref.size();
        PathInfo info = path_info(ed.path, n, m);
        std::size_t best_cost = ed.cost;
        Tokens best;
        EditResult best_ed;
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t len = 1; len <= kMaxShiftLength && s + len <= n; ++len) {
                bool hyp_err = false;
                for (std::size_t k = s; k < s + len; ++k) hyp_err = hyp_err || !info.hyp_ok[k];
                if (!hyp_err) continue;
                for (std::size_t r = 0; r + len <= m; ++r) {
                    if (!std::equal(current.begin() + static_cast<std::ptrdiff_t>(s),
                                    current.begin() + static_cast<std::ptrdiff_t>(s + len),
                                    ref.begin() + static_cast<std::ptrdiff_t>(r)))
                        continue;
                    bool ref_err = false;
                    for (std::size_t k = r; k < r + len; ++k) ref_err = ref_err || !info.ref_ok[k];
                    if (!ref_err) continue;
                    std::size_t anchor = info.ref_at[r];
                    for (std::size_t p = anchor == 0 ? 0 : anchor - 1; p <= std::min(anchor + 1, n); ++p) {
                        if (p >= s && p <= s + len) continue;  // no movement
                        Tokens cand = shifted(current, s, len, p);
                        EditResult cand_ed = edit_path(cand, ref);
                        if (cand_ed.cost < best_cost) {
                            best_cost = cand_ed.cost;
                            best = std::move(cand);
                            best_ed = std::move(cand_ed);
                        }
                    }
                }
            }
        }
        if (best_cost >= ed.cost) break;
        current = std::move(best);
        ed = std::move(best_ed);
        ++shifts;
    }
    return {static_cast<double>(ed.cost), static_cast<double>(shifts), static_cast<double>(ref.size())};
}

// ---------------------------------------------------------------------------
// Corpus scores

namespace {

void check_sizes(const TokenCorpus& hyp, const TokenCorpus& ref) {
    if (hyp.size() != ref.size())
        throw DataError("hypothesis has " + std::to_string(hyp.size()) + " sentences but reference has " +
                        std::to_string(ref.size()));
}

void add_into(SufficientStats& total, const SufficientStats& s) {
    if (total.empty()) total.assign(s.size(), 0.0);
    for (std::size_t k = 0; k < s.size(); ++k) total[k] += s[k];
}

}  // namespace

MetricScore bleu(const TokenCorpus& hyp, const TokenCorpus& ref, std::size_t max_n) {
    check_sizes(hyp, ref);
    if (max_n == 0) throw DataError("BLEU order must be positive");
    MetricScore out{Metric::Bleu, 0.0, SufficientStats(2 * max_n + 2, 0.0)};
    for (std::size_t k = 0; k < hyp.size(); ++k) add_into(out.stats, bleu_stats(hyp[k], ref[k], max_n));
    out.value = score_from_stats(Metric::Bleu, out.stats);
    return out;
}

MetricScore ter(const Tokens& hyp, const Tokens& ref) {
    if (ref.empty()) throw DataError("TER needs a non-empty reference");
    MetricScore out{Metric::Ter, 0.0, ter_stats(hyp, ref)};
    out.value = score_from_stats(Metric::Ter, out.stats);
    return out;
}

MetricScore corpus_ter(const TokenCorpus& hyp, const TokenCorpus& ref) {
    check_sizes(hyp, ref);
    MetricScore out{Metric::Ter, 0.0, SufficientStats(3, 0.0)};
    for (std::size_t k = 0; k < hyp.size(); ++k) add_into(out.stats, ter_stats(hyp[k], ref[k]));
    if (out.stats[2] <= 0.0) throw DataError("TER needs a non-empty reference corpus");
    out.value = score_from_stats(Metric::Ter, out.stats);
    return out;
}

MetricScore corpus_score(Metric metric, const TokenCorpus& hyp, const TokenCorpus& ref) {
    return metric == Metric::Bleu ? bleu(hyp, ref) : corpus_ter(hyp, ref);
}

// ---------------------------------------------------------------------------
// Bootstrap

std::size_t bootstrap_trim(std::size_t resamples, double q) {
    return static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples) / 100.0 + 1e-9));
}

ConfidenceInterval bootstrap_ci(const std::vector<SufficientStats>& sentence_stats,
                                const std::function<double(const SufficientStats&)>& scorer,
                                const BootstrapOptions& options) {
    if (options.resamples < 1) throw DataError("bootstrap needs at least one resample");
    if (options.q < 0.0 || options.q >= 50.0) throw DataError("bootstrap q must be in [0, 50)");
    if (sentence_stats.empty()) throw DataError("bootstrap needs a non-empty corpus");
    std::size_t trim = bootstrap_trim(options.resamples, options.q);
    if (2 * trim >= options.resamples) throw DataError("bootstrap trims every resample; lower q or add resamples");

    const std::size_t n = sentence_stats.size();
    std::vector<double> scores(options.resamples);
    parallel_for(options.resamples, options.threads, [&](std::size_t r) {
        std::mt19937_64 rng(detail::splitmix64(options.seed ^ detail::splitmix64(static_cast<std::uint64_t>(r))));
        SufficientStats total(sentence_stats.front().size(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& s = sentence_stats[detail::draw(rng, n)];
            for (std::size_t f = 0; f < s.size(); ++f) total[f] += s[f];
        }
        scores[r] = scorer(total);
    });
    std::sort(scores.begin(), scores.end());
    ConfidenceInterval ci;
    ci.lower = scores[trim];
    ci.upper = scores[options.resamples - trim - 1];
    ci.q = options.q;
    ci.level = 1.0 - 2.0 * options.q / 100.0;
    ci.resamples = options.resamples;
    ci.survivors = options.resamples - 2 * trim;
    ci.seed = options.seed;
    return ci;
}

ConfidenceInterval bootstrap_ci(Metric metric, const TokenCorpus& hyp, const TokenCorpus& ref,
                                const BootstrapOptions& options) {
    check_sizes(hyp, ref);
    std::vector<SufficientStats> stats(hyp.size());
    parallel_for(hyp.size(), options.threads, [&](std::size_t k) {
        stats[k] = metric == Metric::Bleu ? bleu_stats(hyp[k], ref[k]) : ter_stats(hyp[k], ref[k]);
    });
    return bootstrap_ci(stats, [metric](const SufficientStats& s) { return score_from_stats(metric, s); }, options);
}

}  // namespace ruleinfer
