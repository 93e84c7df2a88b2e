#include "ruleinfer/aligner.hpp"

#include <algorithm>
#include <cmath>

#include "ruleinfer/error.hpp"
#include "ruleinfer/parallel.hpp"

namespace ruleinfer {

void AlignmentMatrix::add(std::size_t target, std::size_t source) {
    if (target >= target_len_ || source >= source_len_)
        throw DataError("alignment link " + std::to_string(source) + "-" + std::to_string(target) +
                        " outside a " + std::to_string(source_len_) + "x" + std::to_string(target_len_) +
                        " (source x target) sentence pair");
    links_.insert({target, source});
}

AlignmentMatrix AlignmentMatrix::transposed() const {
    AlignmentMatrix out(target_len_, source_len_);
    for (const auto& l : links_) out.links_.insert({l.source, l.target});
    return out;
}

// ---------------------------------------------------------------------------
// Lexical translation table

std::ptrdiff_t LexicalTranslationTable::find_entry(std::uint32_t source_id, std::uint32_t target_id) const {
    auto first = entry_target_.begin() + static_cast<std::ptrdiff_t>(offsets_[source_id]);
    auto last = entry_target_.begin() + static_cast<std::ptrdiff_t>(offsets_[source_id + 1]);
    auto it = std::lower_bound(first, last, target_id);
    if (it == last || *it != target_id) return -1;
    return it - entry_target_.begin();
}

double LexicalTranslationTable::lookup(std::uint32_t source_id, std::string_view target_key) const {
    auto t = target_index_.find(std::string(target_key));
    if (t == target_index_.end()) return 0.0;
    auto e = find_entry(source_id, t->second);
    return e < 0 ? 0.0 : entry_prob_[static_cast<std::size_t>(e)];
}

double LexicalTranslationTable::prob(std::string_view target_key, std::string_view source_key) const {
    auto s = source_index_.find(std::string(source_key));
    if (s == source_index_.end()) return 0.0;
    return lookup(s->second, target_key);
}

double LexicalTranslationTable::null_prob(std::string_view target_key) const {
    if (source_vocab_.empty()) return 0.0;
    return lookup(0, target_key);
}

LexicalTranslationTable LexicalTranslationTable::from_entries(const std::vector<Entry>& entries,
                                                              std::string direction) {
    LexicalTranslationTable t;
    t.direction_ = std::move(direction);
    t.source_vocab_.push_back("");
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(1);
    for (const auto& e : entries) {
        std::uint32_t sid = 0;
        if (!e.source_key.empty()) {
            auto [it, inserted] = t.source_index_.try_emplace(e.source_key, static_cast<std::uint32_t>(t.source_vocab_.size()));
            if (inserted) {
                t.source_vocab_.push_back(e.source_key);
                rows.emplace_back();
            }
            sid = it->second;
        }
        auto [it, inserted] = t.target_index_.try_emplace(e.target_key, static_cast<std::uint32_t>(t.target_vocab_.size()));
        if (inserted) t.target_vocab_.push_back(e.target_key);
        rows[sid].emplace_back(it->second, e.prob);
    }
    t.offsets_.assign(rows.size() + 1, 0);
    for (std::size_t id = 0; id < rows.size(); ++id) {
        auto& row = rows[id];
        std::sort(row.begin(), row.end());
        for (std::size_t k = 1; k < row.size(); ++k)
            if (row[k].first == row[k - 1].first)
                throw DataError("repeated table entry for target '" + t.target_vocab_[row[k].first] + "'");
        t.offsets_[id + 1] = t.offsets_[id] + row.size();
        for (const auto& [target, prob] : row) {
            t.entry_target_.push_back(target);
            t.entry_prob_.push_back(prob);
        }
    }
    return t;
}

std::vector<std::string> LexicalTranslationTable::source_keys() const {
    if (source_vocab_.empty()) return {};
    return {source_vocab_.begin() + 1, source_vocab_.end()};
}

double LexicalTranslationTable::source_mass(std::string_view source_key) const {
    std::uint32_t id = 0;
    if (!source_key.empty()) {
        auto s = source_index_.find(std::string(source_key));
        if (s == source_index_.end()) return 0.0;
        id = s->second;
    }
    double sum = 0.0;
    for (std::size_t e = offsets_[id]; e < offsets_[id + 1]; ++e) sum += entry_prob_[e];
    return sum;
}

double LexicalTranslationTable::max_normalization_error() const {
    double worst = 0.0;
    for (std::size_t id = 0; id + 1 < offsets_.size(); ++id) {
        double sum = 0.0;
        for (std::size_t e = offsets_[id]; e < offsets_[id + 1]; ++e) sum += entry_prob_[e];
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// EM training

namespace {

// Count accumulation is split into a fixed number of corpus chunks, reduced
// in chunk order, so the floating-point sums do not depend on thread count.
constexpr std::size_t kChunks = 16;

}  // namespace

class Ibm1Trainer {
  public:
    Ibm1Trainer(const std::vector<SentencePair>& pairs, unsigned threads) : threads_(threads) {
        auto& t = table_;
        t.direction_ = "source->target";
        t.source_vocab_.push_back("");
        std::vector<std::vector<std::uint32_t>> cooc(1);
        sentences_.reserve(pairs.size());
        for (const auto& pair : pairs) {
            Encoded enc;
            enc.source.push_back(0);
            for (const auto& w : pair.source) {
                auto key = render(w);
                auto [it, inserted] = t.source_index_.try_emplace(key, static_cast<std::uint32_t>(t.source_vocab_.size()));
                if (inserted) {
                    t.source_vocab_.push_back(key);
                    cooc.emplace_back();
                }
                enc.source.push_back(it->second);
            }
            for (const auto& w : pair.target) {
                auto key = render(w);
                auto [it, inserted] = t.target_index_.try_emplace(key, static_cast<std::uint32_t>(t.target_vocab_.size()));
                if (inserted) t.target_vocab_.push_back(key);
                enc.target.push_back(it->second);
            }
            for (auto e : enc.source)
                for (auto f : enc.target) cooc[e].push_back(f);
            sentences_.push_back(std::move(enc));
        }
        t.offsets_.assign(cooc.size() + 1, 0);
        for (std::size_t e = 0; e < cooc.size(); ++e) {
            auto& v = cooc[e];
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            t.offsets_[e + 1] = t.offsets_[e] + v.size();
            t.entry_target_.insert(t.entry_target_.end(), v.begin(), v.end());
            double uniform = v.empty() ? 0.0 : 1.0 / static_cast<double>(v.size());
            t.entry_prob_.insert(t.entry_prob_.end(), v.size(), uniform);
        }
        // Entry index of t(f_i | e_j) for every sentence, row-major by i.
        for (auto& enc : sentences_) {
            enc.entries.reserve(enc.target.size() * enc.source.size());
            for (auto f : enc.target)
                for (auto e : enc.source) enc.entries.push_back(static_cast<std::size_t>(t.find_entry(e, f)));
        }
    }

    void iterate() {
        auto& t = table_;
        std::size_t nnz = t.entry_prob_.size();
        std::size_t chunks = std::min(kChunks, sentences_.size());
        std::vector<std::vector<double>> partial(chunks, std::vector<double>(nnz, 0.0));
        parallel_for(chunks, threads_, [&](std::size_t c) {
            auto& counts = partial[c];
            std::size_t begin = sentences_.size() * c / chunks;
            std::size_t end = sentences_.size() * (c + 1) / chunks;
            for (std::size_t s = begin; s < end; ++s) {
                const auto& enc = sentences_[s];
                std::size_t width = enc.source.size();
                for (std::size_t i = 0; i < enc.target.size(); ++i) {
                    const std::size_t* row = enc.entries.data() + i * width;
                    double denom = 0.0;
                    for (std::size_t j = 0; j < width; ++j) denom += t.entry_prob_[row[j]];
                    if (denom <= 0.0) continue;
                    for (std::size_t j = 0; j < width; ++j) counts[row[j]] += t.entry_prob_[row[j]] / denom;
                }
            }
        });
        std::vector<double> counts(nnz, 0.0);
        for (const auto& p : partial)
            for (std::size_t e = 0; e < nnz; ++e) counts[e] += p[e];
        for (std::size_t id = 0; id + 1 < t.offsets_.size(); ++id) {
            double total = 0.0;
            for (std::size_t e = t.offsets_[id]; e < t.offsets_[id + 1]; ++e) total += counts[e];
            if (total <= 0.0) continue;
            for (std::size_t e = t.offsets_[id]; e < t.offsets_[id + 1]; ++e) t.entry_prob_[e] = counts[e] / total;
        }
    }

    const LexicalTranslationTable& table() const { return table_; }
    LexicalTranslationTable release() { return std::move(table_); }

  private:
    struct Encoded {
        std::vector<std::uint32_t> source;  // [0] is NULL
        std::vector<std::uint32_t> target;
        std::vector<std::size_t> entries;
    };

    unsigned threads_;
    LexicalTranslationTable table_;
    std::vector<Encoded> sentences_;
};

LexicalTranslationTable train_ibm1(const std::vector<SentencePair>& pairs, int iterations, unsigned threads,
                                   const Ibm1Observer& observer) {
    if (pairs.empty()) throw DataError("cannot train IBM Model 1 on an empty corpus");
    if (iterations < 0) throw DataError("iteration count must be non-negative");
    Ibm1Trainer trainer(pairs, threads);
    if (observer) observer(0, trainer.table());
    for (int it = 1; it <= iterations; ++it) {
        trainer.iterate();
        if (observer) observer(it, trainer.table());
    }
    return trainer.release();
}

double corpus_log_likelihood(const std::vector<SentencePair>& pairs, const LexicalTranslationTable& table) {
    double ll = 0.0;
    for (const auto& pair : pairs) {
        std::vector<std::string> source_keys;
        for (const auto& w : pair.source) source_keys.push_back(render(w));
        double norm = std::log(static_cast<double>(pair.source.size() + 1));
        for (const auto& w : pair.target) {
            auto f = render(w);
            double sum = table.null_prob(f);
            for (const auto& e : source_keys) sum += table.prob(f, e);
            ll += std::log(std::max(sum, kUnseenProbability)) - norm;
        }
    }
    return ll;
}

// ---------------------------------------------------------------------------
// Viterbi alignment and symmetrization

AlignmentMatrix viterbi_align(const SentencePair& pair, const LexicalTranslationTable& table) {
    AlignmentMatrix a(pair.source.size(), pair.target.size());
    std::vector<std::string> source_keys;
    for (const auto& w : pair.source) source_keys.push_back(render(w));
    for (std::size_t i = 0; i < pair.target.size(); ++i) {
        auto f = render(pair.target[i]);
        double best = -1.0;
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < source_keys.size(); ++j) {
            double p = std::max(table.prob(f, source_keys[j]), kUnseenProbability);
            if (p > best) {
                best = p;
                best_j = j;
            }
        }
        double null_p = std::max(table.null_prob(f), kUnseenProbability);
        if (source_keys.empty() || null_p > best) continue;
        a.add(i, best_j);
    }
    return a;
}

Symmetrization parse_symmetrization(std::string_view name) {
    if (name == "intersection") return Symmetrization::Intersection;
    if (name == "union") return Symmetrization::Union;
    if (name == "refined") return Symmetrization::Refined;
    throw DataError("unknown symmetrization method '" + std::string(name) + "'");
}

std::string_view to_string(Symmetrization method) {
    switch (method) {
        case Symmetrization::Intersection: return "intersection";
        case Symmetrization::Union: return "union";
        case Symmetrization::Refined: return "refined";
    }
    return "refined";
}

namespace {

bool adjacent_to_any(const AlignmentMatrix& a, const Link& l) {
    for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            auto i = static_cast<std::ptrdiff_t>(l.target) + di;
            auto j = static_cast<std::ptrdiff_t>(l.source) + dj;
            if (i < 0 || j < 0) continue;
            if (a.contains(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) return true;
        }
    }
    return false;
}

}  // namespace

AlignmentMatrix symmetrize(const AlignmentMatrix& forward, const AlignmentMatrix& backward, Symmetrization method) {
    if (forward.source_len() != backward.source_len() || forward.target_len() != backward.target_len())
        throw DataError("cannot symmetrize alignments of different dimensions");
    AlignmentMatrix inter(forward.source_len(), forward.target_len());
    AlignmentMatrix uni(forward.source_len(), forward.target_len());
    for (const auto& l : forward.links()) {
        uni.add(l.target, l.source);
        if (backward.contains(l.target, l.source)) inter.add(l.target, l.source);
    }
    for (const auto& l : backward.links()) uni.add(l.target, l.source);
    if (method == Symmetrization::Intersection) return inter;
    if (method == Symmetrization::Union) return uni;

    AlignmentMatrix out = inter;
    std::vector<bool> row_covered(out.target_len(), false);
    std::vector<bool> col_covered(out.source_len(), false);
    for (const auto& l : out.links()) {
        row_covered[l.target] = true;
        col_covered[l.source] = true;
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& l : uni.links()) {
            if (out.contains(l.target, l.source)) continue;
            if (row_covered[l.target] && col_covered[l.source]) continue;
            if (!adjacent_to_any(out, l)) continue;
            out.add(l.target, l.source);
            row_covered[l.target] = col_covered[l.source] = true;
            grew = true;
        }
    }
    for (const auto& l : uni.links()) {
        if (out.contains(l.target, l.source)) continue;
        if (row_covered[l.target] || col_covered[l.source]) continue;
        out.add(l.target, l.source);
        row_covered[l.target] = col_covered[l.source] = true;
    }
    return out;
}

std::vector<AlignmentMatrix> align_corpus(const std::vector<SentencePair>& pairs, const AlignOptions& options) {
    auto forward_table = train_ibm1(pairs, options.iterations, options.threads);
    auto backward_pairs = reversed(pairs);
    auto backward_table = train_ibm1(backward_pairs, options.iterations, options.threads);
    std::vector<AlignmentMatrix> out(pairs.size());
    parallel_for(pairs.size(), options.threads, [&](std::size_t k) {
        auto fwd = viterbi_align(pairs[k], forward_table);
        auto bwd = viterbi_align(backward_pairs[k], backward_table).transposed();
        out[k] = symmetrize(fwd, bwd, options.method);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Alignment files

std::string export_alignments(const std::vector<AlignmentMatrix>& alignments) {
    std::string out;
    for (const auto& a : alignments) {
        std::vector<std::pair<std::size_t, std::size_t>> sj;
        for (const auto& l : a.links()) sj.emplace_back(l.source, l.target);
        std::sort(sj.begin(), sj.end());
        for (std::size_t k = 0; k < sj.size(); ++k) {
            if (k > 0) out += ' ';
            out += std::to_string(sj[k].first) + "-" + std::to_string(sj[k].second);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::size_t parse_index(std::string_view s, std::size_t line) {
    if (s.empty() || s.size() > 9) throw DataError("alignment line " + std::to_string(line) + ": bad index '" + std::string(s) + "'");
    std::size_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw DataError("alignment line " + std::to_string(line) + ": bad index '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

}  // namespace

std::vector<AlignmentMatrix> import_alignments(std::string_view text, const std::vector<SentencePair>& pairs) {
    auto lines = split_lines(text);
    std::size_t skip = 0;
    while (skip < lines.size() && lines[skip].starts_with("#")) ++skip;
    if (lines.size() - skip != pairs.size())
        throw DataError("alignment file has " + std::to_string(lines.size() - skip) + " lines but the corpus has " +
                        std::to_string(pairs.size()) + " sentence pairs");
    std::vector<AlignmentMatrix> out;
    out.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        std::size_t line_no = skip + k + 1;
        AlignmentMatrix a(pairs[k].source.size(), pairs[k].target.size());
        std::string_view line = lines[skip + k];
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            if (pos >= line.size()) break;
            std::size_t end = pos;
            while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
            std::string_view item = line.substr(pos, end - pos);
            auto dash = item.find('-');
            if (dash == std::string_view::npos)
                throw DataError("alignment line " + std::to_string(line_no) + ": expected j-i, got '" + std::string(item) + "'");
            std::size_t j = parse_index(item.substr(0, dash), line_no);
            std::size_t i = parse_index(item.substr(dash + 1), line_no);
            if (j >= a.source_len() || i >= a.target_len())
                throw DataError("alignment line " + std::to_string(line_no) + ": link " + std::string(item) +
                                " out of range for a " + std::to_string(a.source_len()) + "-word source and " +
                                std::to_string(a.target_len()) + "-word target");
            a.add(i, j);
            pos = end;
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace ruleinfer
