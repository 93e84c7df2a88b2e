#include "ruleinfer/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "ruleinfer/engine.hpp"
#include "ruleinfer/error.hpp"
#include "ruleinfer/report.hpp"

namespace ruleinfer {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string_view to_string(TokenMode m) {
    switch (m) {
        case TokenMode::Plain: return "plain";
        case TokenMode::Lexical: return "lexical";
        case TokenMode::Lemma: return "lemma";
    }
    return "plain";
}

TokenMode parse_token_mode(std::string_view s) {
    if (s == "plain") return TokenMode::Plain;
    if (s == "lexical") return TokenMode::Lexical;
    if (s == "lemma") return TokenMode::Lemma;
    throw UsageError("unknown token mode '" + std::string(s) + "' (expected plain, lexical or lemma)");
}

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string short_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

fs::path resolve(const fs::path& base, const std::string& p) {
    if (p.empty()) return {};
    fs::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

template <class T>
T get_as(const ordered_json& v, std::string_view key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError("config key '" + std::string(key) + "' has the wrong type");
    }
}

std::vector<double> sweep_from_json(const ordered_json& v) {
    if (v.is_string()) return parse_sweep(v.get<std::string>());
    if (!v.is_array()) throw UsageError("config key 'sweep' must be a list or a range string");
    std::vector<double> out;
    for (const auto& x : v) out.push_back(get_as<double>(x, "sweep"));
    if (out.empty()) throw UsageError("threshold sweep is empty");
    return out;
}

void parse_eval(const ordered_json& j, EvalConfig& e) {
    if (!j.is_object()) throw UsageError("config key 'eval' must be an object");
    for (const auto& [key, v] : j.items()) {
        if (key == "metric") {
            try {
                e.metric = parse_metric(get_as<std::string>(v, key));
            } catch (const DataError& err) {
                throw UsageError(err.what());
            }
        } else if (key == "resamples") {
            e.resamples = get_as<std::size_t>(v, key);
        } else if (key == "q") {
            e.q = get_as<double>(v, key);
        } else if (key == "seed") {
            e.seed = get_as<std::uint64_t>(v, key);
        } else if (key == "tokens") {
            e.tokens = parse_token_mode(get_as<std::string>(v, key));
        } else {
            throw UsageError("unknown config key 'eval." + key + "'");
        }
    }
}

ordered_json config_json(const RunConfig& c, bool with_output) {
    ordered_json j;
    j["train_source"] = c.train_source.generic_string();
    j["train_target"] = c.train_target.generic_string();
    j["dictionary"] = c.dictionary.generic_string();
    j["lexicalized"] = c.lexicalized;
    j["max_source_len"] = c.max_source_len;
    j["em_iterations"] = c.em_iterations;
    j["symmetrization"] = std::string(to_string(c.symmetrization));
    j["alignments"] = c.alignments.generic_string();
    j["selection"] = std::string(to_string(c.selection));
    j["threshold"] = c.threshold;
    j["sweep"] = c.sweep;
    j["dev_source"] = c.dev_source.generic_string();
    j["dev_reference"] = c.dev_reference.generic_string();
    j["test_source"] = c.test_source.generic_string();
    j["test_reference"] = c.test_reference.generic_string();
    j["hypothesis"] = c.hypothesis.generic_string();
    j["eval"] = {{"metric", std::string(to_string(c.eval.metric))},
                 {"resamples", c.eval.resamples},
                 {"q", c.eval.q},
                 {"seed", c.eval.seed},
                 {"tokens", std::string(to_string(c.eval.tokens))}};
    j["threads"] = c.threads;
    if (with_output) j["output_dir"] = c.output_dir.generic_string();
    return j;
}

void require(const fs::path& p, std::string_view what) {
    if (p.empty()) throw UsageError("config does not set " + std::string(what));
    if (!fs::exists(p)) throw DataError(std::string(what) + " '" + p.string() + "' does not exist");
}

fs::path out_file(const RunConfig& c, std::string_view name) { return c.output_dir / fs::path(std::string(name)); }

std::vector<SentencePair> training_pairs(const RunConfig& c) {
    require(c.train_source, "train_source");
    require(c.train_target, "train_target");
    return load_parallel(c.train_source, c.train_target);
}

BilingualDictionary dictionary(const RunConfig& c) {
    require(c.dictionary, "dictionary");
    try {
        return parse_dictionary(read_file(c.dictionary));
    } catch (const DataError& e) {
        throw DataError(c.dictionary.string() + ": " + e.what());
    }
}

std::vector<AlignmentMatrix> aligned(const RunConfig& c, const std::vector<SentencePair>& pairs) {
    auto file = out_file(c, artifact::kAlignments);
    require(file, "alignment file (run align first)");
    try {
        return import_alignments(read_file(file), pairs);
    } catch (const DataError& e) {
        throw DataError(file.string() + ": " + e.what());
    }
}

std::vector<CountedTemplate> templates(const RunConfig& c) {
    auto file = out_file(c, artifact::kTemplates);
    require(file, "template dump (run learn first)");
    try {
        return parse_template_dump(read_file(file));
    } catch (const DataError& e) {
        throw DataError(file.string() + ": " + e.what());
    }
}

std::vector<TransferRule> rules_for(const RunConfig& c, const std::vector<CountedTemplate>& counted,
                                    double threshold) {
    return build_rules(select_templates(counted, threshold, c.selection));
}

std::string rule_file_text(const RunConfig& c, const std::vector<TransferRule>& rules, double threshold) {
    RuleFileMetadata meta{{"tool", "ruleinfer " + std::string(kToolVersion)},
                          {"config", config_hash(c)},
                          {"selection", std::string(to_string(c.selection))},
                          {"threshold", short_number(threshold)}};
    return serialize_rules(rules, meta);
}

std::vector<std::string> render_lines(const std::vector<Sentence>& corpus) {
    std::vector<std::string> lines;
    lines.reserve(corpus.size());
    for (const auto& s : corpus) lines.push_back(format_analyzed_line(s));
    return lines;
}

std::vector<std::string> read_lines(const fs::path& p, std::string_view what) {
    require(p, what);
    return split_lines(read_file(p));
}

void check_distinct(const fs::path& a, const fs::path& b) {
    std::error_code ec;
    if (fs::equivalent(a, b, ec)) throw UsageError("development corpus must differ from the training corpus");
}

}  // namespace

std::vector<double> parse_sweep(std::string_view text) {
    std::vector<double> out;
    auto number = [&](std::string_view s) {
        std::string str(s);
        char* end = nullptr;
        double v = std::strtod(str.c_str(), &end);
        if (str.empty() || end != str.c_str() + str.size() || !std::isfinite(v))
            throw UsageError("bad threshold '" + str + "' in sweep");
        return v;
    };
    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        std::string_view rest = text.substr(dots + 2);
        double step = 1;
        if (auto colon = rest.find(':'); colon != std::string_view::npos) {
            step = number(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        double lo = number(text.substr(0, dots)), hi = number(rest);
        if (step <= 0) throw UsageError("sweep step must be positive");
        if (hi < lo) throw UsageError("sweep range is empty");
        for (std::size_t k = 0;; ++k) {
            double v = lo + static_cast<double>(k) * step;
            if (v > hi + 1e-9) break;
            out.push_back(v);
        }
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto comma = text.find(',', pos);
            auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            out.push_back(number(piece));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    if (out.empty()) throw UsageError("threshold sweep is empty");
    return out;
}

RunConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    RunConfig c;
    for (const auto& [key, v] : j.items()) {
        auto path = [&] { return resolve(base_dir, get_as<std::string>(v, key)); };
        if (key == "train_source") c.train_source = path();
        else if (key == "train_target") c.train_target = path();
        else if (key == "dictionary") c.dictionary = path();
        else if (key == "alignments") c.alignments = path();
        else if (key == "dev_source") c.dev_source = path();
        else if (key == "dev_reference") c.dev_reference = path();
        else if (key == "test_source") c.test_source = path();
        else if (key == "test_reference") c.test_reference = path();
        else if (key == "hypothesis") c.hypothesis = path();
        else if (key == "output_dir") c.output_dir = path();
        else if (key == "lexicalized") c.lexicalized = get_as<std::vector<std::string>>(v, key);
        else if (key == "max_source_len") c.max_source_len = get_as<std::size_t>(v, key);
        else if (key == "em_iterations") c.em_iterations = get_as<int>(v, key);
        else if (key == "threshold") c.threshold = get_as<double>(v, key);
        else if (key == "sweep") c.sweep = sweep_from_json(v);
        else if (key == "threads") c.threads = get_as<unsigned>(v, key);
        else if (key == "eval") parse_eval(v, c.eval);
        else if (key == "symmetrization" || key == "selection") {
            try {
                if (key == "symmetrization") c.symmetrization = parse_symmetrization(get_as<std::string>(v, key));
                else c.selection = parse_selection_mode(get_as<std::string>(v, key));
            } catch (const DataError& e) {
                throw UsageError(e.what());
            }
        } else {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    if (c.max_source_len == 0) throw UsageError("max_source_len must be positive");
    if (c.em_iterations < 0) throw UsageError("em_iterations must not be negative");
    if (c.threshold < 0) throw UsageError("threshold must not be negative");
    if (c.threads == 0) c.threads = 1;
    return c;
}

RunConfig load_config(const fs::path& file) {
    if (!fs::exists(file)) throw UsageError("config file '" + file.string() + "' does not exist");
    return parse_config(read_file(file), file.parent_path());
}

std::string config_to_json(const RunConfig& config) { return config_json(config, true).dump(2) + "\n"; }

std::string config_hash(const RunConfig& config) {
    // Thread count cannot change any output, so it stays out of the hash.
    auto j = config_json(config, false);
    j.erase("threads");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string rules_file_name(double threshold) { return "rules-t" + short_number(threshold) + ".txt"; }

std::string artifact_header(const RunConfig& config) {
    return "# ruleinfer " + std::string(kToolVersion) + "\n# config " + config_hash(config) + "\n";
}

TokenCorpus tokenize_corpus(const std::vector<std::string>& lines, TokenMode mode) {
    TokenCorpus out;
    out.reserve(lines.size());
    for (const auto& line : lines) {
        if (mode == TokenMode::Plain) {
            out.push_back(tokenize(line));
            continue;
        }
        Tokens t;
        if (line.find_first_not_of(" \t") != std::string::npos)
            for (const auto& w : parse_analyzed_line(line))
                t.push_back(mode == TokenMode::Lexical ? render(w) : w.unknown ? "*" + w.lemma : w.lemma);
        out.push_back(std::move(t));
    }
    return out;
}

void cmd_align(const RunConfig& c) {
    auto pairs = training_pairs(c);
    std::vector<AlignmentMatrix> alignments;
    if (!c.alignments.empty()) {
        require(c.alignments, "alignments");
        try {
            alignments = import_alignments(read_file(c.alignments), pairs);
        } catch (const DataError& e) {
            throw DataError(c.alignments.string() + ": " + e.what());
        }
    } else {
        alignments = align_corpus(pairs, {c.em_iterations, c.symmetrization, c.threads});
    }
    write_file(out_file(c, artifact::kAlignments), artifact_header(c) + export_alignments(alignments));
}

void cmd_extract(const RunConfig& c) {
    auto pairs = training_pairs(c);
    auto alignments = aligned(c, pairs);
    std::string out = artifact_header(c);
    for (std::size_t k = 0; k < pairs.size(); ++k)
        for (const auto& p : extract_phrases(pairs[k], alignments[k], c.max_source_len))
            out += std::to_string(k + 1) + " ||| " + format_phrase(p) + "\n";
    write_file(out_file(c, artifact::kPhrases), out);
}

LearnResult cmd_learn(const RunConfig& c) {
    auto pairs = training_pairs(c);
    auto alignments = aligned(c, pairs);
    auto dict = dictionary(c);
    auto result = learn_templates(pairs, alignments, dict, {c.lexicalized, c.max_source_len, c.threads});
    write_file(out_file(c, artifact::kTemplates), artifact_header(c) + format_template_dump(result.templates));
    write_file(out_file(c, artifact::kDiscards), report_discards(result));
    write_file(out_file(c, artifact::kDiscardsJson), report_discards_json(result));
    return result;
}

void cmd_genrules(const RunConfig& c) {
    auto counted = templates(c);
    for (double t : c.sweep) write_file(out_file(c, rules_file_name(t)), rule_file_text(c, rules_for(c, counted, t), t));
    auto rules = rules_for(c, counted, c.threshold);
    write_file(out_file(c, artifact::kRules), rule_file_text(c, rules, c.threshold));
    write_file(out_file(c, artifact::kRuleReport), report_rulebase(rules));
    write_file(out_file(c, artifact::kRuleReportJson), report_rulebase_json(rules));
    write_file(out_file(c, artifact::kHistogram), report_length_histogram(rules));
    write_file(out_file(c, artifact::kHistogramJson), report_length_histogram_json(rules));
}

TranslationStats cmd_translate(const RunConfig& c) {
    auto rule_path = out_file(c, artifact::kRules);
    require(rule_path, "rule file (run genrules first)");
    std::vector<TransferRule> rules;
    try {
        rules = parse_rules(read_file(rule_path));
    } catch (const DataError& e) {
        throw DataError(rule_path.string() + ": " + e.what());
    }
    auto dict = dictionary(c);
    require(c.test_source, "test_source");
    auto source = load_corpus(c.test_source);
    TransferEngine engine(rules, dict, c.lexicalized);
    auto result = engine.translate_corpus(source, c.threads);
    write_corpus(out_file(c, artifact::kTranslation), result.output);
    write_file(out_file(c, artifact::kStats), report_statistics(result.stats));
    write_file(out_file(c, artifact::kStatsJson), report_statistics_json(result.stats));
    write_file(out_file(c, artifact::kTrace), report_trace(source, result, rules));
    return result.stats;
}

EvalReport cmd_evaluate(const RunConfig& c) {
    fs::path hyp_path = c.hypothesis.empty() ? out_file(c, artifact::kTranslation) : c.hypothesis;
    auto hyp_lines = read_lines(hyp_path, "hypothesis");
    auto ref_lines = read_lines(c.test_reference, "test_reference");
    if (hyp_lines.size() != ref_lines.size())
        throw DataError("hypothesis has " + std::to_string(hyp_lines.size()) + " lines but the reference has " +
                        std::to_string(ref_lines.size()));
    auto hyp = tokenize_corpus(hyp_lines, c.eval.tokens);
    auto ref = tokenize_corpus(ref_lines, c.eval.tokens);

    EvalReport report;
    report.score = corpus_score(c.eval.metric, hyp, ref);
    report.interval = bootstrap_ci(c.eval.metric, hyp, ref, {c.eval.resamples, c.eval.q, c.eval.seed, c.threads});
    auto ter_score = corpus_ter(hyp, ref);
    auto bleu_score = bleu(hyp, ref);

    std::optional<MetricScore> base_ter, base_bleu;
    if (!c.test_source.empty() && !c.dictionary.empty()) {
        auto dict = dictionary(c);
        std::vector<Sentence> w4w;
        for (const auto& s : load_corpus(c.test_source)) w4w.push_back(word_for_word(s, dict));
        auto base = tokenize_corpus(render_lines(w4w), c.eval.tokens);
        if (base.size() == ref.size()) {
            base_ter = corpus_ter(base, ref);
            base_bleu = bleu(base, ref);
            report.baseline = c.eval.metric == Metric::Ter ? base_ter : base_bleu;
        }
    }

    const auto& ci = report.interval;
    std::ostringstream out;
    out << artifact_header(c);
    out << "sentences: " << hyp.size() << "\n";
    out << "metric: " << to_string(c.eval.metric) << "\n";
    out << "score: " << fmt(report.score.value) << "\n";
    out << "interval: [" << fmt(ci.lower) << ", " << fmt(ci.upper) << "] level " << fmt(ci.level, 4) << " ("
        << ci.resamples << " resamples, " << ci.survivors << " kept, seed " << ci.seed << ")\n";
    out << "ter: " << fmt(ter_score.value) << "\n";
    out << "bleu: " << fmt(bleu_score.value) << "\n";
    if (base_ter) {
        out << "word-for-word ter: " << fmt(base_ter->value) << "\n";
        out << "word-for-word bleu: " << fmt(base_bleu->value) << "\n";
    }
    write_file(out_file(c, artifact::kEval), out.str());

    ordered_json j;
    j["config"] = config_hash(c);
    j["sentences"] = hyp.size();
    j["metric"] = std::string(to_string(c.eval.metric));
    j["score"] = report.score.value;
    j["interval"] = {{"lower", ci.lower},           {"upper", ci.upper}, {"level", ci.level},
                     {"q", ci.q},                   {"resamples", ci.resamples},
                     {"survivors", ci.survivors},   {"seed", ci.seed}};
    j["ter"] = ter_score.value;
    j["bleu"] = bleu_score.value;
    if (base_ter) j["word_for_word"] = {{"ter", base_ter->value}, {"bleu", base_bleu->value}};
    write_file(out_file(c, artifact::kEvalJson), j.dump(2) + "\n");
    return report;
}

SweepResult cmd_sweep(const RunConfig& c) {
    if (c.sweep.empty()) throw UsageError("threshold sweep is empty");
    require(c.dev_source, "dev_source");
    require(c.dev_reference, "dev_reference");
    if (!c.train_source.empty()) check_distinct(c.dev_source, c.train_source);
    auto counted = templates(c);
    auto dict = dictionary(c);
    auto dev = load_corpus(c.dev_source);
    auto ref = tokenize_corpus(read_lines(c.dev_reference, "dev_reference"), c.eval.tokens);
    if (ref.size() != dev.size())
        throw DataError("development source has " + std::to_string(dev.size()) + " lines but its reference has " +
                        std::to_string(ref.size()));

    SweepResult result;
    for (double t : c.sweep) {
        auto rules = rules_for(c, counted, t);
        SweepRow row;
        row.threshold = t;
        row.rules = rules.size();
        TransferEngine engine(std::move(rules), dict, c.lexicalized);
        auto hyp = tokenize_corpus(render_lines(engine.translate_corpus(dev, c.threads).output), c.eval.tokens);
        row.ter = corpus_ter(hyp, ref).value;
        row.bleu = bleu(hyp, ref).value;
        result.rows.push_back(row);
    }
    const SweepRow* best = &result.rows.front();
    for (const auto& row : result.rows)
        if (row.ter < best->ter || (row.ter == best->ter && row.threshold < best->threshold)) best = &row;
    result.best_threshold = best->threshold;

    std::ostringstream out;
    out << artifact_header(c);
    out << "selection: " << to_string(c.selection) << "\n";
    out << "threshold        TER       BLEU   rules\n";
    for (const auto& row : result.rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%9s %10.6f %10.6f %7zu\n", short_number(row.threshold).c_str(), row.ter,
                      row.bleu, row.rules);
        out << line;
    }
    out << "best threshold: " << short_number(result.best_threshold) << "\n";
    write_file(out_file(c, artifact::kSweep), out.str());

    ordered_json j;
    j["config"] = config_hash(c);
    j["selection"] = std::string(to_string(c.selection));
    ordered_json rows = ordered_json::array();
    for (const auto& row : result.rows)
        rows.push_back({{"threshold", row.threshold}, {"ter", row.ter}, {"bleu", row.bleu}, {"rules", row.rules}});
    j["rows"] = std::move(rows);
    j["best_threshold"] = result.best_threshold;
    write_file(out_file(c, artifact::kSweepJson), j.dump(2) + "\n");
    return result;
}

double cmd_run(const RunConfig& config) {
    RunConfig c = config;
    cmd_align(c);
    cmd_extract(c);
    cmd_learn(c);
    if (!c.sweep.empty() && !c.dev_source.empty()) c.threshold = cmd_sweep(c).best_threshold;
    cmd_genrules(c);
    if (!c.test_source.empty()) {
        cmd_translate(c);
        if (!c.test_reference.empty()) cmd_evaluate(c);
    }
    return c.threshold;
}

RunConfig write_fixture(const fs::path& dir, const FixtureOptions& train, std::size_t dev_sentences,
                        std::size_t test_sentences) {
    auto split = [&](std::string_view name, const FixtureOptions& opt) {
        auto pairs = generate_fixture(opt);
        std::vector<Sentence> src, tgt;
        for (auto& p : pairs) {
            src.push_back(std::move(p.source));
            tgt.push_back(std::move(p.target));
        }
        write_corpus(dir / (std::string(name) + ".src"), src);
        write_corpus(dir / (std::string(name) + ".tgt"), tgt);
    };
    split("train", train);
    FixtureOptions dev = train, test = train;
    dev.sentences = dev_sentences;
    dev.seed = train.seed + 1;
    test.sentences = test_sentences;
    test.seed = train.seed + 2;
    split("dev", dev);
    split("test", test);
    write_file(dir / "dictionary.dix", format_dictionary(fixture_dictionary()));

    RunConfig c;
    c.train_source = "train.src";
    c.train_target = "train.tgt";
    c.dictionary = "dictionary.dix";
    c.lexicalized = fixture_lexicalized_categories();
    c.sweep = parse_sweep("1..10");
    c.dev_source = "dev.src";
    c.dev_reference = "dev.tgt";
    c.test_source = "test.src";
    c.test_reference = "test.tgt";
    c.output_dir = "out";
    write_file(dir / "config.json", config_to_json(c));
    return load_config(dir / "config.json");
}

}  // namespace ruleinfer
