// ruleinfer: learn shallow-transfer rules from an analyzed parallel corpus,
// apply them, and score the output.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ruleinfer/error.hpp"
#include "ruleinfer/pipeline.hpp"

using namespace ruleinfer;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::string> output_dir, train_source, train_target, dictionary, alignments;
    std::optional<std::string> dev_source, dev_reference, test_source, test_reference, hypothesis;
    std::optional<std::string> lexicalized, symmetrization, selection, sweep, metric, tokens;
    std::optional<double> threshold, q;
    std::optional<std::size_t> max_source_len, resamples;
    std::optional<int> em_iterations;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

void add_overrides(CLI::App& app, Overrides& o) {
    app.add_option("-c,--config", o.config, "JSON run configuration");
    app.add_option("-o,--output-dir", o.output_dir, "Directory for all artifacts");
    app.add_option("--train-source", o.train_source);
    app.add_option("--train-target", o.train_target);
    app.add_option("--dictionary", o.dictionary, "Bilingual dictionary (XML)");
    app.add_option("--alignments", o.alignments, "Import alignments instead of training IBM Model 1");
    app.add_option("--dev-source", o.dev_source);
    app.add_option("--dev-reference", o.dev_reference);
    app.add_option("--test-source", o.test_source);
    app.add_option("--test-reference", o.test_reference);
    app.add_option("--hypothesis", o.hypothesis, "Evaluate this file instead of translation.txt");
    app.add_option("--lexicalized", o.lexicalized, "Comma-separated lexicalized categories");
    app.add_option("--max-source-len", o.max_source_len);
    app.add_option("--em-iterations", o.em_iterations);
    app.add_option("--symmetrization", o.symmetrization, "intersection, union or refined");
    app.add_option("--selection", o.selection, "raw or length_scaled");
    app.add_option("--threshold", o.threshold);
    app.add_option("--sweep", o.sweep, "Thresholds: 5..40, 5..40:5 or 1,2,8");
    app.add_option("--metric", o.metric, "ter or bleu");
    app.add_option("--tokens", o.tokens, "plain, lexical or lemma");
    app.add_option("--resamples", o.resamples);
    app.add_option("--q", o.q, "Percent trimmed from each tail");
    app.add_option("--seed", o.seed);
    app.add_option("--threads", o.threads);
}

RunConfig effective_config(const Overrides& o) {
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    // Flag values reuse the config parser so both paths validate alike.
    nlohmann::ordered_json j;
    auto set = [&](const char* key, const auto& v) {
        if (v) j[key] = *v;
    };
    set("output_dir", o.output_dir);
    set("train_source", o.train_source);
    set("train_target", o.train_target);
    set("dictionary", o.dictionary);
    set("alignments", o.alignments);
    set("dev_source", o.dev_source);
    set("dev_reference", o.dev_reference);
    set("test_source", o.test_source);
    set("test_reference", o.test_reference);
    set("hypothesis", o.hypothesis);
    set("symmetrization", o.symmetrization);
    set("selection", o.selection);
    set("sweep", o.sweep);
    set("threshold", o.threshold);
    set("max_source_len", o.max_source_len);
    set("em_iterations", o.em_iterations);
    set("threads", o.threads);
    if (o.lexicalized) {
        auto cats = nlohmann::ordered_json::array();
        std::string cur;
        for (char ch : *o.lexicalized + ",") {
            if (ch != ',') {
                cur += ch;
            } else if (!cur.empty()) {
                cats.push_back(cur);
                cur.clear();
            }
        }
        j["lexicalized"] = cats;
    }
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    if (o.metric) e["metric"] = *o.metric;
    if (o.tokens) e["tokens"] = *o.tokens;
    if (o.resamples) e["resamples"] = *o.resamples;
    if (o.q) e["q"] = *o.q;
    if (o.seed) e["seed"] = *o.seed;
    if (!e.empty()) j["eval"] = e;
    if (j.empty()) return c;

    RunConfig f = parse_config(j.dump());
    auto pick = [&](auto& dst, const auto& src, bool given) {
        if (given) dst = src;
    };
    pick(c.output_dir, f.output_dir, o.output_dir.has_value());
    pick(c.train_source, f.train_source, o.train_source.has_value());
    pick(c.train_target, f.train_target, o.train_target.has_value());
    pick(c.dictionary, f.dictionary, o.dictionary.has_value());
    pick(c.alignments, f.alignments, o.alignments.has_value());
    pick(c.dev_source, f.dev_source, o.dev_source.has_value());
    pick(c.dev_reference, f.dev_reference, o.dev_reference.has_value());
    pick(c.test_source, f.test_source, o.test_source.has_value());
    pick(c.test_reference, f.test_reference, o.test_reference.has_value());
    pick(c.hypothesis, f.hypothesis, o.hypothesis.has_value());
    pick(c.lexicalized, f.lexicalized, o.lexicalized.has_value());
    pick(c.symmetrization, f.symmetrization, o.symmetrization.has_value());
    pick(c.selection, f.selection, o.selection.has_value());
    pick(c.sweep, f.sweep, o.sweep.has_value());
    pick(c.threshold, f.threshold, o.threshold.has_value());
    pick(c.max_source_len, f.max_source_len, o.max_source_len.has_value());
    pick(c.em_iterations, f.em_iterations, o.em_iterations.has_value());
    pick(c.threads, f.threads, o.threads.has_value());
    pick(c.eval.metric, f.eval.metric, o.metric.has_value());
    pick(c.eval.tokens, f.eval.tokens, o.tokens.has_value());
    pick(c.eval.resamples, f.eval.resamples, o.resamples.has_value());
    pick(c.eval.q, f.eval.q, o.q.has_value());
    pick(c.eval.seed, f.eval.seed, o.seed.has_value());
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Learn, apply and evaluate shallow-transfer rules"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides o;
    add_overrides(app, o);

    auto* align = app.add_subcommand("align", "Train IBM Model 1 both ways and symmetrize (or import)");
    auto* extract = app.add_subcommand("extract", "Dump bilingual phrase pairs");
    auto* learn = app.add_subcommand("learn", "Generalize phrase pairs into counted templates");
    auto* genrules = app.add_subcommand("genrules", "Select templates and write the rule file(s)");
    auto* translate = app.add_subcommand("translate", "Translate the test corpus");
    auto* evaluate = app.add_subcommand("evaluate", "Score the translation against the reference");
    auto* sweep = app.add_subcommand("sweep", "Pick the threshold with the lowest TER on the dev corpus");
    auto* run = app.add_subcommand("run", "align, learn, [sweep], genrules, translate and evaluate");
    auto* fixture = app.add_subcommand("fixture", "Write a synthetic corpus, dictionary and config");

    std::string fixture_dir;
    FixtureOptions fixture_opts;
    std::size_t dev_sentences = 500, test_sentences = 500;
    fixture->add_option("dir", fixture_dir, "Destination directory")->required();
    fixture->add_option("--sentences", fixture_opts.sentences, "Training sentence pairs");
    fixture->add_option("--dev-sentences", dev_sentences);
    fixture->add_option("--test-sentences", test_sentences);
    fixture->add_option("--fixture-seed", fixture_opts.seed);
    fixture->add_option("--flip-share", fixture_opts.flip_share)->check(CLI::Range(0.0, 1.0));
    fixture->add_option("--oov-rate", fixture_opts.oov_rate)->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (fixture->parsed()) {
            auto c = write_fixture(fixture_dir, fixture_opts, dev_sentences, test_sentences);
            std::cout << "wrote fixture to " << fixture_dir << " (config " << config_hash(c) << ")\n";
            return 0;
        }
        RunConfig c = effective_config(o);
        if (align->parsed()) {
            cmd_align(c);
        } else if (extract->parsed()) {
            cmd_extract(c);
        } else if (learn->parsed()) {
            auto r = cmd_learn(c);
            std::cout << r.templates.size() << " templates from " << r.phrases << " phrase pairs, " << r.discarded()
                      << " discarded\n";
        } else if (genrules->parsed()) {
            cmd_genrules(c);
        } else if (translate->parsed()) {
            auto st = cmd_translate(c);
            std::cout << st.sentences << " sentences, " << st.rule_applications << " rule applications\n";
        } else if (evaluate->parsed()) {
            auto r = cmd_evaluate(c);
            std::printf("%s %.6f [%.6f, %.6f]\n", std::string(to_string(r.score.metric)).c_str(), r.score.value,
                        r.interval.lower, r.interval.upper);
        } else if (sweep->parsed()) {
            auto r = cmd_sweep(c);
            std::printf("best threshold %g\n", r.best_threshold);
        } else if (run->parsed()) {
            double t = cmd_run(c);
            std::printf("threshold %g, artifacts in %s\n", t, c.output_dir.string().c_str());
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "ruleinfer: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ruleinfer: " << e.what() << "\n";
        return 2;
    }
}
