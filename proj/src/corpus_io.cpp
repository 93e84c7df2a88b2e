#include "ruleinfer/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include "ruleinfer/error.hpp"
#include "stream_lexer.hpp"

namespace ruleinfer {

Sentence parse_analyzed_line(std::string_view line) {
    detail::StreamLexer lex(line);
    Sentence sentence;
    lex.skip_space();
    if (lex.at_end()) throw ParseError("empty line", 0);
    while (!lex.at_end()) {
        std::size_t token = sentence.size() + 1;
        sentence.push_back(lex.read_form(token));
        if (!lex.at_end() && !detail::is_space(lex.peek()))
            throw ParseError("expected whitespace after '$'", lex.column(), token);
        lex.skip_space();
    }
    return sentence;
}

std::string format_analyzed_line(const Sentence& sentence) {
    std::string out;
    for (std::size_t k = 0; k < sentence.size(); ++k) {
        if (k > 0) out += ' ';
        out += render(sentence[k]);
    }
    return out;
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& file, std::string_view contents) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw DataError("cannot write " + file.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw DataError("write failed for " + file.string());
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return lines;
}

std::vector<Sentence> load_corpus(const std::filesystem::path& file) {
    auto lines = split_lines(read_file(file));
    std::vector<Sentence> corpus;
    corpus.reserve(lines.size());
    for (std::size_t k = 0; k < lines.size(); ++k) {
        try {
            corpus.push_back(parse_analyzed_line(lines[k]));
        } catch (const ParseError& e) {
            throw DataError(file.string() + ":" + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return corpus;
}

std::vector<SentencePair> load_parallel(const std::filesystem::path& source_file,
                                        const std::filesystem::path& target_file) {
    auto source_lines = split_lines(read_file(source_file));
    auto target_lines = split_lines(read_file(target_file));
    if (source_lines.size() != target_lines.size())
        throw DataError("line-count mismatch: " + source_file.string() + " has " +
                        std::to_string(source_lines.size()) + " lines, " + target_file.string() +
                        " has " + std::to_string(target_lines.size()));
    std::vector<SentencePair> pairs;
    pairs.reserve(source_lines.size());
    for (std::size_t k = 0; k < source_lines.size(); ++k) {
        SentencePair pair;
        pair.line_number = k + 1;
        const std::filesystem::path* current = &source_file;
        try {
            pair.source = parse_analyzed_line(source_lines[k]);
            current = &target_file;
            pair.target = parse_analyzed_line(target_lines[k]);
        } catch (const ParseError& e) {
            throw DataError(current->string() + ":" + std::to_string(k + 1) + ": " + e.what());
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

void write_corpus(const std::filesystem::path& file, const std::vector<Sentence>& corpus) {
    std::string out;
    for (const auto& s : corpus) {
        out += format_analyzed_line(s);
        out += '\n';
    }
    write_file(file, out);
}

std::vector<SentencePair> reversed(const std::vector<SentencePair>& pairs) {
    std::vector<SentencePair> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back({p.target, p.source, p.line_number});
    return out;
}

}  // namespace ruleinfer
