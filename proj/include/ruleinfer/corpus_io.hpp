#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ruleinfer/lexical_form.hpp"

namespace ruleinfer {

struct SentencePair {
    Sentence source;
    Sentence target;
    std::size_t line_number = 0;  // 1-based, 0 when not read from a file

    friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

/// Parses one line of the analyzed stream format. Throws ParseError
/// carrying the 1-based token index and column of the first problem.
Sentence parse_analyzed_line(std::string_view line);

std::string format_analyzed_line(const Sentence& sentence);

/// Reads every line of an analyzed corpus. Errors name the file and line.
std::vector<Sentence> load_corpus(const std::filesystem::path& file);

std::vector<SentencePair> load_parallel(const std::filesystem::path& source_file,
                                        const std::filesystem::path& target_file);

void write_corpus(const std::filesystem::path& file, const std::vector<Sentence>& corpus);

/// Splits file contents into lines, dropping a trailing empty line and `\r`.
std::vector<std::string> split_lines(std::string_view text);

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::string_view contents);

/// Swaps source and target of every pair.
std::vector<SentencePair> reversed(const std::vector<SentencePair>& pairs);

}  // namespace ruleinfer
