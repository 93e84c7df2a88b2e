#pragma once

// Cursor over text in the analyzed stream syntax. Shared by the corpus,
// template and rule parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ruleinfer/lexical_form.hpp"

namespace ruleinfer::detail {

class StreamLexer {
  public:
    explicit StreamLexer(std::string_view text) : text_(text) {}

    void skip_space();
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
    void advance(std::size_t n) { pos_ += n; }
    std::size_t column() const { return pos_ + 1; }
    std::size_t position() const { return pos_; }

    /// Reads `^lemma<cat>...<tag>$`. `token` is only used for messages.
    LexicalForm read_form(std::size_t token);

    /// Reads one or more `<tag>` groups; the first is the category.
    void read_tags(std::size_t token, std::string& category, std::vector<std::string>& tags);

    /// Reads a run of non-space characters.
    std::string read_word();

  private:
    std::string read_tag(std::size_t token);

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool is_space(char c);

}  // namespace ruleinfer::detail
