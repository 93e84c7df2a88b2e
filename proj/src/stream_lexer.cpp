#include "stream_lexer.hpp"

#include "ruleinfer/error.hpp"

namespace ruleinfer::detail {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

void StreamLexer::skip_space() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
}

std::string StreamLexer::read_word() {
    std::size_t start = pos_;
    while (!at_end() && !is_space(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
}

std::string StreamLexer::read_tag(std::size_t token) {
    std::size_t open = pos_;
    ++pos_;  // '<'
    std::size_t start = pos_;
    while (!at_end() && text_[pos_] != '>') {
        char c = text_[pos_];
        if (c == '<' || c == '^' || c == '$' || is_space(c))
            throw ParseError("unterminated tag", open + 1, token);
        ++pos_;
    }
    if (at_end()) throw ParseError("unterminated tag", open + 1, token);
    std::string tag(text_.substr(start, pos_ - start));
    ++pos_;  // '>'
    if (tag.empty()) throw ParseError("empty tag", open + 1, token);
    if (!valid_tag(tag)) throw ParseError("invalid tag '" + tag + "'", open + 1, token);
    return tag;
}

void StreamLexer::read_tags(std::size_t token, std::string& category, std::vector<std::string>& tags) {
    if (peek() != '<') throw ParseError("missing category tag", column(), token);
    category = read_tag(token);
    tags.clear();
    while (peek() == '<') tags.push_back(read_tag(token));
}

LexicalForm StreamLexer::read_form(std::size_t token) {
    if (peek() != '^') throw ParseError("expected '^' at start of token", column(), token);
    std::size_t start_col = column();
    ++pos_;
    LexicalForm form;
    if (peek() == '*') {
        form.unknown = true;
        ++pos_;
    }
    while (!at_end()) {
        char c = text_[pos_];
        if (c == '\\') {
            if (pos_ + 1 >= text_.size()) throw ParseError("dangling escape", column(), token);
            form.lemma += text_[pos_ + 1];
            pos_ += 2;
            continue;
        }
        if (c == '<' || c == '$') break;
        if (c == '^' || c == '>') throw ParseError(std::string("unescaped '") + c + "' in lemma", column(), token);
        form.lemma += c;
        ++pos_;
    }
    if (at_end()) throw ParseError("token not terminated by '$'", start_col, token);
    if (form.lemma.empty()) throw ParseError("empty lemma", start_col, token);
    if (peek() != '<') throw ParseError("token has no category tag", column(), token);
    read_tags(token, form.category, form.inflection);
    if (peek() != '$') throw ParseError("token not terminated by '$'", column(), token);
    ++pos_;
    return form;
}

}  // namespace ruleinfer::detail
