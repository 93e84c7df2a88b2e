#include "template_text.hpp"

#include "ruleinfer/error.hpp"

namespace ruleinfer::detail {

std::vector<WordClass> read_classes(StreamLexer& lex) {
    std::vector<WordClass> classes;
    for (;;) {
        lex.skip_space();
        if (lex.at_end() || lex.starts_with("|||")) break;
        std::size_t token = classes.size() + 1;
        if (lex.peek() == '^') {
            auto form = lex.read_form(token);
            if (form.unknown) throw ParseError("word class cannot carry the unknown marker", lex.column(), token);
            classes.push_back(WordClass::lexical(form));
        } else if (lex.peek() == '<') {
            WordClass c;
            lex.read_tags(token, c.category, c.tags);
            classes.push_back(std::move(c));
        } else {
            throw ParseError("expected a word class", lex.column(), token);
        }
    }
    return classes;
}

void expect_separator(StreamLexer& lex) {
    lex.skip_space();
    if (!lex.starts_with("|||")) throw ParseError("expected '|||'", lex.column());
    lex.advance(3);
}

namespace {

std::size_t read_number(std::string_view s, std::size_t column) {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string_view::npos)
        throw ParseError("expected a number, got '" + std::string(s) + "'", column);
    return std::stoul(std::string(s));
}

}  // namespace

ExtendedAlignmentTemplate read_template_body(StreamLexer& lex) {
    ExtendedAlignmentTemplate t;
    t.sl = read_classes(lex);
    expect_separator(lex);
    t.tl = read_classes(lex);
    if (t.sl.empty() || t.tl.empty()) throw ParseError("template with an empty side", lex.column());
    t.alignment = AlignmentMatrix(t.sl.size(), t.tl.size());
    expect_separator(lex);
    for (;;) {
        lex.skip_space();
        if (lex.at_end() || lex.starts_with("|||")) break;
        std::size_t col = lex.column();
        auto item = lex.read_word();
        auto dash = item.find('-');
        if (dash == std::string::npos) throw ParseError("expected i-j link, got '" + item + "'", col);
        std::size_t i = read_number(std::string_view(item).substr(0, dash), col);
        std::size_t j = read_number(std::string_view(item).substr(dash + 1), col);
        if (i >= t.tl.size() || j >= t.sl.size()) throw ParseError("link " + item + " out of range", col);
        t.alignment.add(i, j);
    }
    expect_separator(lex);
    for (;;) {
        lex.skip_space();
        if (lex.at_end() || lex.starts_with("|||")) break;
        std::size_t col = lex.column();
        auto item = lex.read_word();
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("expected pos:pattern, got '" + item + "'", col);
        std::size_t pos = read_number(std::string_view(item).substr(0, colon), col);
        Restriction r;
        try {
            r = parse_restriction(std::string_view(item).substr(colon + 1));
        } catch (const DataError& e) {
            throw ParseError(e.what(), col);
        }
        if (!t.restrictions.emplace(pos, std::move(r)).second)
            throw ParseError("duplicate restriction for position " + std::to_string(pos), col);
    }
    try {
        validate(t);
    } catch (const DataError& e) {
        throw ParseError(e.what(), lex.column());
    }
    return t;
}

}  // namespace ruleinfer::detail
