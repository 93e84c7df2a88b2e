#include "ruleinfer/lexical_form.hpp"

#include "ruleinfer/error.hpp"

namespace ruleinfer {

bool valid_tag(std::string_view tag) {
    if (tag.empty()) return false;
    for (char c : tag) {
        switch (c) {
            case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
            case '<': case '>': case '^': case '$': case '\\': case '.':
                return false;
            default:
                break;
        }
    }
    return true;
}

void validate(const LexicalForm& form) {
    if (form.lemma.empty()) throw DataError("lexical form has an empty lemma");
    if (!valid_tag(form.category))
        throw DataError("invalid category tag '" + form.category + "' on lemma '" + form.lemma + "'");
    for (const auto& tag : form.inflection)
        if (!valid_tag(tag))
            throw DataError("invalid inflection tag '" + tag + "' on lemma '" + form.lemma + "'");
}

std::string render_tags(std::string_view category, const std::vector<std::string>& tags) {
    std::string out;
    out += '<';
    out += category;
    out += '>';
    for (const auto& tag : tags) {
        out += '<';
        out += tag;
        out += '>';
    }
    return out;
}

std::string render(const LexicalForm& form) {
    std::string out = "^";
    if (form.unknown) out += '*';
    for (std::size_t k = 0; k < form.lemma.size(); ++k) {
        char c = form.lemma[k];
        if (c == '^' || c == '$' || c == '<' || c == '>' || c == '\\' || (c == '*' && k == 0))
            out += '\\';
        out += c;
    }
    out += render_tags(form.category, form.inflection);
    out += '$';
    return out;
}

std::string dotted(std::string_view category, const std::vector<std::string>& tags) {
    std::string out(category);
    for (const auto& tag : tags) {
        out += '.';
        out += tag;
    }
    return out;
}

}  // namespace ruleinfer
