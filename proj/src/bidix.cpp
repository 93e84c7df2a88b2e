#include "ruleinfer/bidix.hpp"

#include <algorithm>
#include <cctype>

#include "ruleinfer/error.hpp"

namespace ruleinfer {

namespace {

std::string describe(const DictEntry& e) {
    return e.sl.lemma + "<" + e.sl.category + "> -> " + e.tl.lemma + "<" + e.tl.category + ">";
}

bool is_prefix(const std::vector<std::string>& prefix, const std::vector<std::string>& tags) {
    return prefix.size() <= tags.size() && std::equal(prefix.begin(), prefix.end(), tags.begin());
}

}  // namespace

void BilingualDictionary::add(DictEntry entry) {
    if (entry.sl.lemma.empty() || entry.tl.lemma.empty()) throw DataError("dictionary entry with an empty lemma");
    if (entry.sl.category.empty() || entry.tl.category.empty())
        throw DataError("dictionary entry without a lexical category");
    auto key = std::make_pair(entry.sl.lemma, entry.sl.category);
    if (auto it = index_.find(key); it != index_.end())
        throw DataError("duplicate dictionary entry for " + entry.sl.lemma + "<" + entry.sl.category + ">: entry " +
                        std::to_string(it->second + 1) + " (" + describe(entries_[it->second]) + ") and entry " +
                        std::to_string(entries_.size() + 1) + " (" + describe(entry) + ")");
    index_.emplace(std::move(key), entries_.size());
    entries_.push_back(std::move(entry));
}

const DictEntry* BilingualDictionary::find(std::string_view lemma, std::string_view category) const {
    auto it = index_.find(std::make_pair(std::string(lemma), std::string(category)));
    return it == index_.end() ? nullptr : &entries_[it->second];
}

const DictEntry* BilingualDictionary::match(const LexicalForm& sl) const {
    const DictEntry* e = find(sl.lemma, sl.category);
    if (e == nullptr || !is_prefix(e->sl.tags, sl.inflection)) return nullptr;
    return e;
}

std::optional<Translation> BilingualDictionary::lookup(const LexicalForm& sl) const {
    const DictEntry* e = match(sl);
    if (e == nullptr) return std::nullopt;
    Translation t{e->tl.lemma, e->tl.category, sl.inflection, e};
    // Only changed inflection is coded: the entry's TL tags override the
    // leading slots of the SL word's tags.
    for (std::size_t k = 0; k < e->tl.tags.size(); ++k) {
        if (k < t.tags.size())
            t.tags[k] = e->tl.tags[k];
        else
            t.tags.push_back(e->tl.tags[k]);
    }
    return t;
}

// ---------------------------------------------------------------------------
// XML subset reader

namespace {

class XmlReader {
  public:
    explicit XmlReader(std::string_view text) : text_(text) {}

    BilingualDictionary parse() {
        skip_misc();
        if (!starts_with("<dic")) fail("expected <dic> root element");
        auto root = read_open_tag();
        BilingualDictionary dict;
        if (root.self_closing) {
            skip_misc();
            if (pos_ < text_.size()) fail("content after </dic>");
            return dict;
        }
        std::size_t index = 0;
        for (;;) {
            skip_misc();
            if (starts_with("</dic")) {
                read_close_tag("dic");
                break;
            }
            if (!starts_with("<e")) fail("expected <e> or </dic>");
            ++index;
            dict.add(read_entry(index));
        }
        skip_misc();
        if (pos_ < text_.size()) fail("content after </dic>");
        return dict;
    }

  private:
    struct Tag {
        std::string name;
        std::string n_attr;
        bool self_closing = false;
    };

    [[noreturn]] void fail(const std::string& what, std::size_t entry = 0) const {
        std::size_t line = 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(std::min(pos_, text_.size())), '\n'));
        std::string msg = "dictionary line " + std::to_string(line);
        if (entry > 0) msg += ", entry " + std::to_string(entry);
        throw DataError(msg + ": " + what);
    }

    bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    void skip_misc() {
        for (;;) {
            skip_space();
            if (starts_with("<?")) {
                auto end = text_.find("?>", pos_);
                if (end == std::string_view::npos) fail("unterminated processing instruction");
                pos_ = end + 2;
            } else if (starts_with("<!--")) {
                auto end = text_.find("-->", pos_);
                if (end == std::string_view::npos) fail("unterminated comment");
                pos_ = end + 3;
            } else {
                return;
            }
        }
    }

    static std::string decode(std::string_view raw) {
        std::string out;
        for (std::size_t k = 0; k < raw.size(); ++k) {
            if (raw[k] != '&') {
                out += raw[k];
                continue;
            }
            auto semi = raw.find(';', k);
            std::string_view ent = raw.substr(k + 1, semi == std::string_view::npos ? 0 : semi - k - 1);
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else throw DataError("unsupported XML entity '&" + std::string(ent) + ";'");
            k = semi;
        }
        return out;
    }

    Tag read_open_tag() {
        Tag tag;
        ++pos_;  // '<'
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tag.name = std::string(text_.substr(start, pos_ - start));
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) fail("unterminated <" + tag.name + ">");
            if (starts_with("/>")) {
                pos_ += 2;
                tag.self_closing = true;
                return tag;
            }
            if (text_[pos_] == '>') {
                ++pos_;
                return tag;
            }
            std::size_t name_start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '=' && text_[pos_] != '>' && text_[pos_] != '/' &&
                   text_[pos_] != ' ')
                ++pos_;
            std::string attr(text_.substr(name_start, pos_ - name_start));
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != '=') fail("malformed attribute in <" + tag.name + ">");
            ++pos_;
            skip_space();
            if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) fail("unquoted attribute value");
            char quote = text_[pos_++];
            auto end = text_.find(quote, pos_);
            if (end == std::string_view::npos) fail("unterminated attribute value");
            std::string value = decode(text_.substr(pos_, end - pos_));
            pos_ = end + 1;
            if (attr == "n") tag.n_attr = value;
        }
    }

    void read_close_tag(std::string_view name) {
        std::string expected = "</" + std::string(name);
        if (!starts_with(expected)) fail("expected " + expected + ">");
        pos_ += expected.size();
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '>') fail("malformed closing tag " + expected + ">");
        ++pos_;
    }

    void expect_open(std::string_view name, std::size_t entry) {
        skip_misc();
        if (!starts_with("<" + std::string(name))) fail("expected <" + std::string(name) + ">", entry);
        auto tag = read_open_tag();
        if (tag.name != name || tag.self_closing) fail("expected <" + std::string(name) + ">", entry);
    }

    DictSide read_side(std::string_view name, std::size_t entry) {
        expect_open(name, entry);
        DictSide side;
        bool saw_symbol = false;
        for (;;) {
            if (pos_ >= text_.size()) fail("unterminated <" + std::string(name) + ">", entry);
            if (starts_with("</")) {
                read_close_tag(name);
                break;
            }
            if (starts_with("<s")) {
                auto tag = read_open_tag();
                if (tag.name != "s" || !tag.self_closing || tag.n_attr.empty())
                    fail("expected <s n=\"...\"/>", entry);
                if (!valid_tag(tag.n_attr)) fail("invalid tag '" + tag.n_attr + "'", entry);
                if (!saw_symbol)
                    side.category = tag.n_attr;
                else
                    side.tags.push_back(tag.n_attr);
                saw_symbol = true;
                continue;
            }
            if (text_[pos_] == '<') fail("unexpected element inside <" + std::string(name) + ">", entry);
            auto next = text_.find('<', pos_);
            if (next == std::string_view::npos) next = text_.size();
            if (saw_symbol) {
                auto chunk = text_.substr(pos_, next - pos_);
                if (chunk.find_first_not_of(" \t\r\n") != std::string_view::npos)
                    fail("lemma text after <s> element", entry);
            } else {
                side.lemma += decode(text_.substr(pos_, next - pos_));
            }
            pos_ = next;
        }
        auto first = side.lemma.find_first_not_of(" \t\r\n");
        auto last = side.lemma.find_last_not_of(" \t\r\n");
        side.lemma = first == std::string::npos ? "" : side.lemma.substr(first, last - first + 1);
        if (side.lemma.empty()) fail("missing lemma in <" + std::string(name) + ">", entry);
        if (side.category.empty()) fail("missing category <s> in <" + std::string(name) + ">", entry);
        return side;
    }

    DictEntry read_entry(std::size_t index) {
        expect_open("e", index);
        expect_open("p", index);
        DictEntry entry;
        entry.sl = read_side("l", index);
        skip_misc();
        entry.tl = read_side("r", index);
        skip_misc();
        read_close_tag("p");
        skip_misc();
        read_close_tag("e");
        return entry;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string encode(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void format_side(std::string& out, const DictSide& side) {
    out += encode(side.lemma);
    out += "<s n=\"" + encode(side.category) + "\"/>";
    for (const auto& t : side.tags) out += "<s n=\"" + encode(t) + "\"/>";
}

}  // namespace

BilingualDictionary parse_dictionary(std::string_view xml) { return XmlReader(xml).parse(); }

std::string format_dictionary(const BilingualDictionary& dict) {
    std::string out = "<dic>\n";
    for (const auto& e : dict.entries()) {
        out += "  <e><p><l>";
        format_side(out, e.sl);
        out += "</l><r>";
        format_side(out, e.tl);
        out += "</r></p></e>\n";
    }
    out += "</dic>\n";
    return out;
}

// ---------------------------------------------------------------------------
// Restrictions

std::string to_string(const Restriction& r) { return dotted(r.category, r.tag_prefix) + ".*"; }

Restriction parse_restriction(std::string_view text) {
    if (!text.ends_with(".*")) throw DataError("restriction '" + std::string(text) + "' must end with '.*'");
    text.remove_suffix(2);
    Restriction r;
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        auto dot = text.find('.', start);
        parts.emplace_back(text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    for (const auto& p : parts)
        if (!valid_tag(p)) throw DataError("restriction has an invalid tag '" + p + "'");
    r.category = parts.front();
    r.tag_prefix.assign(parts.begin() + 1, parts.end());
    return r;
}

Restriction derive_restriction(const DictEntry& entry) { return {entry.tl.category, entry.tl.tags}; }

bool restriction_satisfied(const Restriction& r, std::string_view tl_category, const std::vector<std::string>& tl_tags) {
    return r.category == tl_category && is_prefix(r.tag_prefix, tl_tags);
}

bool is_lexicalized(const LexicalForm& w, const CategorySet& lexicalized_cats) {
    return std::find(lexicalized_cats.begin(), lexicalized_cats.end(), w.category) != lexicalized_cats.end();
}

std::optional<std::size_t> lemma_source(const AlignmentMatrix& alignment, const std::vector<bool>& sl_lexicalized,
                                        std::size_t target) {
    std::optional<std::size_t> fallback;
    for (auto it = alignment.links().lower_bound({target, 0}); it != alignment.links().end() && it->target == target; ++it) {
        if (!sl_lexicalized[it->source]) return it->source;
        if (!fallback) fallback = it->source;
    }
    return fallback;
}

bool reproducible(const BilingualDictionary& dict, const BilingualPhrasePair& phrase, const CategorySet& lexicalized_cats) {
    std::vector<bool> sl_lex(phrase.source.size());
    std::vector<std::optional<Translation>> translations(phrase.source.size());
    for (std::size_t j = 0; j < phrase.source.size(); ++j) {
        sl_lex[j] = is_lexicalized(phrase.source[j], lexicalized_cats);
        if (!sl_lex[j]) {
            translations[j] = dict.lookup(phrase.source[j]);
            if (!translations[j]) return false;
        }
    }
    for (const auto& l : phrase.alignment.links()) {
        if (sl_lex[l.source] || is_lexicalized(phrase.target[l.target], lexicalized_cats)) continue;
        if (translations[l.source]->lemma != phrase.target[l.target].lemma) return false;
    }
    for (std::size_t i = 0; i < phrase.target.size(); ++i) {
        if (is_lexicalized(phrase.target[i], lexicalized_cats)) continue;
        auto j = lemma_source(phrase.alignment, sl_lex, i);
        if (!j) continue;
        if (!translations[*j]) {
            translations[*j] = dict.lookup(phrase.source[*j]);
            if (!translations[*j]) return false;
        }
        if (translations[*j]->lemma != phrase.target[i].lemma) return false;
    }
    return true;
}

}  // namespace ruleinfer
