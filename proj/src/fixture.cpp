#include "ruleinfer/fixture.hpp"

#include <array>
#include <string>

#include "random.hpp"

namespace ruleinfer {

namespace {

struct NounEntry {
    const char* sl;
    const char* tl;
    const char* sl_gender;
    const char* tl_gender;
};

constexpr std::array<NounEntry, 6> kMasculine{{
    {"perro", "gos", "m", "m"},
    {"libro", "llibre", "m", "m"},
    {"coche", "cotxe", "m", "m"},
    {"gato", "gat", "m", "m"},
    {"mercado", "mercat", "m", "m"},
    {"vaso", "got", "m", "m"},
}};

constexpr std::array<NounEntry, 5> kFeminine{{
    {"casa", "casa", "f", "f"},
    {"mesa", "taula", "f", "f"},
    {"silla", "cadira", "f", "f"},
    {"ventana", "finestra", "f", "f"},
    {"ciudad", "ciutat", "f", "f"},
}};

constexpr std::array<NounEntry, 5> kFlipped{{
    {"calle", "carrer", "f", "m"},
    {"senal", "senyal", "f", "m"},
    {"costumbre", "costum", "f", "m"},
    {"nariz", "nas", "f", "m"},
    {"cumbre", "cim", "f", "m"},
}};

struct Pair {
    const char* sl;
    const char* tl;
};

constexpr std::array<Pair, 5> kAdjectives{{
    {"rojo", "vermell"}, {"grande", "gran"}, {"nuevo", "nou"}, {"viejo", "vell"}, {"blanco", "blanc"},
}};

constexpr std::array<Pair, 6> kVerbs{{
    {"vivir", "viure"}, {"comer", "menjar"}, {"ver", "veure"},
    {"comprar", "comprar"}, {"llevar", "portar"}, {"encontrar", "trobar"},
}};

constexpr std::array<Pair, 5> kPlaces{{
    {"Francia", "França"}, {"Madrid", "Madrid"}, {"Italia", "Itàlia"}, {"Londres", "Londres"}, {"Roma", "Roma"},
}};

constexpr std::array<Pair, 4> kUnknownNouns{{
    {"zorblat", "zorblat"}, {"quimbo", "quimbo"}, {"drelta", "drelta"}, {"fanuk", "fanuk"},
}};

using Rng = std::mt19937_64;

template <class Array>
const auto& pick(Rng& rng, const Array& a) {
    return a[detail::draw(rng, a.size())];
}

LexicalForm form(std::string lemma, std::string category, std::vector<std::string> tags) {
    return {std::move(lemma), std::move(category), std::move(tags), false};
}

struct Builder {
    Sentence sl;
    Sentence tl;
};

// Appends det + noun (+ adj); returns the SL number so verbs can agree.
std::string noun_phrase(Rng& rng, Builder& b, const FixtureOptions& opt) {
    const NounEntry* noun = nullptr;
    if (detail::chance(rng, 0.5)) {
        noun = &pick(rng, kMasculine);
    } else {
        noun = detail::chance(rng, opt.flip_share) ? &pick(rng, kFlipped) : &pick(rng, kFeminine);
    }
    std::string number = detail::chance(rng, 0.7) ? "sg" : "pl";
    std::string article = detail::chance(rng, 0.7) ? "def" : "ind";
    std::string article_lemma = article == "def" ? "el" : "un";
    bool oov = opt.oov_rate > 0.0 && detail::chance(rng, opt.oov_rate);

    b.sl.push_back(form(article_lemma, "det", {article, noun->sl_gender, number}));
    b.tl.push_back(form(article_lemma, "det", {article, noun->tl_gender, number}));
    if (oov) {
        const auto& u = pick(rng, kUnknownNouns);
        b.sl.push_back(form(u.sl, "noun", {noun->sl_gender, number}));
        b.tl.push_back(form(u.tl, "noun", {noun->tl_gender, number}));
    } else {
        b.sl.push_back(form(noun->sl, "noun", {noun->sl_gender, number}));
        b.tl.push_back(form(noun->tl, "noun", {noun->tl_gender, number}));
    }
    if (detail::chance(rng, 0.6)) {
        const auto& adj = pick(rng, kAdjectives);
        b.sl.push_back(form(adj.sl, "adj", {noun->sl_gender, number}));
        b.tl.push_back(form(adj.tl, "adj", {noun->tl_gender, number}));
    }
    return number;
}

void verb(Rng& rng, Builder& b, const std::string& number) {
    const auto& v = pick(rng, kVerbs);
    if (detail::chance(rng, 0.5)) {
        b.sl.push_back(form(v.sl, "verb", {"pres", "3rd", number}));
        b.tl.push_back(form(v.tl, "verb", {"pres", "3rd", number}));
    } else {
        b.sl.push_back(form(v.sl, "verb", {"pret", "3rd", number}));
        b.tl.push_back(form("anar", "vaux", {"pres", "3rd", number}));
        b.tl.push_back(form(v.tl, "verb", {"inf"}));
    }
}

void prepositional_phrase(Rng& rng, Builder& b, const FixtureOptions& opt) {
    double roll = static_cast<double>(detail::draw(rng, 1000)) / 1000.0;
    if (roll < 0.5) {
        const auto& place = pick(rng, kPlaces);
        b.sl.push_back(form("en", "pr", {}));
        b.tl.push_back(form("a", "pr", {}));
        b.sl.push_back(form(place.sl, "noun", {"loc"}));
        b.tl.push_back(form(place.tl, "noun", {"loc"}));
    } else if (roll < 0.75) {
        b.sl.push_back(form("en", "pr", {}));
        b.tl.push_back(form("en", "pr", {}));
        noun_phrase(rng, b, opt);
    } else {
        b.sl.push_back(form("con", "pr", {}));
        b.tl.push_back(form("amb", "pr", {}));
        noun_phrase(rng, b, opt);
    }
}

DictEntry entry(const char* sl, const char* tl, const char* category, std::vector<std::string> sl_tags = {},
                std::vector<std::string> tl_tags = {}) {
    return {{sl, category, std::move(sl_tags)}, {tl, category, std::move(tl_tags)}};
}

}  // namespace

std::vector<SentencePair> generate_fixture(const FixtureOptions& options) {
    Rng rng(detail::splitmix64(options.seed));
    std::vector<SentencePair> pairs;
    pairs.reserve(options.sentences);
    for (std::size_t k = 0; k < options.sentences; ++k) {
        Builder b;
        auto number = noun_phrase(rng, b, options);
        verb(rng, b, number);
        if (detail::chance(rng, 0.5)) noun_phrase(rng, b, options);
        if (detail::chance(rng, 0.7)) prepositional_phrase(rng, b, options);
        pairs.push_back({std::move(b.sl), std::move(b.tl), k + 1});
    }
    return pairs;
}

BilingualDictionary fixture_dictionary() {
    BilingualDictionary dict;
    dict.add(entry("el", "el", "det"));
    dict.add(entry("un", "un", "det"));
    dict.add(entry("en", "en", "pr"));
    dict.add(entry("con", "amb", "pr"));
    for (const auto& n : kMasculine) dict.add(entry(n.sl, n.tl, "noun"));
    for (const auto& n : kFeminine) dict.add(entry(n.sl, n.tl, "noun"));
    for (const auto& n : kFlipped) dict.add(entry(n.sl, n.tl, "noun", {"f"}, {"m"}));
    for (const auto& a : kAdjectives) dict.add(entry(a.sl, a.tl, "adj"));
    for (const auto& v : kVerbs) dict.add(entry(v.sl, v.tl, "verb"));
    for (const auto& p : kPlaces) dict.add(entry(p.sl, p.tl, "noun"));
    return dict;
}

CategorySet fixture_lexicalized_categories() { return {"det", "pr", "vaux"}; }

}  // namespace ruleinfer
