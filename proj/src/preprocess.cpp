#include "stylograph/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "stylograph/common.hpp"
#include "stylograph/unicode.hpp"

namespace stylo {

namespace {

// The built-in abbreviation defaults; a config file can replace them.
const char* const kEnglishAbbrev[] = {
    "mr", "mrs", "ms", "dr", "prof", "rev", "st", "mt", "messrs", "jr", "sr",
    "capt", "col", "gen", "lieut", "maj", "sgt", "hon", "esq", "no", "vol",
    "ch", "chap", "pp", "etc", "vs", "viz", "cf", "al", "op", "cit", "ibid",
};
const char* const kPolishAbbrev[] = {
    "np", "itp", "itd", "tzw", "tzn", "tj", "dr", "prof", "hab", "mgr",
    "inż", "św", "ks", "pt", "ww", "jw", "nr", "ul", "godz", "zob", "cyt",
    "wyd", "r", "w", "s", "m", "in",
};

bool is_dash(char32_t cp) {
    return cp == '-' || cp == 0x2010 || cp == 0x2011 || cp == 0x2012 || cp == 0x2013 ||
           cp == 0x2014 || cp == 0x2015;
}

// Dashes that may sit inside a word ("well-known"); en/em dashes may not.
bool is_hyphen(char32_t cp) { return cp == '-' || cp == 0x2010 || cp == 0x2011; }

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

bool is_word_char(char32_t cp) { return is_letter(cp) || is_digit(cp); }

bool is_open_bracket(char32_t cp) { return cp == '(' || cp == '[' || cp == '{'; }
bool is_close_bracket(char32_t cp) { return cp == ')' || cp == ']' || cp == '}'; }

std::vector<std::string> make_list(const char* const* begin, std::size_t n) {
    return std::vector<std::string>(begin, begin + n);
}

}  // namespace

bool is_punctuation_token(std::string_view token) {
    for (auto p : kPunctuationTokens) {
        if (token == p) return true;
    }
    return false;
}

PreprocessConfig PreprocessConfig::english() {
    PreprocessConfig c;
    c.abbreviations = make_list(kEnglishAbbrev, std::size(kEnglishAbbrev));
    return c;
}

PreprocessConfig PreprocessConfig::polish() {
    PreprocessConfig c;
    c.abbreviations = make_list(kPolishAbbrev, std::size(kPolishAbbrev));
    return c;
}

PreprocessConfig PreprocessConfig::for_language(std::string_view language) {
    if (language == "pl" || language == "pol" || language == "polish") return polish();
    return english();
}

std::vector<std::string> load_abbreviations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("file not found: " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t");
        out.push_back(line.substr(a, b - a + 1));
    }
    return out;
}

std::string normalize_text(std::string_view raw, const PreprocessConfig& config) {
    // Pass 1 works on raw lines so that quotation dashes can still be
    // recognized by their line-initial position before whitespace collapses.
    std::string out;
    out.reserve(raw.size());
    std::size_t pos = 0;
    bool at_line_start = true;
    bool pending_space = false;
    bool any_output = false;

    auto emit = [&](char32_t cp) {
        if (pending_space && any_output) out.push_back(' ');
        pending_space = false;
        any_output = true;
        encode_utf8(cp, out);
    };

    while (pos < raw.size()) {
        char32_t cp = decode_utf8(raw, pos);
        if (cp == kInvalidCodepoint) continue;  // callers validate; be lenient here
        if (config.remove_annotations && cp == '[') {
            auto close = raw.find(']', pos);
            if (close != std::string_view::npos) {
                pos = close + 1;
                pending_space = true;
                continue;
            }
            // No closing bracket: not an annotation, keep the character.
        }
        if (is_space(cp)) {
            pending_space = true;
            if (cp == '\n' || cp == '\r' || cp == 0x2028 || cp == 0x2029) at_line_start = true;
            continue;
        }
        if (config.drop_quotation_dashes && at_line_start && is_dash(cp)) {
            // Swallow the whole dash run that opens the line.
            std::size_t look = pos;
            while (look < raw.size()) {
                std::size_t next = look;
                char32_t cp2 = decode_utf8(raw, next);
                if (!is_dash(cp2)) break;
                look = next;
            }
            pos = look;
            pending_space = true;
            continue;
        }
        at_line_start = false;
        emit(to_lower(cp));
    }
    return out;
}

namespace {

struct Tokenizer {
    std::string_view text;
    const PreprocessConfig& config;
    std::unordered_set<std::string_view> abbrev;
    std::vector<std::string> tokens;
    std::string word;

    explicit Tokenizer(std::string_view t, const PreprocessConfig& c) : text(t), config(c) {
        for (const auto& a : c.abbreviations) abbrev.insert(a);
    }

    void flush_word() {
        if (!word.empty()) {
            tokens.push_back(word);
            word.clear();
        }
    }

    void push_mark(std::string_view mark) {
        flush_word();
        tokens.emplace_back(mark);
    }

    // True when the token the dot would follow is a listed abbreviation;
    // the token may still be pending in `word`.
    bool after_abbreviation() const {
        if (!word.empty()) return abbrev.count(word) > 0;
        if (!tokens.empty()) return abbrev.count(tokens.back()) > 0;
        return false;
    }

    // Peeks whether text[pos..] starts a reserved surface like "#dot" at a
    // token boundary; needed so that re-tokenizing serialized tokens is a
    // fixed point.
    std::string_view reserved_at(std::size_t pos) const {
        for (auto p : kPunctuationTokens) {
            if (text.compare(pos, p.size(), p) != 0) continue;
            std::size_t after = pos + p.size();
            if (after >= text.size()) return p;
            std::size_t look = after;
            char32_t next = decode_utf8(text, look);
            if (!is_word_char(to_lower(next)) && !is_apostrophe(next)) return p;
        }
        return {};
    }

    void run() {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t start = pos;
            char32_t cp = decode_utf8(text, pos);
            if (cp == kInvalidCodepoint) continue;
            cp = to_lower(cp);

            if (is_word_char(cp)) {
                encode_utf8(cp, word);
                continue;
            }
            if (is_apostrophe(cp) || is_hyphen(cp)) {
                // Inside a word only: surrounded by word characters and not
                // part of a longer dash run.
                bool joins = !word.empty();
                if (joins && pos < text.size()) {
                    std::size_t look = pos;
                    char32_t next = decode_utf8(text, look);
                    joins = is_word_char(to_lower(next));
                } else {
                    joins = false;
                }
                if (joins && is_hyphen(cp)) {
                    encode_utf8('-', word);
                    continue;
                }
                if (joins && is_apostrophe(cp)) {
                    encode_utf8('\'', word);
                    continue;
                }
                if (is_hyphen(cp)) {
                    dash_run(start);
                    pos = dash_end;
                    continue;
                }
                flush_word();  // stray apostrophe: a removed quotation mark
                continue;
            }
            if (cp == '.') {
                std::size_t dots = 1;
                std::size_t look = pos;
                while (look < text.size() && text[look] == '.') {
                    ++dots;
                    ++look;
                }
                pos = look;
                bool abbreviated = after_abbreviation();
                if (dots >= 2) {
                    push_mark("#ell");
                } else if (abbreviated) {
                    flush_word();  // the stop belongs to the abbreviation; drop it
                } else {
                    push_mark("#dot");
                }
                continue;
            }
            if (cp == 0x2026) {  // single-character ellipsis
                push_mark("#ell");
                continue;
            }
            if (cp == '?') { push_mark("#qst"); continue; }
            if (cp == '!') { push_mark("#exc"); continue; }
            if (cp == ',') { push_mark("#com"); continue; }
            if (cp == ':') { push_mark("#col"); continue; }
            if (cp == ';') { push_mark("#scl"); continue; }
            if (is_dash(cp)) {
                dash_run(start);
                pos = dash_end;
                continue;
            }
            if (is_open_bracket(cp)) { push_mark("#lbr"); continue; }
            if (is_close_bracket(cp)) { push_mark("#rbr"); continue; }
            if (cp == '#') {
                std::string_view mark = reserved_at(start);
                if (!mark.empty()) {
                    push_mark(mark);
                    pos = start + mark.size();
                }
                continue;  // a bare '#' is just removed
            }
            flush_word();  // whitespace and every unlisted symbol separate words
        }
        flush_word();
    }

    std::size_t dash_end = 0;

    // A maximal dash run maps to one #dsh ("--" is a typeset em dash), except
    // at the very start of the stream where it opens a quotation.
    void dash_run(std::size_t start) {
        std::size_t look = start;
        while (look < text.size()) {
            std::size_t next = look;
            char32_t cp = decode_utf8(text, next);
            if (!is_dash(cp)) break;
            look = next;
        }
        dash_end = look;
        if (config.drop_quotation_dashes && word.empty() && tokens.empty()) return;
        push_mark("#dsh");
    }
};

}  // namespace

std::vector<std::string> tokenize_text(std::string_view text, const PreprocessConfig& config) {
    Tokenizer t(text, config);
    t.run();
    return std::move(t.tokens);
}

TokenStream tokenize(std::string_view text, const PreprocessConfig& config, std::string source_id) {
    TokenStream stream;
    stream.source_id = std::move(source_id);
    stream.tokens = tokenize_text(text, config);
    return stream;
}

TokenStream shuffle_tokens(const TokenStream& stream, std::uint64_t seed) {
    if (stream.empty()) throw std::invalid_argument("shuffle_tokens: empty stream");
    TokenStream out;
    out.source_id = stream.source_id;
    out.tokens = stream.tokens;
    Rng rng(seed);
    rng.shuffle(out.tokens);
    return out;
}

}  // namespace stylo
