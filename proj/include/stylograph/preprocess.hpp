#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Reserved surfaces for the punctuation marks that act as regular words.
inline constexpr std::array<std::string_view, 10> kPunctuationTokens = {
    "#dot", "#qst", "#exc", "#ell", "#com", "#dsh", "#col", "#scl", "#lbr", "#rbr"};

bool is_punctuation_token(std::string_view token);

struct PreprocessConfig {
    // Strip square-bracketed editorial notes ("[Illustration]") before tokenizing.
    bool remove_annotations = false;
    // Drop the dash that opens a quotation line (Polish dialogue convention).
    bool drop_quotation_dashes = true;
    // Words whose trailing full stop is an abbreviation mark, not a sentence end.
    std::vector<std::string> abbreviations;

    static PreprocessConfig english();
    static PreprocessConfig polish();
    static PreprocessConfig for_language(std::string_view language);
};

// Reads one abbreviation per line; '#' starts a comment, blanks ignored.
std::vector<std::string> load_abbreviations(const std::filesystem::path& path);

struct TokenStream {
    std::string source_id;
    std::vector<std::string> tokens;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
};

// Lowercases, collapses whitespace runs to single spaces, and applies the
// configured annotation / quotation-dash removals. Raw text must be UTF-8.
std::string normalize_text(std::string_view raw, const PreprocessConfig& config);

// Splits normalized text into word tokens and reserved punctuation tokens.
std::vector<std::string> tokenize_text(std::string_view text, const PreprocessConfig& config);
TokenStream tokenize(std::string_view text, const PreprocessConfig& config, std::string source_id = {});

// Uniform seeded permutation of the whole stream, punctuation included.
TokenStream shuffle_tokens(const TokenStream& stream, std::uint64_t seed);

}  // namespace stylo
