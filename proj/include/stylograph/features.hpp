#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylograph/network.hpp"

namespace stylo {

enum class Characteristic {
    degree,
    strength,
    clustering_u,
    clustering_w,
    path_u,
    path_w,
    assortativity_u,
    assortativity_w,
    modularity_u,
    modularity_w,
};

// Short mnemonic used in headers and CLI flags: deg, str, C_u, C_w, ell_u,
// ell_w, r_u, r_w, Q_u, Q_w.
std::string_view characteristic_name(Characteristic c);
Characteristic parse_characteristic(std::string_view name);
std::vector<Characteristic> parse_characteristic_list(std::string_view csv);

// Valid in local (per-vertex) feature mode: deg, str, C, ell variants.
bool is_local_characteristic(Characteristic c);
// Valid in global mode: C, ell, r, Q variants.
bool is_global_characteristic(Characteristic c);

struct NormalizationConfig {
    int k = 50;                  // shuffled baselines per document
    std::uint64_t base_seed = 1;
};

struct FeatureMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> row_labels;
    std::vector<std::string> columns;
    std::vector<double> values;         // row-major; masked entries are NaN
    std::vector<std::uint8_t> defined;  // parallel mask, 1 = present

    std::size_t rows() const { return row_ids.size(); }
    std::size_t cols() const { return columns.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
    bool is_defined(std::size_t r, std::size_t c) const { return defined[r * cols() + c] != 0; }
    void set(std::size_t r, std::size_t c, double v);
    void set_missing(std::size_t r, std::size_t c);
    static FeatureMatrix empty(std::vector<std::string> row_ids, std::vector<std::string> row_labels,
                               std::vector<std::string> columns);

    // Tab-separated, masked entries as "na", shortest round-trip numerals;
    // save/load is bit-exact.
    void save(std::ostream& out) const;
    void save(const std::filesystem::path& path) const;
    static FeatureMatrix load(std::istream& in);
    static FeatureMatrix load(const std::filesystem::path& path);
};

// value / mean(baseline); empty result when |mean| < 1e-12. Errors on an
// empty baseline list.
std::optional<double> normalize_characteristic(double value, std::span<const double> baseline_values);

// str(v) / sum of all strengths; equals the token's relative adjacency share.
double normalized_strength(const Network& net, VertexId v);

// The n tokens with the highest total frequency over the streams; ties break
// lexicographically. Without punctuation, word tokens fill the freed ranks.
std::vector<std::string> top_words(std::span<const TokenStream> streams, std::size_t n,
                                   bool include_punctuation);

struct DocInput {
    TokenStream stream;
    std::string id;
    std::string author;
    std::string language;
};

struct GlobalFeatureOptions {
    std::vector<Characteristic> characteristics;  // global kinds only
    NormalizationConfig norm;
    int louvain_restarts = 1;
    unsigned threads = 0;
};

// One row per document: each characteristic on the document network divided
// by its mean over k seeded shuffle baselines. Undefined values are masked.
FeatureMatrix global_features(std::span<const DocInput> docs, const GlobalFeatureOptions& options);

struct LocalFeatureOptions {
    std::vector<Characteristic> characteristics;  // local kinds only
    std::size_t words = 12;
    bool include_punctuation = true;
    NormalizationConfig norm;
    unsigned threads = 0;
};

struct LocalFeatureResult {
    FeatureMatrix matrix;
    // language -> its ranked word list (top-word lists are per language).
    std::vector<std::pair<std::string, std::vector<std::string>>> words_by_language;
};

// Columns are characteristic-major: <char>@1 .. <char>@n. str columns hold
// the relative frequency itself; the others hold the shuffle-baseline ratio.
// A ranked word missing from a document masks that document's entries.
LocalFeatureResult local_features(std::span<const DocInput> docs, const LocalFeatureOptions& options);

}  // namespace stylo
