#include "stylograph/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "stylograph/common.hpp"
#include "stylograph/metrics.hpp"

namespace stylo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CharName {
    Characteristic c;
    std::string_view name;
};

constexpr CharName kCharNames[] = {
    {Characteristic::degree, "deg"},
    {Characteristic::strength, "str"},
    {Characteristic::clustering_u, "C_u"},
    {Characteristic::clustering_w, "C_w"},
    {Characteristic::path_u, "ell_u"},
    {Characteristic::path_w, "ell_w"},
    {Characteristic::assortativity_u, "r_u"},
    {Characteristic::assortativity_w, "r_w"},
    {Characteristic::modularity_u, "Q_u"},
    {Characteristic::modularity_w, "Q_w"},
};

}  // namespace

std::string_view characteristic_name(Characteristic c) {
    for (const auto& e : kCharNames) {
        if (e.c == c) return e.name;
    }
    throw std::invalid_argument("unknown characteristic");
}

Characteristic parse_characteristic(std::string_view name) {
    for (const auto& e : kCharNames) {
        if (e.name == name) return e.c;
    }
    throw std::invalid_argument("unknown characteristic: " + std::string(name));
}

std::vector<Characteristic> parse_characteristic_list(std::string_view csv) {
    std::vector<Characteristic> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto comma = csv.find(',', start);
        auto end = comma == std::string_view::npos ? csv.size() : comma;
        auto item = csv.substr(start, end - start);
        if (!item.empty()) out.push_back(parse_characteristic(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool is_local_characteristic(Characteristic c) {
    switch (c) {
        case Characteristic::degree:
        case Characteristic::strength:
        case Characteristic::clustering_u:
        case Characteristic::clustering_w:
        case Characteristic::path_u:
        case Characteristic::path_w:
            return true;
        default:
            return false;
    }
}

bool is_global_characteristic(Characteristic c) {
    switch (c) {
        case Characteristic::clustering_u:
        case Characteristic::clustering_w:
        case Characteristic::path_u:
        case Characteristic::path_w:
        case Characteristic::assortativity_u:
        case Characteristic::assortativity_w:
        case Characteristic::modularity_u:
        case Characteristic::modularity_w:
            return true;
        default:
            return false;
    }
}

void FeatureMatrix::set(std::size_t r, std::size_t c, double v) {
    values[r * cols() + c] = v;
    defined[r * cols() + c] = 1;
}

void FeatureMatrix::set_missing(std::size_t r, std::size_t c) {
    values[r * cols() + c] = kNaN;
    defined[r * cols() + c] = 0;
}

FeatureMatrix FeatureMatrix::empty(std::vector<std::string> row_ids, std::vector<std::string> row_labels,
                                   std::vector<std::string> columns) {
    FeatureMatrix m;
    m.row_ids = std::move(row_ids);
    m.row_labels = std::move(row_labels);
    m.columns = std::move(columns);
    if (m.row_ids.size() != m.row_labels.size()) {
        throw std::invalid_argument("FeatureMatrix: ids and labels differ in length");
    }
    m.values.assign(m.rows() * m.cols(), kNaN);
    m.defined.assign(m.rows() * m.cols(), 0);
    return m;
}

void FeatureMatrix::save(std::ostream& out) const {
    out << "id\tauthor";
    for (const auto& c : columns) out << "\t" << c;
    out << "\n";
    for (std::size_t r = 0; r < rows(); ++r) {
        out << row_ids[r] << "\t" << row_labels[r];
        for (std::size_t c = 0; c < cols(); ++c) {
            out << "\t" << (is_defined(r, c) ? format_double(at(r, c)) : "na");
        }
        out << "\n";
    }
}

void FeatureMatrix::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    save(out);
}

FeatureMatrix FeatureMatrix::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("feature matrix: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    {
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            header.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
    }
    if (header.size() < 2 || header[0] != "id" || header[1] != "author") {
        throw std::runtime_error("feature matrix: header must start with id\tauthor");
    }
    FeatureMatrix m;
    m.columns.assign(header.begin() + 2, header.end());
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() != m.columns.size() + 2) {
            throw std::runtime_error("feature matrix: wrong field count in row");
        }
        m.row_ids.push_back(fields[0]);
        m.row_labels.push_back(fields[1]);
        for (std::size_t c = 0; c < m.columns.size(); ++c) {
            const std::string& f = fields[c + 2];
            if (f == "na") {
                m.values.push_back(kNaN);
                m.defined.push_back(0);
            } else {
                double v = 0.0;
                auto res = std::from_chars(f.data(), f.data() + f.size(), v);
                if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
                    throw std::runtime_error("feature matrix: bad number: " + f);
                }
                m.values.push_back(v);
                m.defined.push_back(1);
            }
        }
    }
    return m;
}

FeatureMatrix FeatureMatrix::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file not found: " + path.string());
    return load(in);
}

std::optional<double> normalize_characteristic(double value, std::span<const double> baseline_values) {
    if (baseline_values.empty()) {
        throw std::invalid_argument("normalize_characteristic: empty baseline");
    }
    double mean = mean_of(baseline_values);
    if (std::abs(mean) < 1e-12) return std::nullopt;
    return value / mean;
}

double normalized_strength(const Network& net, VertexId v) {
    std::int64_t total = 2 * net.total_weight();  // handshake: sum of strengths
    if (total == 0) throw std::invalid_argument("normalized_strength: network has no edges");
    return static_cast<double>(net.strength(v)) / static_cast<double>(total);
}

std::vector<std::string> top_words(std::span<const TokenStream> streams, std::size_t n,
                                   bool include_punctuation) {
    std::unordered_map<std::string, std::int64_t> counts;
    for (const auto& s : streams) {
        for (const auto& t : s.tokens) counts[t] += 1;
    }
    std::vector<std::pair<std::string, std::int64_t>> ranked;
    ranked.reserve(counts.size());
    for (auto& [token, count] : counts) {
        if (!include_punctuation && is_punctuation_token(token)) continue;
        ranked.push_back({token, count});
    }
    if (ranked.size() < n) {
        throw std::runtime_error("top_words: need " + std::to_string(n) + " distinct tokens, have " +
                                 std::to_string(ranked.size()));
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(ranked[i].first);
    return out;
}

namespace {

std::uint64_t shuffle_seed(const NormalizationConfig& norm, const std::string& doc_id, std::uint64_t index) {
    return derive_seed(norm.base_seed, "shuffle", fnv1a64(doc_id), index);
}

std::uint64_t louvain_seed(const NormalizationConfig& norm, const std::string& doc_id, std::uint64_t index) {
    return derive_seed(norm.base_seed, "louvain", fnv1a64(doc_id), index);
}

// Minimum number of usable baselines: at least half of k.
int baseline_quorum(int k) { return (k + 1) / 2; }

std::optional<double> eval_global(const Network& net, Characteristic c, std::uint64_t lv_seed,
                                  int restarts) {
    switch (c) {
        case Characteristic::clustering_u:
            return global_clustering(net, false);
        case Characteristic::clustering_w:
            return global_clustering(net, true);
        case Characteristic::path_u:
            return avg_shortest_path_global(net, false, PathMode::component).value;
        case Characteristic::path_w:
            return avg_shortest_path_global(net, true, PathMode::component).value;
        case Characteristic::assortativity_u:
            return net.edge_count() ? assortativity(net, false) : std::nullopt;
        case Characteristic::assortativity_w:
            return net.edge_count() ? assortativity(net, true) : std::nullopt;
        case Characteristic::modularity_u:
            if (net.edge_count() == 0) return std::nullopt;
            return modularity_louvain(net, false, lv_seed, restarts).score;
        case Characteristic::modularity_w:
            if (net.edge_count() == 0) return std::nullopt;
            return modularity_louvain(net, true, lv_seed, restarts).score;
        default:
            throw std::invalid_argument("not a global characteristic");
    }
}

std::optional<double> eval_local(const Network& net, VertexId v, Characteristic c) {
    switch (c) {
        case Characteristic::degree:
            return static_cast<double>(net.degree(v));
        case Characteristic::clustering_u:
            return clustering_unweighted(net, v);
        case Characteristic::clustering_w:
            return clustering_weighted(net, v);
        case Characteristic::path_u:
            return avg_shortest_path_local(net, v, false, PathMode::component).value;
        case Characteristic::path_w:
            return avg_shortest_path_local(net, v, true, PathMode::component).value;
        default:
            throw std::invalid_argument("not a per-vertex characteristic");
    }
}

}  // namespace

FeatureMatrix global_features(std::span<const DocInput> docs, const GlobalFeatureOptions& options) {
    for (auto c : options.characteristics) {
        if (!is_global_characteristic(c)) {
            throw std::invalid_argument(std::string("not a global characteristic: ") +
                                        std::string(characteristic_name(c)));
        }
    }
    std::vector<std::string> ids, labels, columns;
    for (const auto& d : docs) {
        ids.push_back(d.id);
        labels.push_back(d.author);
    }
    for (auto c : options.characteristics) columns.emplace_back(characteristic_name(c));
    FeatureMatrix matrix = FeatureMatrix::empty(std::move(ids), std::move(labels), std::move(columns));

    const int k = options.norm.k;
    if (k < 1) throw std::invalid_argument("global_features: k must be >= 1");
    const std::size_t n_chars = options.characteristics.size();

    parallel_for(docs.size(), options.threads, [&](std::size_t d) {
        const DocInput& doc = docs[d];
        if (doc.stream.size() < 2) return;  // whole row stays masked
        // values[c][variant]; variant 0 is the document itself.
        std::vector<std::vector<std::optional<double>>> values(n_chars);
        for (auto& v : values) v.resize(k + 1);
        for (int variant = 0; variant <= k; ++variant) {
            TokenStream local;
            const TokenStream* stream = &doc.stream;
            if (variant > 0) {
                local = shuffle_tokens(doc.stream, shuffle_seed(options.norm, doc.id, variant));
                stream = &local;
            }
            Network net = build_network(*stream);
            for (std::size_t ci = 0; ci < n_chars; ++ci) {
                values[ci][variant] = eval_global(net, options.characteristics[ci],
                                                  louvain_seed(options.norm, doc.id, variant),
                                                  options.louvain_restarts);
            }
        }
        for (std::size_t ci = 0; ci < n_chars; ++ci) {
            if (!values[ci][0]) continue;
            std::vector<double> baseline;
            baseline.reserve(k);
            for (int variant = 1; variant <= k; ++variant) {
                if (values[ci][variant]) baseline.push_back(*values[ci][variant]);
            }
            if (static_cast<int>(baseline.size()) < baseline_quorum(k)) continue;
            auto norm = normalize_characteristic(*values[ci][0], baseline);
            if (norm) matrix.set(d, ci, *norm);
        }
    });
    return matrix;
}

LocalFeatureResult local_features(std::span<const DocInput> docs, const LocalFeatureOptions& options) {
    for (auto c : options.characteristics) {
        if (!is_local_characteristic(c)) {
            throw std::invalid_argument(std::string("not a per-vertex characteristic: ") +
                                        std::string(characteristic_name(c)));
        }
    }
    if (options.words < 1) throw std::invalid_argument("local_features: need words >= 1");
    const int k = options.norm.k;
    if (k < 1) throw std::invalid_argument("local_features: k must be >= 1");

    // Top-word ranking is per language over that language's whole corpus.
    std::map<std::string, std::vector<std::size_t>> by_language;
    for (std::size_t d = 0; d < docs.size(); ++d) by_language[docs[d].language].push_back(d);

    LocalFeatureResult result;
    std::map<std::string, std::vector<std::string>> words_of;
    for (const auto& [language, members] : by_language) {
        std::vector<TokenStream> streams;
        streams.reserve(members.size());
        for (auto d : members) streams.push_back(docs[d].stream);
        auto words = top_words(streams, options.words, options.include_punctuation);
        result.words_by_language.push_back({language, words});
        words_of[language] = std::move(words);
    }

    std::vector<std::string> ids, labels, columns;
    for (const auto& d : docs) {
        ids.push_back(d.id);
        labels.push_back(d.author);
    }
    for (auto c : options.characteristics) {
        for (std::size_t rank = 1; rank <= options.words; ++rank) {
            columns.push_back(std::string(characteristic_name(c)) + "@" + std::to_string(rank));
        }
    }
    FeatureMatrix matrix = FeatureMatrix::empty(std::move(ids), std::move(labels), std::move(columns));

    const std::size_t n_chars = options.characteristics.size();
    const std::size_t n_words = options.words;

    parallel_for(docs.size(), options.threads, [&](std::size_t d) {
        const DocInput& doc = docs[d];
        if (doc.stream.size() < 2) return;
        const auto& words = words_of.at(doc.language);
        Network original = build_network(doc.stream);
        std::vector<std::optional<VertexId>> vertex(n_words);
        for (std::size_t wi = 0; wi < n_words; ++wi) vertex[wi] = original.find(words[wi]);

        // value[char][word][variant]
        std::vector<std::vector<std::vector<std::optional<double>>>> values(
            n_chars, std::vector<std::vector<std::optional<double>>>(n_words));
        bool any_ratio = false;
        for (std::size_t ci = 0; ci < n_chars; ++ci) {
            if (options.characteristics[ci] != Characteristic::strength) any_ratio = true;
            for (auto& per_word : values[ci]) per_word.resize(k + 1);
        }

        const int variants = any_ratio ? k : 0;
        for (int variant = 0; variant <= variants; ++variant) {
            TokenStream local;
            const Network* net = &original;
            Network shuffled_net;
            if (variant > 0) {
                local = shuffle_tokens(doc.stream, shuffle_seed(options.norm, doc.id, variant));
                shuffled_net = build_network(local);
                net = &shuffled_net;
            }
            for (std::size_t wi = 0; wi < n_words; ++wi) {
                if (!vertex[wi]) continue;
                std::optional<VertexId> vid = variant == 0 ? vertex[wi] : net->find(words[wi]);
                if (!vid) continue;
                VertexId v = *vid;
                for (std::size_t ci = 0; ci < n_chars; ++ci) {
                    if (options.characteristics[ci] == Characteristic::strength) {
                        if (variant == 0) {
                            values[ci][wi][0] = normalized_strength(original, v);
                        }
                        continue;
                    }
                    values[ci][wi][variant] = eval_local(*net, v, options.characteristics[ci]);
                }
            }
        }

        for (std::size_t ci = 0; ci < n_chars; ++ci) {
            const bool is_str = options.characteristics[ci] == Characteristic::strength;
            for (std::size_t wi = 0; wi < n_words; ++wi) {
                std::size_t col = ci * n_words + wi;
                if (!vertex[wi] || !values[ci][wi][0]) continue;
                if (is_str) {
                    matrix.set(d, col, *values[ci][wi][0]);
                    continue;
                }
                std::vector<double> baseline;
                baseline.reserve(k);
                for (int variant = 1; variant <= k; ++variant) {
                    if (values[ci][wi][variant]) baseline.push_back(*values[ci][wi][variant]);
                }
                if (static_cast<int>(baseline.size()) < baseline_quorum(k)) continue;
                auto norm = normalize_characteristic(*values[ci][wi][0], baseline);
                if (norm) matrix.set(d, col, *norm);
            }
        }
    });
    result.matrix = std::move(matrix);
    return result;
}

}  // namespace stylo
