#include "stylograph/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stylograph/common.hpp"
#include "stylograph/metrics.hpp"
#include "stylograph/preprocess.hpp"

namespace stylo {

namespace {

using nlohmann::json;

std::vector<Characteristic> default_global(bool budget) {
    std::vector<Characteristic> chars = {
        Characteristic::path_u,          Characteristic::clustering_u,
        Characteristic::assortativity_u, Characteristic::modularity_u,
        Characteristic::path_w,          Characteristic::clustering_w,
        Characteristic::assortativity_w, Characteristic::modularity_w,
    };
    if (budget) {
        // The weighted global path length dominates runtime; drop it unless
        // explicitly requested.
        std::erase(chars, Characteristic::path_w);
    }
    return chars;
}

std::vector<Characteristic> default_local() {
    return {Characteristic::strength, Characteristic::clustering_w};
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    return out;
}

std::vector<std::string> char_names(const std::vector<Characteristic>& chars) {
    std::vector<std::string> names;
    for (auto c : chars) names.emplace_back(characteristic_name(c));
    return names;
}

void write_run_json(const RunConfig& config, const std::string& command) {
    json j;
    j["command"] = command;
    json c;
    c["manifest"] = config.manifest.string();
    c["seed"] = config.seed;
    c["k_shuffles"] = config.k_shuffles;
    c["reps"] = config.resolved_reps();
    c["n_trees"] = config.n_trees;
    c["train_per_class"] = config.train_per_class;
    c["louvain_restarts"] = config.louvain_restarts;
    c["budget"] = config.budget;
    c["mode"] = config.mode;
    c["characteristics"] = char_names(config.resolved_characteristics());
    c["top_n"] = config.top_n;
    c["include_punctuation"] = config.include_punctuation;
    c["remove_annotations"] = config.remove_annotations;
    c["drop_quotation_dashes"] = config.drop_quotation_dashes;
    if (!config.abbreviations.empty()) c["abbreviations"] = config.abbreviations.string();
    if (!config.features_path.empty()) c["features_path"] = config.features_path.string();
    if (command == "curve") {
        c["curve_sets"] = config.curve_sets;
        c["curve_n_max"] = config.curve_n_max;
    }
    if (command == "path-ratio") c["top_m"] = config.top_m;
    j["config"] = c;
    auto out = open_out(config.out_dir, "run.json");
    out << j.dump(2) << "\n";
}

NormalizationConfig norm_of(const RunConfig& config) {
    NormalizationConfig norm;
    norm.k = config.k_shuffles;
    norm.base_seed = config.seed;
    return norm;
}

FeatureMatrix compute_features(const RunConfig& config, const std::vector<DocInput>& docs,
                               LocalFeatureResult* local_out = nullptr) {
    if (config.mode == "global") {
        GlobalFeatureOptions options;
        options.characteristics = config.resolved_characteristics();
        options.norm = norm_of(config);
        options.louvain_restarts = config.louvain_restarts;
        options.threads = config.threads;
        return global_features(docs, options);
    }
    if (config.mode == "local") {
        LocalFeatureOptions options;
        options.characteristics = config.resolved_characteristics();
        options.words = config.top_n;
        options.include_punctuation = config.include_punctuation;
        options.norm = norm_of(config);
        options.threads = config.threads;
        auto result = local_features(docs, options);
        if (local_out) *local_out = result;
        return std::move(result.matrix);
    }
    throw std::invalid_argument("mode must be 'global' or 'local', got '" + config.mode + "'");
}

void write_words(const RunConfig& config, const LocalFeatureResult& local) {
    auto out = open_out(config.out_dir, "words.tsv");
    out << "language\trank\tword\n";
    for (const auto& [language, words] : local.words_by_language) {
        for (std::size_t i = 0; i < words.size(); ++i) {
            out << language << "\t" << (i + 1) << "\t" << words[i] << "\n";
        }
    }
}

FeatureMatrix obtain_features(const RunConfig& config, bool persist) {
    if (!config.features_path.empty()) {
        return FeatureMatrix::load(config.features_path);
    }
    auto docs = load_inputs(config);
    LocalFeatureResult local;
    FeatureMatrix matrix = compute_features(config, docs, &local);
    if (persist) {
        auto out = open_out(config.out_dir, "features.tsv");
        matrix.save(out);
        if (config.mode == "local") write_words(config, local);
    }
    return matrix;
}

CvOptions cv_of(const RunConfig& config) {
    CvOptions cv;
    cv.train_per_class = config.train_per_class;
    cv.reps = config.resolved_reps();
    cv.n_trees = config.n_trees;
    cv.seed = config.seed;
    cv.threads = config.threads;
    return cv;
}

void write_cv_summary(std::ostream& out, const ConfusionMatrix& cm) {
    out << "key\tvalue\n";
    out << "accuracy_mean\t" << format_double(cm.accuracy_mean) << "\n";
    out << "accuracy_sd\t" << format_double(cm.accuracy_sd) << "\n";
    out << "accuracy_se\t" << format_double(cm.accuracy_se()) << "\n";
    out << "error_mean\t" << format_double(1.0 - cm.accuracy_mean) << "\n";
    out << "reps\t" << cm.reps << "\n";
}

}  // namespace

std::vector<Characteristic> RunConfig::resolved_characteristics() const {
    if (!characteristics.empty()) return characteristics;
    if (mode == "local") return default_local();
    return default_global(budget);
}

int RunConfig::resolved_reps() const { return budget ? std::min(reps, 200) : reps; }

std::vector<DocInput> load_inputs(const RunConfig& config) {
    Corpus corpus = load_corpus(config.manifest);
    std::vector<std::string> custom;
    if (!config.abbreviations.empty()) custom = load_abbreviations(config.abbreviations);
    std::vector<DocInput> docs;
    docs.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) {
        PreprocessConfig pc = PreprocessConfig::for_language(doc.meta.language);
        pc.remove_annotations = config.remove_annotations;
        pc.drop_quotation_dashes = config.drop_quotation_dashes;
        if (!config.abbreviations.empty()) pc.abbreviations = custom;
        DocInput input;
        input.stream = tokenize(normalize_text(doc.text, pc), pc, doc.meta.id);
        input.id = doc.meta.id;
        input.author = doc.meta.author;
        input.language = doc.meta.language;
        docs.push_back(std::move(input));
    }
    return docs;
}

void run_ingest(const RunConfig& config) {
    Corpus corpus = load_corpus(config.manifest);
    auto docs = load_inputs(config);
    auto out = open_out(config.out_dir, "corpus.tsv");
    out << "id\tauthor\tlanguage\tyear\ttokens\twords\tpunctuation\tdistinct\n";
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto& meta = corpus.documents[i].meta;
        std::int64_t punct = 0;
        std::set<std::string_view> distinct;
        for (const auto& t : docs[i].stream.tokens) {
            if (is_punctuation_token(t)) ++punct;
            distinct.insert(t);
        }
        auto total = static_cast<std::int64_t>(docs[i].stream.size());
        out << meta.id << "\t" << meta.author << "\t" << meta.language << "\t";
        if (meta.year) out << *meta.year;
        out << "\t" << total << "\t" << (total - punct) << "\t" << punct << "\t" << distinct.size()
            << "\n";
    }
    write_run_json(config, "ingest");
    std::cout << "ingested " << docs.size() << " documents, " << corpus.authors.size()
              << " authors\n";
}

FeatureMatrix run_features(const RunConfig& config) {
    FeatureMatrix matrix = obtain_features(config, true);
    write_run_json(config, "features");
    return matrix;
}

Dendrogram run_cluster(const RunConfig& config) {
    FeatureMatrix matrix = obtain_features(config, true);
    Dendrogram dg = hierarchical_cluster(matrix);
    {
        auto out = open_out(config.out_dir, "dendrogram.newick");
        out << dg.newick() << "\n";
    }
    {
        auto out = open_out(config.out_dir, "merges.tsv");
        dg.write_merges(out);
    }
    write_run_json(config, "cluster");
    return dg;
}

ConfusionMatrix run_classify(const RunConfig& config) {
    FeatureMatrix matrix = obtain_features(config, true);
    ConfusionMatrix cm = monte_carlo_cv(matrix, cv_of(config));
    {
        auto out = open_out(config.out_dir, "confusion.tsv");
        cm.write(out);
    }
    {
        auto out = open_out(config.out_dir, "confusion_counts.tsv");
        out << "author";
        for (const auto& c : cm.classes) out << "\t" << c;
        out << "\n";
        const std::size_t k = cm.classes.size();
        for (std::size_t r = 0; r < k; ++r) {
            out << cm.classes[r];
            for (std::size_t c = 0; c < k; ++c) out << "\t" << cm.counts[r * k + c];
            out << "\n";
        }
    }
    {
        auto out = open_out(config.out_dir, "summary.tsv");
        write_cv_summary(out, cm);
    }
    write_run_json(config, "classify");
    std::cout << "accuracy " << format_double(cm.accuracy_mean) << " +- "
              << format_double(cm.accuracy_sd) << " over " << cm.reps << " repetitions\n";
    return cm;
}

void run_accuracy_curve(const RunConfig& config) {
    if (config.mode != "local") {
        throw std::invalid_argument("curve runs on local features; pass --mode local");
    }
    auto docs = load_inputs(config);
    std::vector<std::string> sets = config.curve_sets;
    if (sets.empty()) sets = {"str", "C_w", "str+C_w"};

    auto out = open_out(config.out_dir, "curve.tsv");
    out << "set\tn\taccuracy\terror\tse\n";
    for (const auto& set_name : sets) {
        std::vector<Characteristic> chars;
        {
            std::string plus_free = set_name;
            std::replace(plus_free.begin(), plus_free.end(), '+', ',');
            chars = parse_characteristic_list(plus_free);
        }
        for (std::size_t n = 1; n <= config.curve_n_max; ++n) {
            LocalFeatureOptions options;
            options.characteristics = chars;
            options.words = n;
            options.include_punctuation = config.include_punctuation;
            options.norm = norm_of(config);
            options.threads = config.threads;
            auto matrix = local_features(docs, options).matrix;
            ConfusionMatrix cm = monte_carlo_cv(matrix, cv_of(config));
            out << set_name << "\t" << n << "\t" << format_double(cm.accuracy_mean) << "\t"
                << format_double(1.0 - cm.accuracy_mean) << "\t" << format_double(cm.accuracy_se())
                << "\n";
        }
    }
    write_run_json(config, "curve");
}

void run_punctuation_ablation(const RunConfig& config) {
    if (config.mode != "local") {
        throw std::invalid_argument("ablate runs on local features; pass --mode local");
    }
    auto docs = load_inputs(config);
    ConfusionMatrix arms[2];
    for (int arm = 0; arm < 2; ++arm) {
        LocalFeatureOptions options;
        options.characteristics = config.resolved_characteristics();
        options.words = config.top_n;
        options.include_punctuation = arm == 0;
        options.norm = norm_of(config);
        options.threads = config.threads;
        auto matrix = local_features(docs, options).matrix;
        arms[arm] = monte_carlo_cv(matrix, cv_of(config));
        auto out = open_out(config.out_dir,
                            arm == 0 ? "confusion_with_punctuation.tsv" : "confusion_without_punctuation.tsv");
        arms[arm].write(out);
    }
    auto out = open_out(config.out_dir, "ablation.tsv");
    out << "arm\taccuracy\tsd\tse\n";
    out << "with_punctuation\t" << format_double(arms[0].accuracy_mean) << "\t"
        << format_double(arms[0].accuracy_sd) << "\t" << format_double(arms[0].accuracy_se()) << "\n";
    out << "without_punctuation\t" << format_double(arms[1].accuracy_mean) << "\t"
        << format_double(arms[1].accuracy_sd) << "\t" << format_double(arms[1].accuracy_se()) << "\n";
    out << "delta\t" << format_double(arms[0].accuracy_mean - arms[1].accuracy_mean) << "\t\t\n";
    write_run_json(config, "ablate");
}

void run_path_ratio(const RunConfig& config) {
    auto docs = load_inputs(config);
    auto out = open_out(config.out_dir, "path_ratio.tsv");
    out << "id\tauthor\tvariant\tversion\tl_sub\tl_full\tratio\trestricted\n";
    for (const auto& doc : docs) {
        for (int variant = 0; variant < 2; ++variant) {
            TokenStream shuffled;
            const TokenStream* stream = &doc.stream;
            if (variant == 1) {
                shuffled = shuffle_tokens(doc.stream, derive_seed(config.seed, "shuffle",
                                                                  fnv1a64(doc.id), 1));
                stream = &shuffled;
            }
            Network net = build_network(*stream);
            // Most frequent top_m vertices; ties by surface.
            std::vector<VertexId> order(net.vertex_count());
            for (VertexId v = 0; v < net.vertex_count(); ++v) order[v] = v;
            std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
                if (net.frequency(a) != net.frequency(b)) return net.frequency(a) > net.frequency(b);
                return net.surface(a) < net.surface(b);
            });
            if (order.size() > config.top_m) order.resize(config.top_m);
            Network sub = subnetwork(net, order);
            for (int weighted = 0; weighted < 2; ++weighted) {
                auto full = avg_shortest_path_global(net, weighted != 0, PathMode::component);
                auto part = avg_shortest_path_global(sub, weighted != 0, PathMode::component);
                out << doc.id << "\t" << doc.author << "\t"
                    << (variant == 0 ? "original" : "shuffled") << "\t" << (weighted ? "w" : "u")
                    << "\t";
                bool defined = full.defined() && part.defined() && *full.value > 0.0;
                out << (part.defined() ? format_double(*part.value) : "na") << "\t"
                    << (full.defined() ? format_double(*full.value) : "na") << "\t"
                    << (defined ? format_double(*part.value / *full.value) : "na") << "\t"
                    << ((full.restricted || part.restricted) ? 1 : 0) << "\n";
            }
        }
    }
    write_run_json(config, "path-ratio");
}

void run_pairwise_time(const RunConfig& config) {
    Corpus corpus = load_corpus(config.manifest);
    for (const auto& doc : corpus.documents) {
        if (!doc.meta.year) {
            throw std::runtime_error("missing year: " + doc.meta.id);
        }
    }
    auto docs = load_inputs(config);

    // Author time centroids: mean publication year.
    std::map<std::string, std::pair<double, int>> centroid_acc;
    for (const auto& doc : corpus.documents) {
        auto& [sum, count] = centroid_acc[doc.meta.author];
        sum += static_cast<double>(*doc.meta.year);
        count += 1;
    }
    std::map<std::string, double> centroid;
    for (const auto& [author, acc] : centroid_acc) centroid[author] = acc.first / acc.second;
    {
        auto out = open_out(config.out_dir, "centroids.tsv");
        out << "author\tcentroid\n";
        for (const auto& [author, c] : centroid) out << author << "\t" << format_double(c) << "\n";
    }

    // One local feature matrix over the whole corpus; pairs reuse its rows.
    LocalFeatureOptions options;
    options.characteristics = config.resolved_characteristics();
    options.words = config.top_n;
    options.include_punctuation = config.include_punctuation;
    options.norm = norm_of(config);
    options.threads = config.threads;
    if (config.mode != "local") {
        throw std::invalid_argument("time-pairs runs on local features; pass --mode local");
    }
    FeatureMatrix matrix = local_features(docs, options).matrix;

    std::vector<std::string> authors;
    for (const auto& [author, c] : centroid) authors.push_back(author);

    auto out = open_out(config.out_dir, "time_pairs.tsv");
    out << "author_a\tauthor_b\tinterval\terror\tse\n";
    for (std::size_t a = 0; a < authors.size(); ++a) {
        for (std::size_t b = a + 1; b < authors.size(); ++b) {
            FeatureMatrix pair;
            pair.columns = matrix.columns;
            for (std::size_t r = 0; r < matrix.rows(); ++r) {
                if (matrix.row_labels[r] != authors[a] && matrix.row_labels[r] != authors[b]) continue;
                pair.row_ids.push_back(matrix.row_ids[r]);
                pair.row_labels.push_back(matrix.row_labels[r]);
                for (std::size_t c = 0; c < matrix.cols(); ++c) {
                    pair.values.push_back(matrix.at(r, c));
                    pair.defined.push_back(matrix.is_defined(r, c) ? 1 : 0);
                }
            }
            ConfusionMatrix cm = monte_carlo_cv(pair, cv_of(config));
            double interval = std::abs(centroid[authors[a]] - centroid[authors[b]]);
            out << authors[a] << "\t" << authors[b] << "\t" << format_double(interval) << "\t"
                << format_double(1.0 - cm.accuracy_mean) << "\t" << format_double(cm.accuracy_se())
                << "\n";
        }
    }
    write_run_json(config, "time-pairs");
}

}  // namespace stylo
