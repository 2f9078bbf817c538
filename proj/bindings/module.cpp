#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "stylograph/corpus.hpp"
#include "stylograph/experiments.hpp"
#include "stylograph/features.hpp"
#include "stylograph/learn.hpp"
#include "stylograph/metrics.hpp"
#include "stylograph/network.hpp"
#include "stylograph/preprocess.hpp"

namespace py = pybind11;
using namespace stylo;

namespace {

std::vector<Characteristic> chars_from(const std::vector<std::string>& names) {
    std::vector<Characteristic> chars;
    for (const auto& n : names) chars.push_back(parse_characteristic(n));
    return chars;
}

}  // namespace

PYBIND11_MODULE(_stylograph, m) {
    m.doc() = "word-adjacency network stylometry toolkit";

    // preprocessing
    py::class_<PreprocessConfig>(m, "PreprocessConfig")
        .def(py::init<>())
        .def_static("english", &PreprocessConfig::english)
        .def_static("polish", &PreprocessConfig::polish)
        .def_static("for_language", [](const std::string& lang) { return PreprocessConfig::for_language(lang); })
        .def_readwrite("remove_annotations", &PreprocessConfig::remove_annotations)
        .def_readwrite("drop_quotation_dashes", &PreprocessConfig::drop_quotation_dashes)
        .def_readwrite("abbreviations", &PreprocessConfig::abbreviations);

    py::class_<TokenStream>(m, "TokenStream")
        .def(py::init([](std::vector<std::string> tokens, std::string source_id) {
                 return TokenStream{std::move(source_id), std::move(tokens)};
             }),
             py::arg("tokens"), py::arg("source_id") = std::string())
        .def_readwrite("source_id", &TokenStream::source_id)
        .def_readwrite("tokens", &TokenStream::tokens)
        .def("__len__", &TokenStream::size);

    m.def("normalize_text",
          [](const std::string& raw, const PreprocessConfig& config) { return normalize_text(raw, config); },
          py::arg("raw"), py::arg("config") = PreprocessConfig::english());
    m.def("tokenize",
          [](const std::string& text, const PreprocessConfig& config, std::string source_id) {
              return tokenize(text, config, std::move(source_id));
          },
          py::arg("text"), py::arg("config") = PreprocessConfig::english(),
          py::arg("source_id") = std::string());
    m.def("shuffle_tokens", &shuffle_tokens, py::arg("stream"), py::arg("seed"));
    m.def("is_punctuation_token", [](const std::string& t) { return is_punctuation_token(t); });
    m.attr("PUNCTUATION_TOKENS") = std::vector<std::string>(kPunctuationTokens.begin(), kPunctuationTokens.end());

    // corpus
    py::class_<DocumentMeta>(m, "DocumentMeta")
        .def_readonly("id", &DocumentMeta::id)
        .def_readonly("author", &DocumentMeta::author)
        .def_readonly("language", &DocumentMeta::language)
        .def_readonly("year", &DocumentMeta::year)
        .def_readonly("path", &DocumentMeta::path);
    py::class_<Document>(m, "Document")
        .def_readonly("meta", &Document::meta)
        .def_readonly("text", &Document::text);
    py::class_<Corpus>(m, "Corpus")
        .def_readonly("documents", &Corpus::documents)
        .def_readonly("authors", &Corpus::authors);
    m.def("load_corpus", [](const std::filesystem::path& manifest) { return load_corpus(manifest); },
          py::arg("manifest"));

    // networks
    py::class_<Network>(m, "Network")
        .def_property_readonly("vertex_count", &Network::vertex_count)
        .def_property_readonly("edge_count", &Network::edge_count)
        .def_property_readonly("total_weight", &Network::total_weight)
        .def("surface", [](const Network& n, VertexId v) { return std::string(n.surface(v)); })
        .def("find", [](const Network& n, const std::string& s) { return n.find(s); })
        .def("frequency", &Network::frequency)
        .def("degree", &Network::degree)
        .def("strength", &Network::strength)
        .def("neighbors",
             [](const Network& n, VertexId v) {
                 std::vector<std::pair<VertexId, std::int64_t>> out;
                 for (const auto& nb : n.neighbors(v)) out.emplace_back(nb.id, nb.weight);
                 return out;
             })
        .def("weight_between", &Network::weight_between)
        .def("has_edge", &Network::has_edge)
        .def("dump_edges", [](const Network& n) {
            std::ostringstream out;
            n.write_edges(out);
            return out.str();
        })
        .def_static("parse_edges", [](const std::string& text) {
            std::istringstream in(text);
            return Network::read_edges(in);
        });
    m.def("build_network", &build_network, py::arg("stream"));
    m.def("subnetwork",
          [](const Network& net, const std::vector<VertexId>& keep) { return subnetwork(net, keep); },
          py::arg("net"), py::arg("keep"));

    // metrics
    py::enum_<PathMode>(m, "PathMode")
        .value("component", PathMode::component)
        .value("strict", PathMode::strict);
    m.def("clustering_unweighted", &clustering_unweighted, py::arg("net"), py::arg("v"));
    m.def("clustering_weighted", &clustering_weighted, py::arg("net"), py::arg("v"));
    m.def("global_clustering", &global_clustering, py::arg("net"), py::arg("weighted"));
    m.def("shortest_path_lengths", &shortest_path_lengths, py::arg("net"), py::arg("source"),
          py::arg("weighted"));
    m.def("avg_shortest_path_local",
          [](const Network& net, VertexId v, bool weighted, PathMode mode) {
              auto r = avg_shortest_path_local(net, v, weighted, mode);
              return py::make_tuple(r.value, r.restricted);
          },
          py::arg("net"), py::arg("v"), py::arg("weighted"), py::arg("mode") = PathMode::component);
    m.def("avg_shortest_path_global",
          [](const Network& net, bool weighted, PathMode mode) {
              auto r = avg_shortest_path_global(net, weighted, mode);
              return py::make_tuple(r.value, r.restricted);
          },
          py::arg("net"), py::arg("weighted"), py::arg("mode") = PathMode::component);
    m.def("connected_components", &connected_components, py::arg("net"));
    m.def("assortativity", &assortativity, py::arg("net"), py::arg("weighted"));
    m.def("modularity_partition_score",
          [](const Network& net, const std::vector<int>& communities, bool weighted) {
              return modularity_partition_score(net, communities, weighted);
          },
          py::arg("net"), py::arg("communities"), py::arg("weighted"));
    py::class_<Partition>(m, "Partition")
        .def_readonly("communities", &Partition::communities)
        .def_readonly("score", &Partition::score);
    m.def("modularity_louvain", &modularity_louvain, py::arg("net"), py::arg("weighted"),
          py::arg("seed"), py::arg("restarts") = 1);

    // features
    py::class_<NormalizationConfig>(m, "NormalizationConfig")
        .def(py::init<>())
        .def_readwrite("k", &NormalizationConfig::k)
        .def_readwrite("base_seed", &NormalizationConfig::base_seed);

    py::class_<FeatureMatrix>(m, "FeatureMatrix")
        .def(py::init<>())
        .def_readwrite("row_ids", &FeatureMatrix::row_ids)
        .def_readwrite("row_labels", &FeatureMatrix::row_labels)
        .def_readwrite("columns", &FeatureMatrix::columns)
        .def_property_readonly("shape",
                               [](const FeatureMatrix& f) { return py::make_tuple(f.rows(), f.cols()); })
        .def("at", &FeatureMatrix::at)
        .def("is_defined", &FeatureMatrix::is_defined)
        .def("set", &FeatureMatrix::set)
        .def("set_missing", &FeatureMatrix::set_missing)
        .def_static("empty", &FeatureMatrix::empty, py::arg("row_ids"), py::arg("row_labels"),
                    py::arg("columns"))
        .def("save", [](const FeatureMatrix& f, const std::filesystem::path& p) { f.save(p); })
        .def("dumps",
             [](const FeatureMatrix& f) {
                 std::ostringstream out;
                 f.save(out);
                 return out.str();
             })
        .def_static("load", [](const std::filesystem::path& p) { return FeatureMatrix::load(p); })
        .def_static("loads", [](const std::string& text) {
            std::istringstream in(text);
            return FeatureMatrix::load(in);
        });

    m.def("normalize_characteristic",
          [](double value, const std::vector<double>& baseline) {
              return normalize_characteristic(value, baseline);
          },
          py::arg("value"), py::arg("baseline"));
    m.def("normalized_strength", &normalized_strength, py::arg("net"), py::arg("v"));
    m.def("top_words",
          [](const std::vector<TokenStream>& streams, std::size_t n, bool include_punctuation) {
              return top_words(streams, n, include_punctuation);
          },
          py::arg("streams"), py::arg("n"), py::arg("include_punctuation") = true);

    py::class_<DocInput>(m, "DocInput")
        .def(py::init([](TokenStream stream, std::string id, std::string author, std::string language) {
                 return DocInput{std::move(stream), std::move(id), std::move(author), std::move(language)};
             }),
             py::arg("stream"), py::arg("id"), py::arg("author"), py::arg("language") = std::string("en"))
        .def_readwrite("stream", &DocInput::stream)
        .def_readwrite("id", &DocInput::id)
        .def_readwrite("author", &DocInput::author)
        .def_readwrite("language", &DocInput::language);

    m.def("global_features",
          [](const std::vector<DocInput>& docs, const std::vector<std::string>& characteristics,
             int k, std::uint64_t seed, int louvain_restarts, unsigned threads) {
              GlobalFeatureOptions options;
              options.characteristics = chars_from(characteristics);
              options.norm.k = k;
              options.norm.base_seed = seed;
              options.louvain_restarts = louvain_restarts;
              options.threads = threads;
              return global_features(docs, options);
          },
          py::arg("docs"),
          py::arg("characteristics") =
              std::vector<std::string>{"ell_u", "C_u", "r_u", "Q_u", "ell_w", "C_w", "r_w", "Q_w"},
          py::arg("k") = 50, py::arg("seed") = 1, py::arg("louvain_restarts") = 1,
          py::arg("threads") = 0);

    m.def("local_features",
          [](const std::vector<DocInput>& docs, const std::vector<std::string>& characteristics,
             std::size_t words, bool include_punctuation, int k, std::uint64_t seed, unsigned threads) {
              LocalFeatureOptions options;
              options.characteristics = chars_from(characteristics);
              options.words = words;
              options.include_punctuation = include_punctuation;
              options.norm.k = k;
              options.norm.base_seed = seed;
              options.threads = threads;
              auto result = local_features(docs, options);
              return py::make_tuple(result.matrix, result.words_by_language);
          },
          py::arg("docs"), py::arg("characteristics") = std::vector<std::string>{"str", "C_w"},
          py::arg("words") = 12, py::arg("include_punctuation") = true, py::arg("k") = 50,
          py::arg("seed") = 1, py::arg("threads") = 0);

    // learning
    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("leaves", &Dendrogram::leaves)
        .def_property_readonly("merges",
                               [](const Dendrogram& d) {
                                   std::vector<std::tuple<std::size_t, std::size_t, double>> out;
                                   for (const auto& mg : d.merges)
                                       out.emplace_back(mg.left, mg.right, mg.height);
                                   return out;
                               })
        .def("newick", &Dendrogram::newick);
    m.def("hierarchical_cluster",
          [](const std::vector<std::vector<double>>& points, std::vector<std::string> labels) {
              return hierarchical_cluster(points, std::move(labels));
          },
          py::arg("points"), py::arg("labels"));
    m.def("hierarchical_cluster_matrix",
          [](const FeatureMatrix& matrix) { return hierarchical_cluster(matrix); }, py::arg("matrix"));

    py::class_<DecisionTree>(m, "DecisionTree")
        .def("predict", [](const DecisionTree& t, const std::vector<double>& row) { return t.predict(row); });
    m.def("train_tree",
          [](const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
             int class_count) { return train_tree(rows, labels, class_count); },
          py::arg("rows"), py::arg("labels"), py::arg("class_count"));

    py::class_<TreeEnsemble>(m, "TreeEnsemble")
        .def_readonly("class_count", &TreeEnsemble::class_count)
        .def_property_readonly("size", [](const TreeEnsemble& e) { return e.trees.size(); })
        .def("predict",
             [](const TreeEnsemble& e, const std::vector<double>& row) { return e.predict(row); });
    m.def("train_bagging",
          [](const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
             int class_count, int n_trees, std::uint64_t seed) {
              return train_bagging(rows, labels, class_count, n_trees, seed);
          },
          py::arg("rows"), py::arg("labels"), py::arg("class_count"), py::arg("n_trees") = 100,
          py::arg("seed") = 1);

    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def_readonly("classes", &ConfusionMatrix::classes)
        .def_readonly("counts", &ConfusionMatrix::counts)
        .def_readonly("rates", &ConfusionMatrix::rates)
        .def_readonly("reps", &ConfusionMatrix::reps)
        .def_readonly("accuracy_mean", &ConfusionMatrix::accuracy_mean)
        .def_readonly("accuracy_sd", &ConfusionMatrix::accuracy_sd)
        .def("accuracy_se", &ConfusionMatrix::accuracy_se);
    m.def("monte_carlo_cv",
          [](const FeatureMatrix& matrix, int train_per_class, int reps, int n_trees,
             std::uint64_t seed, unsigned threads) {
              CvOptions options;
              options.train_per_class = train_per_class;
              options.reps = reps;
              options.n_trees = n_trees;
              options.seed = seed;
              options.threads = threads;
              return monte_carlo_cv(matrix, options);
          },
          py::arg("matrix"), py::arg("train_per_class") = 4, py::arg("reps") = 2000,
          py::arg("n_trees") = 100, py::arg("seed") = 1, py::arg("threads") = 0);
}
