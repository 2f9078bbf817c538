#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stylograph/corpus.hpp"
#include "stylograph/features.hpp"
#include "stylograph/learn.hpp"

namespace stylo {

// Resolved settings for one experiment run. Everything that can influence an
// output byte lives here and is echoed to run.json; worker count and output
// location deliberately do not.
struct RunConfig {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    std::uint64_t seed = 1;

    int k_shuffles = 50;
    int reps = 2000;
    int n_trees = 100;
    int train_per_class = 4;
    int louvain_restarts = 1;
    unsigned threads = 0;
    // Caps reps at 200 and drops the expensive weighted global path length
    // from default characteristic sets.
    bool budget = false;

    std::string mode = "global";                  // "global" or "local"
    std::vector<Characteristic> characteristics;  // empty = mode default
    std::size_t top_n = 12;
    bool include_punctuation = true;

    bool remove_annotations = false;
    bool drop_quotation_dashes = true;
    std::filesystem::path abbreviations;  // optional list overriding the built-ins

    std::filesystem::path features_path;  // reuse a saved matrix instead of computing
    std::vector<std::string> curve_sets;  // e.g. {"str", "C_w", "str+C_w"}
    std::size_t curve_n_max = 12;
    std::size_t top_m = 50;  // subnetwork size for the path-ratio analysis

    std::vector<Characteristic> resolved_characteristics() const;
    int resolved_reps() const;
};

// Corpus loading + per-language preprocessing in one step.
std::vector<DocInput> load_inputs(const RunConfig& config);

// Each runner writes its artifacts plus run.json into config.out_dir.
void run_ingest(const RunConfig& config);
FeatureMatrix run_features(const RunConfig& config);
Dendrogram run_cluster(const RunConfig& config);
ConfusionMatrix run_classify(const RunConfig& config);
void run_accuracy_curve(const RunConfig& config);
void run_punctuation_ablation(const RunConfig& config);
void run_path_ratio(const RunConfig& config);
void run_pairwise_time(const RunConfig& config);

}  // namespace stylo
