#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stylograph/experiments.hpp"
#include "stylograph/features.hpp"

namespace {

struct Cli {
    stylo::RunConfig config;
    std::string chars;
    std::string sets;
    bool no_punctuation = false;
    bool keep_quotation_dashes = false;
};

void add_common(CLI::App* cmd, Cli& cli) {
    cmd->add_option("--manifest", cli.config.manifest, "corpus manifest (TSV)")->required();
    cmd->add_option("--out", cli.config.out_dir, "output directory")->required();
    cmd->add_option("--seed", cli.config.seed, "master random seed");
    cmd->add_option("--reps", cli.config.reps, "cross-validation repetitions");
    cmd->add_option("--trees", cli.config.n_trees, "trees per bagging ensemble");
    cmd->add_option("--k-shuffles", cli.config.k_shuffles, "shuffled baselines per document");
    cmd->add_option("--train-per-class", cli.config.train_per_class, "training documents per author");
    cmd->add_option("--restarts", cli.config.louvain_restarts, "community detection restarts");
    cmd->add_option("--threads", cli.config.threads, "worker threads (0 = all cores)");
    cmd->add_flag("--budget", cli.config.budget, "cap repetitions and skip the slowest features");
    cmd->add_option("--mode", cli.config.mode, "feature family: global or local");
    cmd->add_option("--chars", cli.chars, "comma-separated characteristics (deg,str,C_u,C_w,ell_u,ell_w,r_u,r_w,Q_u,Q_w)");
    cmd->add_option("--top-n", cli.config.top_n, "words per characteristic for local features");
    cmd->add_flag("--no-punctuation", cli.no_punctuation, "exclude punctuation marks from the word list");
    cmd->add_flag("--remove-annotations", cli.config.remove_annotations, "strip square-bracketed notes");
    cmd->add_flag("--keep-quotation-dashes", cli.keep_quotation_dashes, "keep dashes that open quotation lines");
    cmd->add_option("--abbrev", cli.config.abbreviations, "abbreviation list overriding the built-ins");
}

void finish(Cli& cli) {
    if (!cli.chars.empty()) {
        cli.config.characteristics = stylo::parse_characteristic_list(cli.chars);
    }
    if (cli.no_punctuation) cli.config.include_punctuation = false;
    if (cli.keep_quotation_dashes) cli.config.drop_quotation_dashes = false;
    if (!cli.sets.empty()) {
        cli.config.curve_sets.clear();
        std::string current;
        for (char c : cli.sets) {
            if (c == ',') {
                if (!current.empty()) cli.config.curve_sets.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
        if (!current.empty()) cli.config.curve_sets.push_back(current);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"word-adjacency network stylometry toolkit"};
    app.require_subcommand(1);

    Cli cli;

    auto* ingest = app.add_subcommand("ingest", "load a corpus and report token counts");
    add_common(ingest, cli);

    auto* features = app.add_subcommand("features", "compute the normalized feature matrix");
    add_common(features, cli);

    auto* cluster = app.add_subcommand("cluster", "hierarchical clustering of documents");
    add_common(cluster, cli);
    cluster->add_option("--features", cli.config.features_path, "reuse a saved feature matrix");

    auto* classify = app.add_subcommand("classify", "author attribution with bagged decision trees");
    add_common(classify, cli);
    classify->add_option("--features", cli.config.features_path, "reuse a saved feature matrix");

    auto* curve = app.add_subcommand("curve", "accuracy as a function of word-list length");
    add_common(curve, cli);
    curve->add_option("--sets", cli.sets, "comma-separated characteristic sets, '+' combines (str,C_w,str+C_w)");
    curve->add_option("--n-max", cli.config.curve_n_max, "largest word-list length");

    auto* ablate = app.add_subcommand("ablate", "compare attribution with and without punctuation");
    add_common(ablate, cli);

    auto* path_ratio = app.add_subcommand("path-ratio", "top-word subnetwork path lengths vs the full network");
    add_common(path_ratio, cli);
    path_ratio->add_option("--top-m", cli.config.top_m, "subnetwork size");

    auto* time_pairs = app.add_subcommand("time-pairs", "pairwise author error vs time separation");
    add_common(time_pairs, cli);

    // Local features are the sensible default for the word-list experiments.
    for (auto* cmd : {curve, ablate, time_pairs}) {
        cmd->parse_complete_callback([&cli, cmd] {
            if (cmd->count("--mode") == 0) cli.config.mode = "local";
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        finish(cli);
        if (ingest->parsed()) stylo::run_ingest(cli.config);
        if (features->parsed()) stylo::run_features(cli.config);
        if (cluster->parsed()) stylo::run_cluster(cli.config);
        if (classify->parsed()) stylo::run_classify(cli.config);
        if (curve->parsed()) stylo::run_accuracy_curve(cli.config);
        if (ablate->parsed()) stylo::run_punctuation_ablation(cli.config);
        if (path_ratio->parsed()) stylo::run_path_ratio(cli.config);
        if (time_pairs->parsed()) stylo::run_pairwise_time(cli.config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
