#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stylograph/features.hpp"

namespace stylo {

struct Dendrogram {
    // Nodes 0..n-1 are the leaves; merge step s creates node n+s.
    struct Merge {
        std::size_t left;
        std::size_t right;
        double height;
    };
    std::vector<std::string> leaves;
    std::vector<Merge> merges;

    std::string newick() const;
    void write_merges(std::ostream& out) const;
};

// Agglomerative clustering, complete linkage (furthest neighbour), Euclidean
// distance. Rows with masked entries must be imputed first; the FeatureMatrix
// overload imputes with full-column means.
Dendrogram hierarchical_cluster(std::span<const std::vector<double>> points,
                                std::vector<std::string> labels);
Dendrogram hierarchical_cluster(const FeatureMatrix& matrix);

struct DecisionTree {
    struct Node {
        int attribute = -1;        // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        int label = -1;            // class index at leaves
    };
    std::vector<Node> nodes;  // node 0 is the root

    int predict(std::span<const double> row) const;
};

// Entropy-split tree: thresholds at midpoints of consecutive distinct sorted
// values; the split maximizing information gain wins, ties toward the lowest
// attribute then the lowest threshold. Duplicate rows with mixed labels stop
// recursion at a majority leaf (ties toward the lowest class index).
DecisionTree train_tree(std::span<const std::vector<double>> rows, std::span<const int> labels,
                        int class_count);

struct TreeEnsemble {
    std::vector<DecisionTree> trees;
    int class_count = 0;

    // Majority vote; ties toward the lowest class index.
    int predict(std::span<const double> row) const;
};

// Bagging: N bootstrap resamples of the full training set, one tree each.
TreeEnsemble train_bagging(std::span<const std::vector<double>> rows, std::span<const int> labels,
                           int class_count, int n_trees, std::uint64_t seed);

struct ConfusionMatrix {
    std::vector<std::string> classes;
    std::vector<std::int64_t> counts;  // row-major, true class x predicted
    std::vector<double> rates;         // rows normalized to sum 1
    std::size_t reps = 0;
    double accuracy_mean = 0.0;
    double accuracy_sd = 0.0;

    double accuracy_se() const;
    void write(std::ostream& out) const;  // row-stochastic rates table
};

struct CvOptions {
    int train_per_class = 4;
    int reps = 2000;
    int n_trees = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

// Repeated stratified random sub-sampling validation: per repetition a seeded
// split takes train_per_class rows of each class, a bagged ensemble is
// trained and the rest is classified. Masked entries are imputed with the
// training fold's column means, never from the test fold.
ConfusionMatrix monte_carlo_cv(const FeatureMatrix& matrix, const CvOptions& options);

}  // namespace stylo
