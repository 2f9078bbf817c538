#include "stylograph/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "stylograph/common.hpp"

namespace stylo {

namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
    KahanSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        sum.add(d * d);
    }
    return std::sqrt(sum.value());
}

}  // namespace

Dendrogram hierarchical_cluster(std::span<const std::vector<double>> points,
                                std::vector<std::string> labels) {
    const std::size_t n = points.size();
    if (n < 2) throw std::invalid_argument("hierarchical_cluster: need at least 2 rows");
    if (labels.size() != n) throw std::invalid_argument("hierarchical_cluster: label count mismatch");
    for (const auto& p : points) {
        if (p.size() != points[0].size()) {
            throw std::invalid_argument("hierarchical_cluster: rows differ in dimension");
        }
    }

    Dendrogram dg;
    dg.leaves = std::move(labels);

    // Active clusters as node ids; distances updated by the complete-linkage
    // Lance-Williams rule D(A+B, C) = max(D(A,C), D(B,C)).
    struct Active {
        std::size_t node;
        std::vector<double> dist;  // to every active cluster, by position
    };
    std::vector<std::size_t> nodes(n);
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) nodes[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dist[i][j] = dist[j][i] = euclidean(points[i], points[j]);
        }
    }

    std::vector<char> alive(n, 1);
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[i] = i;

    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Lowest-position pair wins ties, which maps to oldest node ids.
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!alive[j]) continue;
                if (dist[i][j] < best) {
                    best = dist[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        dg.merges.push_back({nodes[bi], nodes[bj], best});
        // Reuse slot bi for the merged cluster.
        for (std::size_t t = 0; t < n; ++t) {
            if (!alive[t] || t == bi || t == bj) continue;
            double d = std::max(dist[bi][t], dist[bj][t]);
            dist[bi][t] = dist[t][bi] = d;
        }
        nodes[bi] = n + step;
        alive[bj] = 0;
    }
    return dg;
}

Dendrogram hierarchical_cluster(const FeatureMatrix& matrix) {
    // Masked entries take their column's mean over the defined rows.
    std::vector<double> fill(matrix.cols(), 0.0);
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        KahanSum sum;
        std::size_t count = 0;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            if (matrix.is_defined(r, c)) {
                sum.add(matrix.at(r, c));
                ++count;
            }
        }
        if (count > 0) fill[c] = sum.value() / static_cast<double>(count);
    }
    std::vector<std::vector<double>> points(matrix.rows(), std::vector<double>(matrix.cols()));
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            points[r][c] = matrix.is_defined(r, c) ? matrix.at(r, c) : fill[c];
        }
    }
    return hierarchical_cluster(points, matrix.row_ids);
}

namespace {

std::string newick_escape(const std::string& label) {
    std::string out;
    for (char ch : label) {
        if (ch == '(' || ch == ')' || ch == ',' || ch == ':' || ch == ';' || ch == ' ' || ch == '\t') {
            out.push_back('_');
        } else {
            out.push_back(ch);
        }
    }
    return out;
}

}  // namespace

std::string Dendrogram::newick() const {
    const std::size_t n = leaves.size();
    std::vector<std::string> rendered(n + merges.size());
    for (std::size_t i = 0; i < n; ++i) rendered[i] = newick_escape(leaves[i]);
    for (std::size_t s = 0; s < merges.size(); ++s) {
        const Merge& m = merges[s];
        rendered[n + s] =
            "(" + rendered[m.left] + "," + rendered[m.right] + "):" + format_double(m.height);
    }
    return (merges.empty() ? rendered[0] : rendered[n + merges.size() - 1]) + ";";
}

void Dendrogram::write_merges(std::ostream& out) const {
    const std::size_t n = leaves.size();
    std::vector<std::size_t> sizes(n + merges.size(), 1);
    out << "step\tleft\tright\theight\tsize\n";
    for (std::size_t s = 0; s < merges.size(); ++s) {
        const Merge& m = merges[s];
        sizes[n + s] = sizes[m.left] + sizes[m.right];
        out << s << "\t" << m.left << "\t" << m.right << "\t" << format_double(m.height) << "\t"
            << sizes[n + s] << "\n";
    }
}

namespace {

double entropy_bits(std::span<const std::size_t> counts, std::size_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

struct TreeBuilder {
    std::span<const std::vector<double>> rows;
    std::span<const int> labels;
    int class_count;
    std::vector<DecisionTree::Node> nodes;

    int build(std::vector<std::size_t>& idx) {
        std::vector<std::size_t> counts(class_count, 0);
        for (auto i : idx) counts[labels[i]] += 1;
        int majority = 0;
        for (int c = 1; c < class_count; ++c) {
            if (counts[c] > counts[majority]) majority = c;  // ties keep the lowest index
        }
        bool pure = counts[majority] == idx.size();
        if (pure || idx.size() <= 1) return make_leaf(majority);

        const std::size_t total = idx.size();
        const double h0 = entropy_bits(counts, total);
        const std::size_t attrs = rows[idx[0]].size();

        int best_attr = -1;
        double best_threshold = 0.0;
        double best_gain = 0.0;
        std::vector<std::pair<double, int>> sorted(total);  // value, label
        std::vector<std::size_t> left_counts(class_count);

        for (std::size_t a = 0; a < attrs; ++a) {
            for (std::size_t i = 0; i < total; ++i) {
                sorted[i] = {rows[idx[i]][a], labels[idx[i]]};
            }
            std::sort(sorted.begin(), sorted.end());
            std::fill(left_counts.begin(), left_counts.end(), 0);
            std::size_t left_n = 0;
            for (std::size_t i = 0; i + 1 < total; ++i) {
                left_counts[sorted[i].second] += 1;
                ++left_n;
                if (sorted[i].first == sorted[i + 1].first) continue;
                // Split between distinct neighbors; rows <= threshold go left.
                double lo = sorted[i].first;
                double hi = sorted[i + 1].first;
                double threshold = lo + (hi - lo) / 2.0;
                if (!(threshold < hi)) threshold = lo;  // midpoint rounded up
                std::size_t right_n = total - left_n;
                double hl = 0.0, hr = 0.0;
                {
                    double h = 0.0;
                    for (int c = 0; c < class_count; ++c) {
                        std::size_t lc = left_counts[c];
                        if (lc > 0) {
                            double p = static_cast<double>(lc) / static_cast<double>(left_n);
                            h -= p * std::log2(p);
                        }
                    }
                    hl = h;
                    h = 0.0;
                    for (int c = 0; c < class_count; ++c) {
                        std::size_t rc = counts[c] - left_counts[c];
                        if (rc > 0) {
                            double p = static_cast<double>(rc) / static_cast<double>(right_n);
                            h -= p * std::log2(p);
                        }
                    }
                    hr = h;
                }
                double h_split = (static_cast<double>(left_n) * hl + static_cast<double>(right_n) * hr) /
                                 static_cast<double>(total);
                double gain = h0 - h_split;
                if (gain > best_gain) {  // first strict max: lowest attr, lowest threshold
                    best_gain = gain;
                    best_attr = static_cast<int>(a);
                    best_threshold = threshold;
                }
            }
        }

        if (best_attr < 0 || !(best_gain > 0.0)) {
            // Duplicate rows with conflicting labels: majority leaf.
            return make_leaf(majority);
        }

        std::vector<std::size_t> left_idx, right_idx;
        for (auto i : idx) {
            if (rows[i][best_attr] <= best_threshold) {
                left_idx.push_back(i);
            } else {
                right_idx.push_back(i);
            }
        }
        int node = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[node].attribute = best_attr;
        nodes[node].threshold = best_threshold;
        int left = build(left_idx);
        int right = build(right_idx);
        nodes[node].left = left;
        nodes[node].right = right;
        return node;
    }

    int make_leaf(int label) {
        int node = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[node].label = label;
        return node;
    }
};

}  // namespace

int DecisionTree::predict(std::span<const double> row) const {
    int node = 0;
    while (nodes[node].attribute >= 0) {
        const Node& nd = nodes[node];
        if (static_cast<std::size_t>(nd.attribute) >= row.size()) {
            throw std::invalid_argument("predict: row dimension mismatch");
        }
        node = row[nd.attribute] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes[node].label;
}

DecisionTree train_tree(std::span<const std::vector<double>> rows, std::span<const int> labels,
                        int class_count) {
    if (rows.empty()) throw std::invalid_argument("train_tree: empty training set");
    if (rows.size() != labels.size()) throw std::invalid_argument("train_tree: label count mismatch");
    for (int l : labels) {
        if (l < 0 || l >= class_count) throw std::invalid_argument("train_tree: label out of range");
    }
    TreeBuilder builder{rows, labels, class_count, {}};
    std::vector<std::size_t> idx(rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    builder.build(idx);
    DecisionTree tree;
    tree.nodes = std::move(builder.nodes);
    return tree;
}

int TreeEnsemble::predict(std::span<const double> row) const {
    std::vector<int> votes(class_count, 0);
    for (const auto& tree : trees) votes[tree.predict(row)] += 1;
    int best = 0;
    for (int c = 1; c < class_count; ++c) {
        if (votes[c] > votes[best]) best = c;  // ties keep the lowest index
    }
    return best;
}

TreeEnsemble train_bagging(std::span<const std::vector<double>> rows, std::span<const int> labels,
                           int class_count, int n_trees, std::uint64_t seed) {
    if (rows.empty()) throw std::invalid_argument("train_bagging: empty training set");
    if (n_trees < 1) throw std::invalid_argument("train_bagging: need at least one tree");
    TreeEnsemble ensemble;
    ensemble.class_count = class_count;
    ensemble.trees.reserve(n_trees);
    const std::size_t m = rows.size();
    std::vector<std::vector<double>> sample(m);
    std::vector<int> sample_labels(m);
    for (int t = 0; t < n_trees; ++t) {
        Rng rng(derive_seed(seed, "bootstrap", static_cast<std::uint64_t>(t)));
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t pick = static_cast<std::size_t>(rng.below(m));
            sample[i] = rows[pick];
            sample_labels[i] = labels[pick];
        }
        ensemble.trees.push_back(train_tree(sample, sample_labels, class_count));
    }
    return ensemble;
}

double ConfusionMatrix::accuracy_se() const {
    if (reps < 2) return 0.0;
    return accuracy_sd / std::sqrt(static_cast<double>(reps));
}

void ConfusionMatrix::write(std::ostream& out) const {
    out << "author";
    for (const auto& c : classes) out << "\t" << c;
    out << "\n";
    const std::size_t k = classes.size();
    for (std::size_t r = 0; r < k; ++r) {
        out << classes[r];
        for (std::size_t c = 0; c < k; ++c) {
            out << "\t" << format_double(rates[r * k + c]);
        }
        out << "\n";
    }
}

ConfusionMatrix monte_carlo_cv(const FeatureMatrix& matrix, const CvOptions& options) {
    if (options.train_per_class < 1) throw std::invalid_argument("monte_carlo_cv: train_per_class >= 1");
    if (options.reps < 1) throw std::invalid_argument("monte_carlo_cv: reps >= 1");

    // Classes in sorted order; class index = vote tie-break order.
    std::map<std::string, std::vector<std::size_t>> members;
    for (std::size_t r = 0; r < matrix.rows(); ++r) members[matrix.row_labels[r]].push_back(r);
    ConfusionMatrix out;
    for (const auto& [label, rows] : members) {
        if (rows.size() <= static_cast<std::size_t>(options.train_per_class)) {
            throw std::runtime_error("monte_carlo_cv: class '" + label + "' has " +
                                     std::to_string(rows.size()) + " rows, needs more than " +
                                     std::to_string(options.train_per_class));
        }
        out.classes.push_back(label);
    }
    const int k = static_cast<int>(out.classes.size());
    if (k < 2) throw std::runtime_error("monte_carlo_cv: need at least 2 classes");
    std::vector<const std::vector<std::size_t>*> class_rows;
    for (const auto& [label, rows] : members) class_rows.push_back(&rows);

    const std::size_t cols = matrix.cols();
    const std::size_t reps = static_cast<std::size_t>(options.reps);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k) * k, 0);
    std::vector<double> accuracies(reps, 0.0);
    std::vector<std::vector<std::int64_t>> rep_counts(reps);

    parallel_for(reps, options.threads, [&](std::size_t rep) {
        Rng rng(derive_seed(options.seed, "cv-rep", rep));
        std::vector<std::size_t> train_rows, test_rows;
        std::vector<int> train_labels, test_labels;
        for (int c = 0; c < k; ++c) {
            std::vector<std::size_t> pool = *class_rows[c];
            rng.shuffle(pool);
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (i < static_cast<std::size_t>(options.train_per_class)) {
                    train_rows.push_back(pool[i]);
                    train_labels.push_back(c);
                } else {
                    test_rows.push_back(pool[i]);
                    test_labels.push_back(c);
                }
            }
        }

        // Column means from the training fold impute every masked entry.
        std::vector<double> fill(cols, 0.0);
        for (std::size_t c = 0; c < cols; ++c) {
            KahanSum sum;
            std::size_t count = 0;
            for (auto r : train_rows) {
                if (matrix.is_defined(r, c)) {
                    sum.add(matrix.at(r, c));
                    ++count;
                }
            }
            if (count > 0) fill[c] = sum.value() / static_cast<double>(count);
        }
        auto materialize = [&](const std::vector<std::size_t>& rows_in) {
            std::vector<std::vector<double>> dense(rows_in.size(), std::vector<double>(cols));
            for (std::size_t i = 0; i < rows_in.size(); ++i) {
                for (std::size_t c = 0; c < cols; ++c) {
                    dense[i][c] =
                        matrix.is_defined(rows_in[i], c) ? matrix.at(rows_in[i], c) : fill[c];
                }
            }
            return dense;
        };
        auto train = materialize(train_rows);
        auto test = materialize(test_rows);

        TreeEnsemble ensemble = train_bagging(train, train_labels, k,
                                              options.n_trees, derive_seed(options.seed, "cv-bag", rep));
        auto& local_counts = rep_counts[rep];
        local_counts.assign(static_cast<std::size_t>(k) * k, 0);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < test.size(); ++i) {
            int predicted = ensemble.predict(test[i]);
            local_counts[test_labels[i] * k + predicted] += 1;
            if (predicted == test_labels[i]) ++correct;
        }
        accuracies[rep] = static_cast<double>(correct) / static_cast<double>(test.size());
    });

    for (const auto& rc : rep_counts) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += rc[i];
    }
    out.counts = std::move(counts);
    out.rates.assign(out.counts.size(), 0.0);
    for (int r = 0; r < k; ++r) {
        std::int64_t row_sum = 0;
        for (int c = 0; c < k; ++c) row_sum += out.counts[r * k + c];
        if (row_sum > 0) {
            for (int c = 0; c < k; ++c) {
                out.rates[r * k + c] =
                    static_cast<double>(out.counts[r * k + c]) / static_cast<double>(row_sum);
            }
        }
    }
    out.reps = reps;
    out.accuracy_mean = mean_of(accuracies);
    out.accuracy_sd = reps > 1 ? sample_std(accuracies) : 0.0;
    return out;
}

}  // namespace stylo
