#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stylograph/common.hpp"
#include "stylograph/metrics.hpp"

namespace stylo {

namespace {

// One aggregation level: adjacency without self loops plus a per-node loop
// term counting internal weight in both directions.
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> loop;
    std::vector<double> k;  // loop + incident weight
    double two_m = 0.0;

    int size() const { return static_cast<int>(adj.size()); }
};

LevelGraph level_from_network(const Network& net, bool weighted) {
    LevelGraph g;
    int n = static_cast<int>(net.vertex_count());
    g.adj.resize(n);
    g.loop.assign(n, 0.0);
    g.k.assign(n, 0.0);
    for (VertexId v = 0; v < net.vertex_count(); ++v) {
        for (const Neighbor& nb : net.neighbors(v)) {
            double w = weighted ? static_cast<double>(nb.weight) : 1.0;
            g.adj[v].push_back({static_cast<int>(nb.id), w});
            g.k[v] += w;
        }
    }
    for (int v = 0; v < n; ++v) g.two_m += g.k[v];
    return g;
}

struct LocalMoveResult {
    std::vector<int> community;  // per node of this level
    bool moved_any = false;
};

LocalMoveResult local_moving(const LevelGraph& g, Rng& rng) {
    const int n = g.size();
    LocalMoveResult res;
    res.community.resize(n);
    std::iota(res.community.begin(), res.community.end(), 0);
    std::vector<double> tot(g.k);           // sum of k over community members
    std::vector<int> size(n, 1);
    std::vector<int> empty_ids;             // communities freed by moves

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    // Scratch for neighbor-community weights.
    std::vector<double> link(n, 0.0);
    std::vector<int> touched;

    bool improved = true;
    int guard = 0;
    while (improved && guard++ < 128) {
        improved = false;
        for (int idx = 0; idx < n; ++idx) {
            int v = order[idx];
            int old_c = res.community[v];

            touched.clear();
            for (const auto& [u, w] : g.adj[v]) {
                int c = res.community[u];
                if (link[c] == 0.0) touched.push_back(c);  // weights are positive
                link[c] += w;
            }

            // Take v out of its community.
            tot[old_c] -= g.k[v];
            size[old_c] -= 1;

            // Candidates: neighbor communities, the old community, and one
            // empty community (when available) so v can stand alone.
            std::sort(touched.begin(), touched.end());
            int alone = -1;
            if (size[old_c] == 0) {
                alone = old_c;
            } else if (!empty_ids.empty()) {
                alone = empty_ids.back();
            }

            auto gain = [&](int c) { return link[c] - g.k[v] * tot[c] / g.two_m; };

            int best_c = old_c;
            double best_gain = gain(old_c);
            if (alone >= 0) {
                double ga = 0.0 - g.k[v] * tot[alone] / g.two_m;  // tot of empty is 0
                if (ga > best_gain || (ga == best_gain && alone < best_c)) {
                    best_c = alone;
                    best_gain = ga;
                }
            }
            for (int c : touched) {
                double gc = gain(c);
                if (gc > best_gain || (gc == best_gain && c < best_c)) {
                    best_c = c;
                    best_gain = gc;
                }
            }

            tot[best_c] += g.k[v];
            size[best_c] += 1;
            res.community[v] = best_c;
            if (best_c != old_c) {
                improved = true;
                res.moved_any = true;
                // Keep the free list exact: consume a used empty id, record a
                // newly emptied one. The two cases cannot coincide.
                if (best_c == alone && best_c != old_c && !empty_ids.empty() && empty_ids.back() == alone) {
                    empty_ids.pop_back();
                }
                if (size[old_c] == 0) empty_ids.push_back(old_c);
            }

            for (int c : touched) link[c] = 0.0;
        }
    }
    return res;
}

// Renumber communities by first appearance over node order.
std::vector<int> compact_ids(const std::vector<int>& community, int* count_out) {
    std::vector<int> map_to(community.size(), -1);
    std::vector<int> out(community.size());
    int next = 0;
    for (std::size_t v = 0; v < community.size(); ++v) {
        int c = community[v];
        if (map_to[c] < 0) map_to[c] = next++;
        out[v] = map_to[c];
    }
    if (count_out) *count_out = next;
    return out;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& community, int count) {
    LevelGraph next;
    next.adj.resize(count);
    next.loop.assign(count, 0.0);
    next.k.assign(count, 0.0);
    next.two_m = g.two_m;
    // Accumulate with a map per supernode kept as sorted vectors at the end.
    std::vector<std::vector<std::pair<int, double>>> accum(count);
    for (int v = 0; v < g.size(); ++v) {
        int cv = community[v];
        next.loop[cv] += g.loop[v];
        for (const auto& [u, w] : g.adj[v]) {
            int cu = community[u];
            if (cu == cv) {
                next.loop[cv] += w;  // both directions arrive here once each
            } else {
                accum[cv].push_back({cu, w});
            }
        }
    }
    for (int c = 0; c < count; ++c) {
        auto& pairs = accum[c];
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < pairs.size();) {
            std::size_t j = i;
            double w = 0.0;
            while (j < pairs.size() && pairs[j].first == pairs[i].first) {
                w += pairs[j].second;
                ++j;
            }
            next.adj[c].push_back({pairs[i].first, w});
            i = j;
        }
        next.k[c] = next.loop[c];
        for (const auto& [u, w] : next.adj[c]) next.k[c] += w;
    }
    return next;
}

std::vector<int> single_louvain_run(const Network& net, bool weighted, std::uint64_t seed) {
    LevelGraph g = level_from_network(net, weighted);
    Rng rng(seed);
    std::vector<int> vertex_to_node(net.vertex_count());
    std::iota(vertex_to_node.begin(), vertex_to_node.end(), 0);

    while (true) {
        LocalMoveResult moves = local_moving(g, rng);
        int count = 0;
        std::vector<int> compact = compact_ids(moves.community, &count);
        for (auto& node : vertex_to_node) node = compact[node];
        if (!moves.moved_any || count == g.size()) break;
        g = aggregate(g, compact, count);
    }
    return vertex_to_node;
}

}  // namespace

Partition modularity_louvain(const Network& net, bool weighted, std::uint64_t seed, int restarts) {
    if (net.edge_count() == 0) {
        throw std::invalid_argument("modularity_louvain: network has no edges");
    }
    if (restarts < 1) restarts = 1;

    // The all-in-one partition scores exactly zero and anchors Q >= 0.
    Partition best;
    best.communities.assign(net.vertex_count(), 0);
    best.score = modularity_partition_score(net, best.communities, weighted);

    for (int r = 0; r < restarts; ++r) {
        auto community = single_louvain_run(net, weighted, derive_seed(seed, "louvain-restart", r));
        int count = 0;
        community = compact_ids(community, &count);
        double score = modularity_partition_score(net, community, weighted);
        if (score > best.score) {
            best.communities = std::move(community);
            best.score = score;
        }
    }
    return best;
}

}  // namespace stylo
