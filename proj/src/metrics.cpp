#include "stylograph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "stylograph/common.hpp"

namespace stylo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Walks the closed neighbor pairs of v. For each unordered pair (u,t) of
// neighbors joined by an edge, calls fn(w_vu, w_vt).
template <typename F>
void for_closed_neighbor_pairs(const Network& net, VertexId v, F&& fn) {
    auto nv = net.neighbors(v);
    for (std::size_t i = 0; i < nv.size(); ++i) {
        VertexId u = nv[i].id;
        auto nu = net.neighbors(u);
        // Intersect the tail of S(v) beyond u with S(u).
        std::size_t a = i + 1;
        std::size_t b = 0;
        while (a < nv.size() && b < nu.size()) {
            if (nv[a].id < nu[b].id) {
                ++a;
            } else if (nv[a].id > nu[b].id) {
                ++b;
            } else {
                fn(nv[i].weight, nv[a].weight);
                ++a;
                ++b;
            }
        }
    }
}

}  // namespace

double clustering_unweighted(const Network& net, VertexId v) {
    std::size_t deg = net.degree(v);
    if (deg <= 1) return 0.0;
    std::int64_t closed = 0;
    for_closed_neighbor_pairs(net, v, [&](std::int64_t, std::int64_t) { ++closed; });
    return (2.0 * static_cast<double>(closed)) / (static_cast<double>(deg) * static_cast<double>(deg - 1));
}

double clustering_weighted(const Network& net, VertexId v) {
    std::size_t deg = net.degree(v);
    if (deg <= 1) return 0.0;
    // Ordered pairs contribute (w_vu + w_vt)/2 each; over unordered pairs
    // that is simply w_vu + w_vt, an exact integer sum.
    std::int64_t sum = 0;
    for_closed_neighbor_pairs(net, v, [&](std::int64_t wu, std::int64_t wt) { sum += wu + wt; });
    return static_cast<double>(sum) /
           (static_cast<double>(net.strength(v)) * static_cast<double>(deg - 1));
}

double global_clustering(const Network& net, bool weighted) {
    std::size_t n = net.vertex_count();
    if (n == 0) throw std::invalid_argument("global_clustering: empty network");
    KahanSum sum;
    for (VertexId v = 0; v < n; ++v) {
        sum.add(weighted ? clustering_weighted(net, v) : clustering_unweighted(net, v));
    }
    return sum.value() / static_cast<double>(n);
}

namespace {

std::vector<double> bfs_distances(const Network& net, VertexId src) {
    std::vector<double> dist(net.vertex_count(), kInf);
    std::vector<VertexId> queue;
    queue.reserve(net.vertex_count());
    dist[src] = 0.0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId u = queue[head];
        double next = dist[u] + 1.0;
        for (const Neighbor& nb : net.neighbors(u)) {
            if (dist[nb.id] == kInf) {
                dist[nb.id] = next;
                queue.push_back(nb.id);
            }
        }
    }
    return dist;
}

// Flat O(V^2) Dijkstra; fastest for the dense few-hundred-vertex networks
// this pipeline produces, and allocation-free in the scan.
std::vector<double> dijkstra_dense(const Network& net, VertexId src) {
    const std::size_t n = net.vertex_count();
    std::vector<double> dist(n, kInf);
    std::vector<char> done(n, 0);
    dist[src] = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        double best = kInf;
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i] && dist[i] < best) {
                best = dist[i];
                u = i;
            }
        }
        if (u == n) break;
        done[u] = 1;
        for (const Neighbor& nb : net.neighbors(static_cast<VertexId>(u))) {
            double cand = best + 1.0 / static_cast<double>(nb.weight);
            if (cand < dist[nb.id]) dist[nb.id] = cand;
        }
    }
    return dist;
}

std::vector<double> dijkstra_heap(const Network& net, VertexId src) {
    std::vector<double> dist(net.vertex_count(), kInf);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const Neighbor& nb : net.neighbors(u)) {
            double cand = d + 1.0 / static_cast<double>(nb.weight);
            if (cand < dist[nb.id]) {
                dist[nb.id] = cand;
                heap.push({cand, nb.id});
            }
        }
    }
    return dist;
}

std::vector<double> distances(const Network& net, VertexId src, bool weighted) {
    if (!weighted) return bfs_distances(net, src);
    if (net.vertex_count() <= 2048) return dijkstra_dense(net, src);
    return dijkstra_heap(net, src);
}

}  // namespace

std::vector<double> shortest_path_lengths(const Network& net, VertexId v, bool weighted) {
    net.degree(v);  // bounds check
    auto dist = distances(net, v, weighted);
    for (double& d : dist) {
        if (d == kInf) d = kUnreachable;
    }
    return dist;
}

PathAverage avg_shortest_path_local(const Network& net, VertexId v, bool weighted, PathMode mode) {
    net.degree(v);  // bounds check
    const std::size_t n = net.vertex_count();
    auto dist = distances(net, v, weighted);
    KahanSum sum;
    std::size_t reachable = 0;
    for (std::size_t u = 0; u < n; ++u) {
        if (u == v || dist[u] == kInf) continue;
        sum.add(dist[u]);
        ++reachable;
    }
    bool cut = reachable + 1 < n;
    if (mode == PathMode::strict && cut) {
        throw std::runtime_error("avg_shortest_path_local: network is disconnected");
    }
    PathAverage out;
    out.restricted = cut;
    if (reachable > 0) out.value = sum.value() / static_cast<double>(reachable);
    return out;
}

std::vector<std::vector<VertexId>> connected_components(const Network& net) {
    const std::size_t n = net.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<VertexId>> components;
    std::vector<VertexId> stack;
    for (VertexId start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<VertexId> comp;
        seen[start] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (const Neighbor& nb : net.neighbors(u)) {
                if (!seen[nb.id]) {
                    seen[nb.id] = 1;
                    stack.push_back(nb.id);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

std::vector<VertexId> largest_component(const Network& net) {
    auto comps = connected_components(net);
    if (comps.empty()) return {};
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
        if (comps[i].size() > comps[best].size()) best = i;
    }
    return comps[best];
}

PathAverage avg_shortest_path_global(const Network& net, bool weighted, PathMode mode) {
    const std::size_t n = net.vertex_count();
    if (n == 0) throw std::invalid_argument("avg_shortest_path_global: empty network");
    auto comps = connected_components(net);
    bool cut = comps.size() > 1;
    if (mode == PathMode::strict && cut) {
        throw std::runtime_error("avg_shortest_path_global: network is disconnected");
    }
    PathAverage out;
    out.restricted = cut;
    const Network* target = &net;
    Network lcc;
    if (cut) {
        lcc = subnetwork(net, largest_component(net));
        target = &lcc;
    }
    const std::size_t tn = target->vertex_count();
    if (tn < 2) return out;  // no pair to average
    KahanSum sum;
    for (VertexId v = 0; v < tn; ++v) {
        auto local = avg_shortest_path_local(*target, v, weighted, PathMode::strict);
        sum.add(*local.value);
    }
    out.value = sum.value() / static_cast<double>(tn);
    return out;
}

std::optional<double> assortativity(const Network& net, bool weighted) {
    if (net.edge_count() == 0) throw std::invalid_argument("assortativity: network has no edges");
    const std::size_t n = net.vertex_count();
    std::optional<double> result;
    if (!weighted) {
        // All sums are exact in 64-bit integers at this problem's scale.
        std::int64_t count = 0, sx = 0, sxx = 0, sxy = 0;
        for (VertexId v = 0; v < n; ++v) {
            auto dv = static_cast<std::int64_t>(net.degree(v));
            for (const Neighbor& nb : net.neighbors(v)) {
                auto du = static_cast<std::int64_t>(net.degree(nb.id));
                // Each ordered endpoint pair visited exactly once.
                ++count;
                sx += dv;
                sxx += dv * dv;
                sxy += dv * du;
            }
        }
        double cnt = static_cast<double>(count);
        double cov = cnt * static_cast<double>(sxy) - static_cast<double>(sx) * static_cast<double>(sx);
        double var = cnt * static_cast<double>(sxx) - static_cast<double>(sx) * static_cast<double>(sx);
        if (var <= 0.0) return result;
        result = std::clamp(cov / var, -1.0, 1.0);
        return result;
    }
    KahanSum sw, swx, swxx, swxy;
    for (VertexId v = 0; v < n; ++v) {
        auto strv = static_cast<double>(net.strength(v));
        for (const Neighbor& nb : net.neighbors(v)) {
            auto stru = static_cast<double>(net.strength(nb.id));
            auto w = static_cast<double>(nb.weight);
            sw.add(w);
            swx.add(w * strv);
            swxx.add(w * strv * strv);
            swxy.add(w * strv * stru);
        }
    }
    double W = sw.value();
    double cov = W * swxy.value() - swx.value() * swx.value();
    double var = W * swxx.value() - swx.value() * swx.value();
    // Zero variance means every endpoint strength is equal; allow for the
    // rounding of the compensated sums.
    if (var <= 1e-9 * std::max(1.0, std::abs(W * swxx.value()))) return result;
    result = std::clamp(cov / var, -1.0, 1.0);
    return result;
}

double modularity_partition_score(const Network& net, std::span<const int> communities, bool weighted) {
    const std::size_t n = net.vertex_count();
    if (communities.size() != n) {
        throw std::invalid_argument("modularity_partition_score: partition size mismatch");
    }
    if (net.edge_count() == 0) {
        throw std::invalid_argument("modularity_partition_score: network has no edges");
    }
    // Dense community ids.
    std::unordered_map<int, std::size_t> dense;
    std::vector<std::int64_t> inside, total;
    for (std::size_t v = 0; v < n; ++v) {
        auto [it, inserted] = dense.try_emplace(communities[v], dense.size());
        if (inserted) {
            inside.push_back(0);
            total.push_back(0);
        }
        auto c = it->second;
        total[c] += weighted ? net.strength(static_cast<VertexId>(v))
                             : static_cast<std::int64_t>(net.degree(static_cast<VertexId>(v)));
    }
    for (VertexId v = 0; v < n; ++v) {
        for (const Neighbor& nb : net.neighbors(v)) {
            if (nb.id <= v) continue;
            if (communities[v] != communities[nb.id]) continue;
            inside[dense[communities[v]]] += weighted ? nb.weight : 1;
        }
    }
    const double m2 = weighted ? 2.0 * static_cast<double>(net.total_weight())
                               : 2.0 * static_cast<double>(net.edge_count());
    KahanSum q;
    for (std::size_t c = 0; c < inside.size(); ++c) {
        double frac_in = 2.0 * static_cast<double>(inside[c]) / m2;
        double frac_tot = static_cast<double>(total[c]) / m2;
        q.add(frac_in - frac_tot * frac_tot);
    }
    return q.value();
}

}  // namespace stylo
