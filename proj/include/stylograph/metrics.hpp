#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stylograph/network.hpp"

namespace stylo {

// Local clustering: fraction of linked neighbor pairs; 0 when deg <= 1.
double clustering_unweighted(const Network& net, VertexId v);
// Barrat weighted clustering: each closed neighbor pair (u,t), taken ordered,
// contributes (w_vu + w_vt)/2, normalized by str(v) * (deg(v) - 1).
double clustering_weighted(const Network& net, VertexId v);
// Mean of the local values over all vertices.
double global_clustering(const Network& net, bool weighted);

// How disconnected inputs are treated by the path averages.
enum class PathMode {
    component,  // average over the reachable part, flag the restriction
    strict,     // any unreachable pair is an error
};

inline constexpr double kUnreachable = -1.0;

// Distances from v to every vertex: hop counts, or minimal sums of 1/w.
// Unreachable vertices get kUnreachable.
std::vector<double> shortest_path_lengths(const Network& net, VertexId v, bool weighted);

struct PathAverage {
    std::optional<double> value;  // empty when no pair exists to average
    bool restricted = false;      // true when a disconnected part was excluded

    bool defined() const { return value.has_value(); }
};

// Mean distance from v to the other vertices. In component mode the average
// runs over v's component only.
PathAverage avg_shortest_path_local(const Network& net, VertexId v, bool weighted,
                                    PathMode mode = PathMode::component);
// Mean of the local averages. In component mode the network is first
// restricted to its largest connected component (ties: the component holding
// the lowest vertex id).
PathAverage avg_shortest_path_global(const Network& net, bool weighted,
                                     PathMode mode = PathMode::component);

// Vertex sets of connected components, ordered by lowest contained vertex id.
std::vector<std::vector<VertexId>> connected_components(const Network& net);
std::vector<VertexId> largest_component(const Network& net);

// Pearson correlation of endpoint degrees (strengths when weighted) over the
// ordered endpoint pairs, two per edge; the weighted form weighs each pair by
// its edge weight. Empty when a marginal has zero variance.
std::optional<double> assortativity(const Network& net, bool weighted);

// Modularity of a given community assignment (one id per vertex).
double modularity_partition_score(const Network& net, std::span<const int> communities, bool weighted);

struct Partition {
    std::vector<int> communities;
    double score = 0.0;
};

// Louvain heuristic over seeded vertex orders; best of `restarts` runs and of
// the all-in-one partition, so the result is never below 0. Tied move gains
// resolve toward the lowest community id.
Partition modularity_louvain(const Network& net, bool weighted, std::uint64_t seed, int restarts = 1);

}  // namespace stylo
