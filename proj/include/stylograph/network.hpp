#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stylograph/preprocess.hpp"

namespace stylo {

using VertexId = std::uint32_t;

struct Neighbor {
    VertexId id;
    std::int64_t weight;
};

// Undirected weighted word-adjacency graph. Vertices are indexed in first
// occurrence order of their token; neighbor lists are sorted by vertex id.
// Immutable after construction, so concurrent reads are safe.
class Network {
public:
    Network() = default;
    // The surface index views into surfaces_, so copies must rebuild it.
    // Moves are fine: the string objects stay where they are.
    Network(const Network& other);
    Network& operator=(const Network& other);
    Network(Network&&) noexcept = default;
    Network& operator=(Network&&) noexcept = default;

    std::size_t vertex_count() const { return surfaces_.size(); }
    std::size_t edge_count() const { return edge_count_; }        // m
    std::int64_t total_weight() const { return total_weight_; }   // M

    std::string_view surface(VertexId v) const { return surfaces_[check(v)]; }
    std::optional<VertexId> find(std::string_view surface) const;
    std::int64_t frequency(VertexId v) const { return frequency_[check(v)]; }
    std::size_t degree(VertexId v) const { return adjacency_[check(v)].size(); }
    std::int64_t strength(VertexId v) const { return strength_[check(v)]; }
    std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_[check(v)]; }
    std::int64_t weight_between(VertexId u, VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const { return weight_between(u, v) > 0; }

    void write_edges(std::ostream& out) const;
    static Network read_edges(std::istream& in);

    friend Network build_network(const TokenStream& stream);
    friend Network subnetwork(const Network& net, std::span<const VertexId> keep);

private:
    VertexId check(VertexId v) const;
    void finalize_edges(std::unordered_map<std::uint64_t, std::int64_t>& accum);

    std::vector<std::string> surfaces_;
    std::unordered_map<std::string_view, VertexId> index_;
    std::vector<std::int64_t> frequency_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<std::int64_t> strength_;
    std::int64_t total_weight_ = 0;
    std::size_t edge_count_ = 0;
};

// One vertex per distinct token; every adjacent pair of distinct tokens adds
// one to that pair's edge weight. Requires at least two tokens.
Network build_network(const TokenStream& stream);

// Induced subgraph on `keep` (original vertex ids; duplicates, unknown ids
// rejected). Vertices keep their relative order.
Network subnetwork(const Network& net, std::span<const VertexId> keep);

}  // namespace stylo
