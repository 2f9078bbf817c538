#include "stylograph/network.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "stylograph/common.hpp"

namespace stylo {

Network::Network(const Network& other) { *this = other; }

Network& Network::operator=(const Network& other) {
    if (this == &other) return *this;
    surfaces_ = other.surfaces_;
    frequency_ = other.frequency_;
    adjacency_ = other.adjacency_;
    strength_ = other.strength_;
    total_weight_ = other.total_weight_;
    edge_count_ = other.edge_count_;
    index_.clear();
    index_.reserve(surfaces_.size());
    for (VertexId v = 0; v < surfaces_.size(); ++v) index_.emplace(surfaces_[v], v);
    return *this;
}

VertexId Network::check(VertexId v) const {
    if (v >= surfaces_.size()) throw std::out_of_range("unknown vertex id");
    return v;
}

std::optional<VertexId> Network::find(std::string_view surface) const {
    auto it = index_.find(surface);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::int64_t Network::weight_between(VertexId u, VertexId v) const {
    const auto& adj = adjacency_[check(u)];
    check(v);
    auto it = std::lower_bound(adj.begin(), adj.end(), v,
                               [](const Neighbor& n, VertexId id) { return n.id < id; });
    if (it == adj.end() || it->id != v) return 0;
    return it->weight;
}

void Network::finalize_edges(std::unordered_map<std::uint64_t, std::int64_t>& accum) {
    adjacency_.assign(surfaces_.size(), {});
    strength_.assign(surfaces_.size(), 0);
    total_weight_ = 0;
    edge_count_ = accum.size();
    for (const auto& [key, w] : accum) {
        auto u = static_cast<VertexId>(key >> 32);
        auto v = static_cast<VertexId>(key & 0xFFFFFFFFu);
        adjacency_[u].push_back({v, w});
        adjacency_[v].push_back({u, w});
        strength_[u] += w;
        strength_[v] += w;
        total_weight_ += w;
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    }
    // Rebuild the surface index in place: string_view keys must point at the
    // final string storage.
    index_.clear();
    index_.reserve(surfaces_.size());
    for (VertexId v = 0; v < surfaces_.size(); ++v) index_.emplace(surfaces_[v], v);
}

Network build_network(const TokenStream& stream) {
    if (stream.size() < 2) throw std::invalid_argument("build_network: stream shorter than 2 tokens");
    Network net;
    net.surfaces_.reserve(1024);
    std::vector<VertexId> ids;
    ids.reserve(stream.size());
    {
        std::unordered_map<std::string_view, VertexId> tmp;
        tmp.reserve(2048);
        for (const auto& token : stream.tokens) {
            auto [it, inserted] = tmp.try_emplace(token, static_cast<VertexId>(net.surfaces_.size()));
            if (inserted) {
                net.surfaces_.push_back(token);
                net.frequency_.push_back(0);
            }
            ids.push_back(it->second);
            ++net.frequency_[it->second];
        }
    }
    std::unordered_map<std::uint64_t, std::int64_t> accum;
    accum.reserve(stream.size());
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        VertexId a = ids[i];
        VertexId b = ids[i + 1];
        if (a == b) continue;  // a word next to itself carries no edge
        if (a > b) std::swap(a, b);
        accum[(std::uint64_t(a) << 32) | b] += 1;
    }
    net.finalize_edges(accum);
    return net;
}

Network subnetwork(const Network& net, std::span<const VertexId> keep) {
    std::vector<VertexId> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("subnetwork: duplicate vertex in keep set");
    }
    for (VertexId v : sorted) net.check(v);

    std::vector<VertexId> remap(net.vertex_count(), UINT32_MAX);
    Network sub;
    for (VertexId nv = 0; nv < sorted.size(); ++nv) {
        VertexId old = sorted[nv];
        remap[old] = nv;
        sub.surfaces_.emplace_back(net.surfaces_[old]);
        sub.frequency_.push_back(net.frequency_[old]);
    }
    std::unordered_map<std::uint64_t, std::int64_t> accum;
    for (VertexId old : sorted) {
        for (const Neighbor& nb : net.adjacency_[old]) {
            if (nb.id <= old || remap[nb.id] == UINT32_MAX) continue;
            VertexId a = remap[old];
            VertexId b = remap[nb.id];
            accum[(std::uint64_t(a) << 32) | b] = nb.weight;
        }
    }
    sub.finalize_edges(accum);
    return sub;
}

void Network::write_edges(std::ostream& out) const {
    out << "vertices " << surfaces_.size() << "\n";
    for (VertexId v = 0; v < surfaces_.size(); ++v) {
        out << v << " " << surfaces_[v] << " " << frequency_[v] << "\n";
    }
    out << "edges " << edge_count_ << "\n";
    for (VertexId v = 0; v < surfaces_.size(); ++v) {
        for (const Neighbor& nb : adjacency_[v]) {
            if (nb.id > v) out << v << " " << nb.id << " " << nb.weight << "\n";
        }
    }
}

Network Network::read_edges(std::istream& in) {
    std::string word;
    std::size_t n = 0;
    if (!(in >> word >> n) || word != "vertices") {
        throw std::runtime_error("network dump: expected 'vertices <N>'");
    }
    Network net;
    net.surfaces_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t id;
        std::string surface;
        std::int64_t freq;
        if (!(in >> id >> surface >> freq) || id != i) {
            throw std::runtime_error("network dump: bad vertex record");
        }
        net.surfaces_.push_back(std::move(surface));
        net.frequency_.push_back(freq);
    }
    std::size_t m = 0;
    if (!(in >> word >> m) || word != "edges") {
        throw std::runtime_error("network dump: expected 'edges <m>'");
    }
    std::unordered_map<std::uint64_t, std::int64_t> accum;
    accum.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t u, v;
        std::int64_t w;
        if (!(in >> u >> v >> w) || u == v || u >= n || v >= n || w <= 0) {
            throw std::runtime_error("network dump: bad edge record");
        }
        if (u > v) std::swap(u, v);
        if (!accum.emplace((u << 32) | v, w).second) {
            throw std::runtime_error("network dump: duplicate edge");
        }
    }
    net.finalize_edges(accum);
    return net;
}

}  // namespace stylo
