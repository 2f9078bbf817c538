#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oracle {

void TestGraph::add_edge(std::size_t u, std::size_t v, std::int64_t weight) {
    if (u == v) throw std::invalid_argument("oracle graph: no self loops");
    w[u][v] = weight;
    w[v][u] = weight;
}

std::size_t TestGraph::degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t u = 0; u < n; ++u) {
        if (w[v][u] > 0) ++d;
    }
    return d;
}

std::int64_t TestGraph::strength(std::size_t v) const {
    std::int64_t s = 0;
    for (std::size_t u = 0; u < n; ++u) s += w[v][u];
    return s;
}

std::int64_t TestGraph::total_weight() const {
    std::int64_t total = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) total += w[u][v];
    }
    return total;
}

std::size_t TestGraph::edge_count() const {
    std::size_t m = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (w[u][v] > 0) ++m;
        }
    }
    return m;
}

TestGraph random_graph(stylo::Rng& rng, std::size_t n, double edge_prob, std::int64_t max_weight) {
    TestGraph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.unit() < edge_prob) {
                g.add_edge(u, v, 1 + static_cast<std::int64_t>(rng.below(max_weight)));
            }
        }
    }
    if (g.edge_count() == 0 && n >= 2) {
        std::size_t u = rng.below(n);
        std::size_t v = rng.below(n - 1);
        if (v >= u) ++v;
        g.add_edge(u, v, 1 + static_cast<std::int64_t>(rng.below(max_weight)));
    }
    return g;
}

stylo::Network to_network(const TestGraph& g) {
    std::ostringstream dump;
    dump << "vertices " << g.n << "\n";
    for (std::size_t v = 0; v < g.n; ++v) dump << v << " v" << v << " 1\n";
    dump << "edges " << g.edge_count() << "\n";
    for (std::size_t u = 0; u < g.n; ++u) {
        for (std::size_t v = u + 1; v < g.n; ++v) {
            if (g.w[u][v] > 0) dump << u << " " << v << " " << g.w[u][v] << "\n";
        }
    }
    std::istringstream in(dump.str());
    return stylo::Network::read_edges(in);
}

double clustering_u(const TestGraph& g, std::size_t v) {
    std::size_t k = g.degree(v);
    if (k < 2) return 0.0;
    std::size_t closed = 0;
    for (std::size_t a = 0; a < g.n; ++a) {
        for (std::size_t b = a + 1; b < g.n; ++b) {
            if (g.w[v][a] > 0 && g.w[v][b] > 0 && g.w[a][b] > 0) ++closed;
        }
    }
    return 2.0 * static_cast<double>(closed) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

double clustering_w(const TestGraph& g, std::size_t v) {
    std::size_t k = g.degree(v);
    if (k < 2) return 0.0;
    long double sum = 0.0L;
    for (std::size_t a = 0; a < g.n; ++a) {
        for (std::size_t b = a + 1; b < g.n; ++b) {
            if (g.w[v][a] > 0 && g.w[v][b] > 0 && g.w[a][b] > 0) {
                sum += static_cast<long double>(g.w[v][a] + g.w[v][b]);
            }
        }
    }
    long double denom = static_cast<long double>(g.strength(v)) * static_cast<long double>(k - 1);
    return static_cast<double>(sum / denom);
}

std::vector<std::vector<double>> all_pairs(const TestGraph& g, bool weighted) {
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(g.n, std::vector<double>(g.n, kInf));
    for (std::size_t v = 0; v < g.n; ++v) d[v][v] = 0.0;
    for (std::size_t u = 0; u < g.n; ++u) {
        for (std::size_t v = 0; v < g.n; ++v) {
            if (g.w[u][v] > 0) d[u][v] = weighted ? 1.0 / static_cast<double>(g.w[u][v]) : 1.0;
        }
    }
    for (std::size_t k = 0; k < g.n; ++k) {
        for (std::size_t i = 0; i < g.n; ++i) {
            for (std::size_t j = 0; j < g.n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
            }
        }
    }
    for (auto& row : d) {
        for (auto& x : row) {
            if (x == kInf) x = -1.0;
        }
    }
    return d;
}

std::optional<double> enumerated_distance(const TestGraph& g, std::size_t s, std::size_t t,
                                          bool weighted) {
    if (s == t) return 0.0;
    std::optional<double> best;
    std::vector<char> visited(g.n, 0);
    std::function<void(std::size_t, double)> walk = [&](std::size_t cur, double cost) {
        if (cur == t) {
            if (!best || cost < *best) best = cost;
            return;
        }
        visited[cur] = 1;
        for (std::size_t next = 0; next < g.n; ++next) {
            if (g.w[cur][next] == 0 || visited[next]) continue;
            double step = weighted ? 1.0 / static_cast<double>(g.w[cur][next]) : 1.0;
            if (best && cost + step >= *best) continue;  // cannot improve further down
            walk(next, cost + step);
        }
        visited[cur] = 0;
    };
    walk(s, 0.0);
    return best;
}

std::optional<double> avg_path_local(const TestGraph& g, std::size_t v, bool weighted) {
    auto d = all_pairs(g, weighted);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t u = 0; u < g.n; ++u) {
        if (u == v || d[v][u] < 0.0) continue;
        sum += d[v][u];
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

std::vector<int> components(const TestGraph& g) {
    std::vector<int> comp(g.n, -1);
    int next = 0;
    for (std::size_t start = 0; start < g.n; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<std::size_t> stack = {start};
        comp[start] = next;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t u = 0; u < g.n; ++u) {
                if (g.w[v][u] > 0 && comp[u] < 0) {
                    comp[u] = next;
                    stack.push_back(u);
                }
            }
        }
        ++next;
    }
    return comp;
}

std::optional<double> avg_path_global(const TestGraph& g, bool weighted) {
    auto comp = components(g);
    int labels = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> sizes(labels, 0);
    for (int c : comp) sizes[c] += 1;
    // Largest component; the earliest one wins ties (components are numbered
    // by their lowest vertex).
    int biggest = 0;
    for (int c = 1; c < labels; ++c) {
        if (sizes[c] > sizes[biggest]) biggest = c;
    }
    if (sizes[biggest] < 2) return std::nullopt;
    auto d = all_pairs(g, weighted);
    double total = 0.0;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (comp[v] != biggest) continue;
        double sum = 0.0;
        for (std::size_t u = 0; u < g.n; ++u) {
            if (u == v || comp[u] != biggest) continue;
            sum += d[v][u];
        }
        total += sum / static_cast<double>(sizes[biggest] - 1);
    }
    return total / static_cast<double>(sizes[biggest]);
}

std::optional<double> assortativity(const TestGraph& g, bool weighted) {
    long double sw = 0.0L, sx = 0.0L, sy = 0.0L, sxx = 0.0L, syy = 0.0L, sxy = 0.0L;
    for (std::size_t u = 0; u < g.n; ++u) {
        for (std::size_t v = 0; v < g.n; ++v) {
            if (g.w[u][v] == 0) continue;  // every ordered endpoint pair once
            long double pw = weighted ? static_cast<long double>(g.w[u][v]) : 1.0L;
            long double x = weighted ? static_cast<long double>(g.strength(u))
                                     : static_cast<long double>(g.degree(u));
            long double y = weighted ? static_cast<long double>(g.strength(v))
                                     : static_cast<long double>(g.degree(v));
            sw += pw;
            sx += pw * x;
            sy += pw * y;
            sxx += pw * x * x;
            syy += pw * y * y;
            sxy += pw * x * y;
        }
    }
    if (sw == 0.0L) return std::nullopt;
    long double cov = sw * sxy - sx * sy;
    long double vx = sw * sxx - sx * sx;
    long double vy = sw * syy - sy * sy;
    if (vx <= 0.0L || vy <= 0.0L) return std::nullopt;
    return static_cast<double>(cov / std::sqrt(vx * vy));
}

double modularity(const TestGraph& g, const std::vector<int>& communities, bool weighted) {
    long double two_m = 0.0L;
    for (std::size_t u = 0; u < g.n; ++u) {
        for (std::size_t v = 0; v < g.n; ++v) {
            if (g.w[u][v] > 0) two_m += weighted ? static_cast<long double>(g.w[u][v]) : 1.0L;
        }
    }
    if (two_m == 0.0L) throw std::invalid_argument("oracle modularity: empty graph");
    long double q = 0.0L;
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            if (communities[i] != communities[j]) continue;
            long double a = 0.0L;
            if (g.w[i][j] > 0) a = weighted ? static_cast<long double>(g.w[i][j]) : 1.0L;
            long double ki = weighted ? static_cast<long double>(g.strength(i))
                                      : static_cast<long double>(g.degree(i));
            long double kj = weighted ? static_cast<long double>(g.strength(j))
                                      : static_cast<long double>(g.degree(j));
            q += a - ki * kj / two_m;
        }
    }
    return static_cast<double>(q / two_m);
}

double best_modularity(const TestGraph& g, bool weighted, std::vector<int>* best_partition) {
    std::vector<int> comm(g.n, 0);
    double best = -2.0;
    std::function<void(std::size_t, int)> assign = [&](std::size_t i, int used) {
        if (i == g.n) {
            double q = modularity(g, comm, weighted);
            if (q > best) {
                best = q;
                if (best_partition) *best_partition = comm;
            }
            return;
        }
        for (int c = 0; c <= used; ++c) {
            comm[i] = c;
            assign(i + 1, c == used ? used + 1 : used);
        }
    };
    assign(1, 1);  // vertex 0 pinned to community 0
    return best;
}

}  // namespace oracle
