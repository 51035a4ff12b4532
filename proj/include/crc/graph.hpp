/**
 * @file graph.hpp
 * @brief Immutable undirected graphs with cached breadth-first distances.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crc/error.hpp"

namespace crc {

using Vertex = std::uint32_t;

inline constexpr int kUnreached = -1;

/// Which construction produced a graph; drives vertex label parsing.
struct GraphSpec {
    enum class Kind { hamming, johnson, halved_cube, folded_cube, doubled_odd, cycle, explicit_file };

    Kind kind = Kind::explicit_file;
    std::vector<long long> params;
    std::string path;  ///< explicit_file only

    std::string to_string() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::hamming: os << "hamming"; break;
            case Kind::johnson: os << "johnson"; break;
            case Kind::halved_cube: os << "halved-cube"; break;
            case Kind::folded_cube: os << "folded-cube"; break;
            case Kind::doubled_odd: os << "doubled-odd"; break;
            case Kind::cycle: os << "cycle"; break;
            case Kind::explicit_file: os << "file"; break;
        }
        for (auto p : params) os << ' ' << p;
        if (kind == Kind::explicit_file && !path.empty()) os << ' ' << path;
        return os.str();
    }
};

/**
 * Symmetric, loop-free, connected graph on vertices 0..n-1.
 *
 * Copies share the adjacency lists and the distance cache, so passing a
 * Graph by value is cheap.
 */
class Graph {
public:
    /// Maximum vertex count accepted by every constructor.
    static constexpr std::size_t kMaxOrder = 1'000'000;

    explicit Graph(std::vector<std::vector<Vertex>> adjacency, GraphSpec spec = {},
                   std::vector<std::string> labels = {})
        : data_(std::make_shared<Data>()) {
        const std::size_t n = adjacency.size();
        if (n == 0) throw InvalidArgument("graph must have at least one vertex");
        if (n > kMaxOrder) throw ParameterOutOfRange("graph has more than 10^6 vertices");
        if (!labels.empty() && labels.size() != n) throw InvalidArgument("label count differs from vertex count");
        for (std::size_t v = 0; v < n; ++v) {
            auto& nb = adjacency[v];
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw InvalidArgument("multiple edge at vertex " + std::to_string(v));
            for (Vertex w : nb) {
                if (w >= n) throw InvalidArgument("neighbor " + std::to_string(w) + " out of range");
                if (w == v) throw InvalidArgument("loop at vertex " + std::to_string(v));
            }
        }
        for (std::size_t v = 0; v < n; ++v)
            for (Vertex w : adjacency[v])
                if (!std::binary_search(adjacency[w].begin(), adjacency[w].end(), static_cast<Vertex>(v)))
                    throw InvalidArgument("asymmetric edge " + std::to_string(v) + "-" + std::to_string(w));
        data_->adjacency = std::move(adjacency);
        data_->spec = std::move(spec);
        data_->labels = std::move(labels);
        const auto dist = bfs(0);
        if (std::find(dist.begin(), dist.end(), kUnreached) != dist.end())
            throw InvalidArgument("graph is disconnected");
    }

    static Graph from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges, GraphSpec spec = {}) {
        if (n > kMaxOrder) throw ParameterOutOfRange("graph has more than 10^6 vertices");
        std::vector<std::vector<Vertex>> adj(n);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return Graph(std::move(adj), std::move(spec));
    }

    std::size_t order() const noexcept { return data_->adjacency.size(); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return data_->adjacency.at(v); }
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    bool adjacent(Vertex u, Vertex v) const {
        const auto& nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }
    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : data_->adjacency) twice += nb.size();
        return twice / 2;
    }

    const GraphSpec& spec() const noexcept { return data_->spec; }
    bool has_labels() const noexcept { return !data_->labels.empty(); }
    std::string label(Vertex v) const { return has_labels() ? data_->labels.at(v) : std::to_string(v); }

    /// Distances from source; fresh BFS, nothing cached.
    std::vector<int> bfs(Vertex source) const { return multi_source_bfs({source}); }

    /// Layered BFS from a set of sources; result[v] = d(v, sources).
    std::vector<int> multi_source_bfs(const std::vector<Vertex>& sources) const {
        std::vector<int> dist(order(), kUnreached);
        std::vector<Vertex> frontier;
        for (Vertex s : sources) {
            if (s >= order()) throw InvalidArgument("source vertex out of range");
            if (dist[s] == kUnreached) {
                dist[s] = 0;
                frontier.push_back(s);
            }
        }
        std::vector<Vertex> next;
        for (int level = 1; !frontier.empty(); ++level) {
            next.clear();
            for (Vertex u : frontier)
                for (Vertex w : data_->adjacency[u])
                    if (dist[w] == kUnreached) {
                        dist[w] = level;
                        next.push_back(w);
                    }
            frontier.swap(next);
        }
        return dist;
    }

    /**
     * Distances from source, cached for graphs small enough that keeping
     * rows around is harmless. Filling is idempotent, so concurrent callers
     * at worst compute the same row twice.
     */
    std::shared_ptr<const std::vector<int>> distances_from(Vertex source) const {
        const bool cacheable = order() <= kCacheOrderLimit;
        if (cacheable) {
            std::lock_guard lock(data_->cache_mutex);
            if (auto it = data_->cache.find(source); it != data_->cache.end()) return it->second;
        }
        auto row = std::make_shared<const std::vector<int>>(bfs(source));
        if (cacheable) {
            std::lock_guard lock(data_->cache_mutex);
            if (data_->cache.size() * order() < kCacheEntryBudget) data_->cache.emplace(source, row);
        }
        return row;
    }

    int distance(Vertex u, Vertex v) const { return (*distances_from(u))[v]; }

    /// Largest eccentricity; BFS from every vertex.
    int diameter() const {
        int d = 0;
        for (Vertex v = 0; v < order(); ++v) {
            const auto row = distances_from(v);
            d = std::max(d, *std::max_element(row->begin(), row->end()));
        }
        return d;
    }

private:
    static constexpr std::size_t kCacheOrderLimit = 1u << 16;
    static constexpr std::size_t kCacheEntryBudget = 1u << 24;

    struct Data {
        std::vector<std::vector<Vertex>> adjacency;
        GraphSpec spec;
        std::vector<std::string> labels;
        std::mutex cache_mutex;
        std::unordered_map<Vertex, std::shared_ptr<const std::vector<int>>> cache;
    };
    std::shared_ptr<Data> data_;
};

/// Writes "n m" followed by one "u v" line per edge (u < v).
inline void write_graph(std::ostream& os, const Graph& g) {
    os << g.order() << ' ' << g.edge_count() << '\n';
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v : g.neighbors(u))
            if (u < v) os << u << ' ' << v << '\n';
}

inline Graph read_graph(std::istream& is, GraphSpec spec = {}) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_line()) throw FileFormatError("empty graph file");
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n <= 0 || m < 0) throw FileFormatError("expected header \"n m\"", line_no);
    std::string extra;
    if (header >> extra) throw FileFormatError("trailing text after header", line_no);
    if (static_cast<std::size_t>(n) > Graph::kMaxOrder) throw FileFormatError("more than 10^6 vertices", line_no);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (long long e = 0; e < m; ++e) {
        if (!next_line()) throw FileFormatError("expected " + std::to_string(m) + " edges, found " + std::to_string(e), line_no);
        std::istringstream row(line);
        long long u = -1, v = -1;
        if (!(row >> u >> v) || (row >> extra)) throw FileFormatError("expected \"u v\"", line_no);
        if (u < 0 || v < 0 || u >= n || v >= n) throw FileFormatError("vertex out of range", line_no);
        if (u == v) throw FileFormatError("loop edge", line_no);
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (next_line()) throw FileFormatError("more edge lines than announced", line_no);
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (std::size_t v = 0; v < adj.size(); ++v) {
        std::sort(adj[v].begin(), adj[v].end());
        if (std::adjacent_find(adj[v].begin(), adj[v].end()) != adj[v].end())
            throw FileFormatError("duplicate edge at vertex " + std::to_string(v));
    }
    try {
        return Graph(std::move(adj), std::move(spec));
    } catch (const InvalidArgument& e) {
        throw FileFormatError(e.what());
    }
}

}  // namespace crc
