/**
 * @file atlas.hpp
 * @brief Generators for the standard distance-regular families, the
 * distance-regularity test, and antipodal 2-cover detection.
 *
 * Vertex encodings:
 *  - hamming(n, q): the word w_0 w_1 ... w_{n-1} is the base-q integer
 *    sum w_i q^(n-1-i), so vertex order is lexicographic word order;
 *  - johnson(v, k), doubled_odd(k): subsets as bitmasks (bit i = element i),
 *    vertices numbered in increasing mask order;
 *  - halved_cube(m): even-weight binary m-words, increasing numeric order;
 *  - folded_cube(m): binary m-words with leading 0 (one per antipodal class).
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "crc/error.hpp"
#include "crc/graph.hpp"
#include "crc/spectral.hpp"

namespace crc {

namespace detail {

inline char digit_char(long long d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

inline int char_digit(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'z') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'Z') return ch - 'A' + 10;
    return -1;
}

inline std::string binary_word(std::uint64_t w, int length) {
    std::string s(static_cast<std::size_t>(length), '0');
    for (int i = 0; i < length; ++i)
        if (w >> (length - 1 - i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline std::string subset_label(std::uint64_t mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 64; ++i)
        if (mask >> i & 1u) {
            s += (first ? "" : ",") + std::to_string(i);
            first = false;
        }
    return s + "}";
}

/// All masks of `weight` bits among the low `width` bits, increasing.
inline std::vector<std::uint64_t> masks_of_weight(int width, int weight) {
    std::vector<std::uint64_t> out;
    if (weight < 0 || weight > width) return out;
    if (weight == 0) return {0};
    std::uint64_t m = (std::uint64_t{1} << weight) - 1;
    const std::uint64_t limit = std::uint64_t{1} << width;
    while (m < limit) {
        out.push_back(m);
        const std::uint64_t low = m & (~m + 1);
        const std::uint64_t ripple = m + low;
        m = ripple | (((m ^ ripple) >> 2) / low);
    }
    return out;
}

inline Vertex index_of_mask(const std::vector<std::uint64_t>& sorted, std::uint64_t mask) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), mask);
    if (it == sorted.end() || *it != mask) throw InvalidArgument("mask is not a vertex");
    return static_cast<Vertex>(it - sorted.begin());
}

inline long long checked_power(long long base, long long exp) {
    long long r = 1;
    for (long long i = 0; i < exp; ++i) {
        if (r > static_cast<long long>(Graph::kMaxOrder) / base)
            throw ParameterOutOfRange("vertex count exceeds 10^6");
        r *= base;
    }
    return r;
}

inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace detail

/// Words of Z_q^n adjacent when they differ in one coordinate.
inline Graph hamming(int n, int q) {
    if (n < 1 || q < 2 || q > 36) throw ParameterOutOfRange("hamming(n, q) needs n >= 1 and 2 <= q <= 36");
    const long long count = detail::checked_power(q, n);
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(count));
    std::vector<std::string> labels(static_cast<std::size_t>(count));
    for (long long v = 0; v < count; ++v) {
        std::string label(static_cast<std::size_t>(n), '0');
        long long rest = v, place = 1;
        for (int pos = n - 1; pos >= 0; --pos, place *= q) {
            const long long digit = rest % q;
            rest /= q;
            label[static_cast<std::size_t>(pos)] = detail::digit_char(digit);
            for (long long other = 0; other < q; ++other)
                if (other != digit) adj[static_cast<std::size_t>(v)].push_back(static_cast<Vertex>(v + (other - digit) * place));
        }
        labels[static_cast<std::size_t>(v)] = std::move(label);
    }
    return Graph(std::move(adj), {GraphSpec::Kind::hamming, {n, q}, {}}, std::move(labels));
}

/// k-subsets of a v-set adjacent when they meet in k-1 points.
inline Graph johnson(int v, int k) {
    if (v < 2 || v > 62 || k < 1 || k >= v) throw ParameterOutOfRange("johnson(v, k) needs 1 <= k < v <= 62");
    if (detail::binomial(v, k) > static_cast<long long>(Graph::kMaxOrder))
        throw ParameterOutOfRange("vertex count exceeds 10^6");
    const auto masks = detail::masks_of_weight(v, k);
    std::vector<std::vector<Vertex>> adj(masks.size());
    std::vector<std::string> labels(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const std::uint64_t s = masks[i];
        labels[i] = detail::subset_label(s);
        for (int out = 0; out < v; ++out) {
            if (!(s >> out & 1u)) continue;
            for (int in = 0; in < v; ++in) {
                if (s >> in & 1u) continue;
                adj[i].push_back(detail::index_of_mask(masks, (s & ~(std::uint64_t{1} << out)) | (std::uint64_t{1} << in)));
            }
        }
    }
    return Graph(std::move(adj), {GraphSpec::Kind::johnson, {v, k}, {}}, std::move(labels));
}

/// Even-weight binary m-words adjacent at Hamming distance 2.
inline Graph halved_cube(int m) {
    if (m < 2 || m > 21) throw ParameterOutOfRange("halved_cube(m) needs 2 <= m <= 21");
    std::vector<std::uint64_t> words;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << m); ++w)
        if (std::popcount(w) % 2 == 0) words.push_back(w);
    std::vector<std::vector<Vertex>> adj(words.size());
    std::vector<std::string> labels(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        labels[i] = detail::binary_word(words[i], m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                adj[i].push_back(detail::index_of_mask(words, words[i] ^ (std::uint64_t{1} << a) ^ (std::uint64_t{1} << b)));
    }
    return Graph(std::move(adj), {GraphSpec::Kind::halved_cube, {m}, {}}, std::move(labels));
}

/// The m-cube with antipodal words identified.
inline Graph folded_cube(int m) {
    if (m < 3 || m > 21) throw ParameterOutOfRange("folded_cube(m) needs 3 <= m <= 21");
    const std::uint64_t count = std::uint64_t{1} << (m - 1);
    const std::uint64_t all = count - 1;
    std::vector<std::vector<Vertex>> adj(count);
    std::vector<std::string> labels(count);
    for (std::uint64_t w = 0; w < count; ++w) {
        labels[w] = detail::binary_word(w, m);
        for (int a = 0; a < m - 1; ++a) adj[w].push_back(static_cast<Vertex>(w ^ (std::uint64_t{1} << a)));
        adj[w].push_back(static_cast<Vertex>(w ^ all));
    }
    return Graph(std::move(adj), {GraphSpec::Kind::folded_cube, {m}, {}}, std::move(labels));
}

/// (k-1)- and k-subsets of a (2k-1)-set adjacent by inclusion.
inline Graph doubled_odd(int k) {
    if (k < 2 || k > 11) throw ParameterOutOfRange("doubled_odd(k) needs 2 <= k <= 11");
    const int v = 2 * k - 1;
    auto masks = detail::masks_of_weight(v, k - 1);
    const auto upper = detail::masks_of_weight(v, k);
    masks.insert(masks.end(), upper.begin(), upper.end());
    std::vector<std::uint64_t> sorted = masks;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<Vertex>> adj(sorted.size());
    std::vector<std::string> labels(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const std::uint64_t s = sorted[i];
        labels[i] = detail::subset_label(s);
        const bool small = std::popcount(s) == k - 1;
        for (int e = 0; e < v; ++e) {
            const bool in = s >> e & 1u;
            if (small && !in) adj[i].push_back(detail::index_of_mask(sorted, s | (std::uint64_t{1} << e)));
            if (!small && in) adj[i].push_back(detail::index_of_mask(sorted, s & ~(std::uint64_t{1} << e)));
        }
    }
    return Graph(std::move(adj), {GraphSpec::Kind::doubled_odd, {k}, {}}, std::move(labels));
}

inline Graph cycle(int n) {
    if (n < 3 || static_cast<std::size_t>(n) > Graph::kMaxOrder) throw ParameterOutOfRange("cycle(n) needs 3 <= n <= 10^6");
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        adj[static_cast<std::size_t>(v)].push_back(static_cast<Vertex>((v + 1) % n));
        adj[static_cast<std::size_t>(v)].push_back(static_cast<Vertex>((v + n - 1) % n));
    }
    return Graph(std::move(adj), {GraphSpec::Kind::cycle, {n}, {}});
}

inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open graph file '" + path + "'");
    return read_graph(in, {GraphSpec::Kind::explicit_file, {}, path});
}

/// Parses "hamming 7 2", "johnson 5 2", "halved-cube 4", "folded-cube 5", "doubled-odd 3", "cycle 6", "file <path>".
inline GraphSpec parse_graph_spec(const std::string& text) {
    std::istringstream is(text);
    std::string name;
    if (!(is >> name)) throw InvalidArgument("empty graph spec");
    GraphSpec spec;
    std::size_t arity = 0;
    if (name == "hamming") spec.kind = GraphSpec::Kind::hamming, arity = 2;
    else if (name == "johnson") spec.kind = GraphSpec::Kind::johnson, arity = 2;
    else if (name == "halved-cube") spec.kind = GraphSpec::Kind::halved_cube, arity = 1;
    else if (name == "folded-cube") spec.kind = GraphSpec::Kind::folded_cube, arity = 1;
    else if (name == "doubled-odd") spec.kind = GraphSpec::Kind::doubled_odd, arity = 1;
    else if (name == "cycle") spec.kind = GraphSpec::Kind::cycle, arity = 1;
    else if (name == "file") {
        spec.kind = GraphSpec::Kind::explicit_file;
        if (!(is >> spec.path)) throw InvalidArgument("graph spec 'file' needs a path");
    } else {
        throw InvalidArgument("unknown graph family '" + name + "'");
    }
    for (std::size_t i = 0; i < arity; ++i) {
        long long p = 0;
        if (!(is >> p)) throw InvalidArgument("graph family '" + name + "' needs " + std::to_string(arity) + " integer parameter(s)");
        spec.params.push_back(p);
    }
    std::string extra;
    if (is >> extra) throw InvalidArgument("trailing text in graph spec: '" + extra + "'");
    return spec;
}

inline Graph generate(const GraphSpec& spec) {
    auto p = [&](std::size_t i) {
        const long long v = spec.params.at(i);
        if (v < 0 || v > 1'000'000) throw ParameterOutOfRange("graph parameter out of range");
        return static_cast<int>(v);
    };
    switch (spec.kind) {
        case GraphSpec::Kind::hamming: return hamming(p(0), p(1));
        case GraphSpec::Kind::johnson: return johnson(p(0), p(1));
        case GraphSpec::Kind::halved_cube: return halved_cube(p(0));
        case GraphSpec::Kind::folded_cube: return folded_cube(p(0));
        case GraphSpec::Kind::doubled_odd: return doubled_odd(p(0));
        case GraphSpec::Kind::cycle: return cycle(p(0));
        case GraphSpec::Kind::explicit_file: return read_graph_file(spec.path);
    }
    throw InvalidArgument("unknown graph family");
}

inline Graph generate(const std::string& spec) { return generate(parse_graph_spec(spec)); }

/**
 * Closed-form intersection array of a generated family, without building the
 * graph. Empty for cycles, explicit files, and families of diameter 1.
 */
inline std::optional<IntersectionArray> family_intersection_array(const GraphSpec& spec) {
    std::vector<long long> b, c;
    const auto& p = spec.params;
    switch (spec.kind) {
        case GraphSpec::Kind::hamming:
            for (long long i = 0; i < p[0]; ++i) b.push_back((p[0] - i) * (p[1] - 1)), c.push_back(i + 1);
            break;
        case GraphSpec::Kind::johnson: {
            const long long d = std::min(p[1], p[0] - p[1]);
            for (long long i = 0; i < d; ++i) b.push_back((p[1] - i) * (p[0] - p[1] - i)), c.push_back((i + 1) * (i + 1));
            break;
        }
        case GraphSpec::Kind::halved_cube: {
            const long long m = p[0], d = m / 2;
            for (long long i = 0; i < d; ++i) b.push_back((m - 2 * i) * (m - 2 * i - 1) / 2);
            for (long long i = 1; i <= d; ++i) c.push_back(i * (2 * i - 1));
            break;
        }
        case GraphSpec::Kind::folded_cube: {
            const long long m = p[0], d = m / 2;
            for (long long i = 0; i < d; ++i) b.push_back(m - i);
            for (long long i = 1; i <= d; ++i) c.push_back(i == d && m % 2 == 0 ? 2 * i : i);
            break;
        }
        case GraphSpec::Kind::doubled_odd: {
            const long long k = p[0];
            for (long long i = 0; i < 2 * k - 1; ++i) b.push_back(k - (i + 1) / 2);
            for (long long i = 1; i <= 2 * k - 1; ++i) c.push_back((i + 1) / 2);
            break;
        }
        default: return std::nullopt;
    }
    if (b.empty()) return std::nullopt;
    return IntersectionArray::relaxed(std::move(b), std::move(c));
}

/// Two vertex pairs at the same distance whose neighbor counts differ.
struct NotDistanceRegular {
    Vertex x = 0, y = 0;            ///< first offending pair in canonical order
    int distance = 0;
    long long expected_c = 0, expected_b = 0;
    long long found_c = 0, found_b = 0;
};

/**
 * Counts, for every ordered pair (x, y) at distance i, the neighbors of y at
 * distance i-1 and i+1 from x. Returns the intersection array when both
 * counts depend only on i, else the first violating pair. Diameter-1 graphs
 * come back as relaxed arrays.
 */
inline std::variant<IntersectionArray, NotDistanceRegular> is_distance_regular(const Graph& g) {
    std::vector<long long> c_of, b_of;  // indexed by distance
    for (Vertex x = 0; x < g.order(); ++x) {
        const auto dist = g.distances_from(x);
        for (Vertex y = 0; y < g.order(); ++y) {
            const int i = (*dist)[y];
            long long c = 0, b = 0;
            for (Vertex z : g.neighbors(y)) {
                if ((*dist)[z] == i - 1) ++c;
                else if ((*dist)[z] == i + 1) ++b;
            }
            const auto at = static_cast<std::size_t>(i);
            if (at >= c_of.size()) {
                if (x != 0) return NotDistanceRegular{x, y, i, -1, -1, c, b};
                c_of.resize(at + 1, -1);
                b_of.resize(at + 1, -1);
            }
            if (c_of[at] == -1) {
                c_of[at] = c;
                b_of[at] = b;
            } else if (c_of[at] != c || b_of[at] != b) {
                return NotDistanceRegular{x, y, i, c_of[at], b_of[at], c, b};
            }
        }
    }
    const std::size_t d = c_of.size() - 1;
    if (d == 0) return NotDistanceRegular{0, 0, 0, 0, 0, 0, 0};
    std::vector<long long> b(b_of.begin(), b_of.begin() + static_cast<std::ptrdiff_t>(d));
    std::vector<long long> c(c_of.begin() + 1, c_of.end());
    return IntersectionArray::relaxed(std::move(b), std::move(c));
}

/**
 * x -> the unique vertex at distance D. Evaluated on demand from BFS rows,
 * so it stays usable on graphs too large for an all-pairs pass.
 */
class AntipodalMap {
public:
    AntipodalMap(Graph g, std::size_t diameter) : g_(std::move(g)), d_(static_cast<int>(diameter)) {}

    Vertex operator()(Vertex x) const {
        const auto row = g_.distances_from(x);
        std::optional<Vertex> partner;
        for (Vertex y = 0; y < g_.order(); ++y) {
            if ((*row)[y] != d_) continue;
            if (partner) throw LemmaViolation("vertex " + std::to_string(x) + " has several antipodes");
            partner = y;
        }
        if (!partner) throw LemmaViolation("vertex " + std::to_string(x) + " has no vertex at distance D");
        return *partner;
    }

    /// pi as a full permutation (BFS from every vertex).
    std::vector<Vertex> permutation() const {
        std::vector<Vertex> pi(g_.order());
        for (Vertex x = 0; x < g_.order(); ++x) pi[x] = (*this)(x);
        return pi;
    }

    std::size_t diameter() const noexcept { return static_cast<std::size_t>(d_); }

private:
    Graph g_;
    int d_;
};

struct NotAntipodal {
    std::string reason;
};

/**
 * For a distance-regular g with array ia, every vertex has k_D vertices at
 * distance D, so g is an antipodal 2-cover exactly when k_D = 1.
 */
inline std::variant<AntipodalMap, NotAntipodal> antipodal_map(const Graph& g, const IntersectionArray& ia) {
    const auto k = valencies(ia);
    if (k.back() != 1) return NotAntipodal{"k_D = " + to_string(k.back()) + " vertices at distance D"};
    return AntipodalMap(g, ia.diameter());
}

}  // namespace crc
