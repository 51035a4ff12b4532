/**
 * @file coset.hpp
 * @brief Additive codes in Hamming graphs, coset partitions and coset graphs.
 *
 * Words of Z_q^n are identified with vertices of hamming(n, q): the word
 * (w_0, ..., w_{n-1}) is vertex sum w_i q^(n-1-i).
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "crc/atlas.hpp"
#include "crc/code.hpp"
#include "crc/error.hpp"
#include "crc/graph.hpp"
#include "crc/spectral.hpp"

namespace crc {

using Word = std::vector<int>;

namespace detail {

inline bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

inline int inverse_mod(int a, int p) {
    int result = 1;
    for (int e = p - 2, base = a % p; e > 0; e >>= 1, base = base * base % p)
        if (e & 1) result = result * base % p;
    return result;
}

}  // namespace detail

inline Vertex word_to_vertex(const Word& w, int q) {
    std::uint64_t id = 0;
    for (int digit : w) {
        if (digit < 0 || digit >= q) throw InvalidArgument("symbol " + std::to_string(digit) + " outside Z_" + std::to_string(q));
        id = id * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(digit);
    }
    return static_cast<Vertex>(id);
}

inline Word vertex_to_word(Vertex v, int n, int q) {
    Word w(static_cast<std::size_t>(n));
    for (int pos = n - 1; pos >= 0; --pos, v /= static_cast<Vertex>(q)) w[static_cast<std::size_t>(pos)] = static_cast<int>(v % static_cast<Vertex>(q));
    return w;
}

/// Subgroup of Z_q^n (q prime) spanned by the generators.
class AdditiveCode {
public:
    AdditiveCode(int q, int n, std::vector<Word> generators) : q_(q), n_(n), generators_(std::move(generators)) {
        if (!detail::is_prime(q)) throw InvalidArgument("alphabet size " + std::to_string(q) + " is not prime");
        if (n < 1) throw InvalidArgument("code length must be positive");
        if (static_cast<std::size_t>(detail::checked_power(q, n)) > Graph::kMaxOrder)
            throw ParameterOutOfRange("q^n exceeds 10^6");
        for (const auto& g : generators_)
            if (g.size() != static_cast<std::size_t>(n)) throw InvalidArgument("generator length differs from n");
        // closure: S <- S + <g> for each generator in turn
        std::vector<bool> in(static_cast<std::size_t>(detail::checked_power(q, n)), false);
        closure_ = {0};
        in[0] = true;
        for (const auto& g : generators_) {
            const std::size_t before = closure_.size();
            Word multiple = g;
            for (int c = 1; c < q; ++c) {
                for (std::size_t s = 0; s < before; ++s) {
                    const Vertex v = add(closure_[s], word_to_vertex(multiple, q));
                    if (!in[v]) {
                        in[v] = true;
                        closure_.push_back(v);
                    }
                }
                for (int i = 0; i < n; ++i) multiple[static_cast<std::size_t>(i)] = (multiple[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(i)]) % q;
            }
        }
        std::sort(closure_.begin(), closure_.end());
    }

    int q() const noexcept { return q_; }
    int n() const noexcept { return n_; }
    const std::vector<Word>& generators() const noexcept { return generators_; }
    /// Codewords as vertex ids of hamming(n, q), sorted.
    const std::vector<Vertex>& closure() const noexcept { return closure_; }
    std::size_t size() const noexcept { return closure_.size(); }
    bool contains(Vertex v) const { return std::binary_search(closure_.begin(), closure_.end(), v); }

    /// Digitwise sum in Z_q^n.
    Vertex add(Vertex a, Vertex b) const {
        if (q_ == 2) return a ^ b;
        Vertex out = 0, place = 1;
        for (int i = 0; i < n_; ++i, place *= static_cast<Vertex>(q_)) {
            const Vertex da = a % static_cast<Vertex>(q_), db = b % static_cast<Vertex>(q_);
            out += ((da + db) % static_cast<Vertex>(q_)) * place;
            a /= static_cast<Vertex>(q_);
            b /= static_cast<Vertex>(q_);
        }
        return out;
    }

    /// GF(q) dimension.
    int dimension() const {
        int d = 0;
        for (std::size_t s = 1; s < closure_.size(); s *= static_cast<std::size_t>(q_)) ++d;
        return d;
    }

    Code as_code(const Graph& hamming_graph) const {
        const auto& spec = hamming_graph.spec();
        if (spec.kind != GraphSpec::Kind::hamming || spec.params != std::vector<long long>{n_, q_})
            throw InvalidArgument("additive code of length " + std::to_string(n_) + " over Z_" + std::to_string(q_) +
                                  " needs hamming " + std::to_string(n_) + " " + std::to_string(q_));
        return Code(hamming_graph, closure_);
    }

private:
    int q_, n_;
    std::vector<Word> generators_;
    std::vector<Vertex> closure_;
};

struct CosetPartition {
    std::vector<std::vector<Vertex>> cells;  ///< cells[0] = C
    std::vector<Vertex> coset_of;            ///< vertex -> cell index
};

inline CosetPartition coset_partition(const AdditiveCode& c) {
    const auto total = static_cast<std::size_t>(detail::checked_power(c.q(), c.n()));
    CosetPartition p{{}, std::vector<Vertex>(total, 0)};
    std::vector<bool> done(total, false);
    for (Vertex x = 0; x < total; ++x) {
        if (done[x]) continue;
        std::vector<Vertex> cell;
        for (Vertex w : c.closure()) {
            const Vertex y = c.add(x, w);
            done[y] = true;
            p.coset_of[y] = static_cast<Vertex>(p.cells.size());
            cell.push_back(y);
        }
        std::sort(cell.begin(), cell.end());
        p.cells.push_back(std::move(cell));
    }
    return p;
}

/**
 * Every cell completely regular with one common quotient matrix. Throws
 * InvalidArgument if the cells do not partition the vertex set.
 */
inline std::optional<QuotientMatrix> completely_regular_partition_quotient(const Graph& g,
                                                                           const std::vector<std::vector<Vertex>>& part) {
    std::vector<bool> covered(g.order(), false);
    std::size_t count = 0;
    for (const auto& cell : part)
        for (Vertex v : cell) {
            if (v >= g.order() || covered[v]) throw InvalidArgument("cells do not partition the vertex set");
            covered[v] = true;
            ++count;
        }
    if (count != g.order()) throw InvalidArgument("cells do not cover the vertex set");
    std::optional<QuotientMatrix> common;
    for (const auto& cell : part) {
        if (cell.size() != part.front().size()) return std::nullopt;
        const auto cr = is_completely_regular(Code(g, cell), RegularityOptions{false});
        if (!cr.is_completely_regular()) return std::nullopt;
        if (!common) common = cr.quotient();
        else if (!(*common == cr.quotient())) return std::nullopt;
    }
    return common;
}

inline bool is_completely_regular_partition(const Graph& g, const std::vector<std::vector<Vertex>>& part) {
    return completely_regular_partition_quotient(g, part).has_value();
}

struct CosetGraph {
    Graph graph;
    /// Edges of the ambient graph from a vertex into an adjacent coset; absent when not uniform.
    std::optional<long long> multiplicity;
    std::vector<Vertex> coset_of;
};

/// Quotient of hamming(n, q) by the cosets of c; loops dropped, parallel edges merged.
inline CosetGraph coset_graph(const Graph& g, const AdditiveCode& c) {
    c.as_code(g);  // validates the ambient graph
    auto part = coset_partition(c);
    const std::size_t cells = part.cells.size();
    std::vector<std::vector<Vertex>> adj(cells);
    std::optional<long long> multiplicity;
    bool uniform = true;
    std::vector<long long> hits(cells, 0);
    for (std::size_t i = 0; i < cells; ++i) {
        const Vertex rep = part.cells[i].front();
        std::vector<Vertex> touched;
        for (Vertex y : g.neighbors(rep)) {
            const Vertex j = part.coset_of[y];
            if (j == i) continue;
            if (hits[j]++ == 0) touched.push_back(j);
        }
        for (Vertex j : touched) {
            adj[i].push_back(j);
            if (!multiplicity) multiplicity = hits[j];
            else if (*multiplicity != hits[j]) uniform = false;
            hits[j] = 0;
        }
    }
    if (!uniform) multiplicity.reset();
    // the coset graph is the same from every representative, so one per cell suffices
    return {Graph(std::move(adj)), multiplicity, std::move(part.coset_of)};
}

/// L(quotient) == (U - alpha_0 I) / gamma_1, compared exactly.
inline bool quotient_relation_check(const QuotientMatrix& u, const IntersectionArray& quotient_ia) {
    if (u.rho() == 0 || u.rho() != quotient_ia.diameter()) return false;
    const long long g1 = u.gamma(1), a0 = u.alpha(0);
    const auto lhs = tridiagonal_matrix(quotient_ia);
    const auto rhs = u.dense();
    for (std::size_t i = 0; i <= u.rho(); ++i)
        for (std::size_t j = 0; j <= u.rho(); ++j)
            if (g1 * lhs(i, j) != rhs(i, j) - (i == j ? a0 : 0)) return false;
    return true;
}

/// Basis of {x : M x = 0} over GF(p), in reduced echelon form of the free variables.
inline std::vector<Word> null_space_mod_p(std::vector<Word> rows, std::size_t cols, int p) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (auto& row : rows) {
        if (row.size() != cols) throw InvalidArgument("ragged matrix");
        for (auto& x : row) x = ((x % p) + p) % p;
    }
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[r]);
        const int inv = detail::inverse_mod(rows[r][col], p);
        for (auto& x : rows[r]) x = x * inv % p;
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == r || rows[o][col] == 0) continue;
            const int f = rows[o][col];
            for (std::size_t c = 0; c < cols; ++c) rows[o][c] = ((rows[o][c] - f * rows[r][c]) % p + p) % p;
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<Word> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
        Word v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = (p - rows[i][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// m x C(m, l) matrix whose columns are the weight-l words of length m, subsets in lexicographic order.
inline std::vector<Word> rifa_zinoviev_check_matrix(int m, int l) {
    if (m < 3 || l < 2 || l >= m) throw ParameterOutOfRange("rifa-zinoviev needs m >= 3 and 2 <= l < m");
    const long long len = detail::binomial(m, l);
    if (len > 20) throw ParameterOutOfRange("code length C(m, l) = " + std::to_string(len) + " exceeds 20");
    std::vector<Word> h(static_cast<std::size_t>(m), Word(static_cast<std::size_t>(len), 0));
    std::vector<int> subset(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) subset[static_cast<std::size_t>(i)] = i;
    for (long long col = 0; col < len; ++col) {
        for (int e : subset) h[static_cast<std::size_t>(e)][static_cast<std::size_t>(col)] = 1;
        int i = l - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == m - l + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < l; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    return h;
}

/// Binary null space of the weight-l check matrix.
inline AdditiveCode rifa_zinoviev(int m, int l) {
    const auto h = rifa_zinoviev_check_matrix(m, l);
    const std::size_t len = h.front().size();
    return AdditiveCode(2, static_cast<int>(len), null_space_mod_p(h, len, 2));
}

/// One generator per line: a digit string ("0110") or whitespace-separated symbols.
inline std::vector<Word> read_generators(std::istream& is, int q) {
    std::vector<Word> gens;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        Word w;
        std::istringstream tokens(line);
        std::vector<std::string> parts;
        for (std::string tok; tokens >> tok;) parts.push_back(tok);
        const bool spaced = parts.size() > 1;
        for (const auto& tok : parts) {
            if (spaced) {
                std::size_t used = 0;
                int v = -1;
                try {
                    v = std::stoi(tok, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok.size()) throw FileFormatError("bad symbol '" + tok + "'", line_no);
                w.push_back(v);
            } else {
                for (char ch : tok) w.push_back(detail::char_digit(ch));
            }
        }
        for (int s : w)
            if (s < 0 || s >= q) throw FileFormatError("symbol outside Z_" + std::to_string(q), line_no);
        if (!gens.empty() && w.size() != gens.front().size())
            throw FileFormatError("generator length " + std::to_string(w.size()) + " differs from " +
                                      std::to_string(gens.front().size()),
                                  line_no);
        gens.push_back(std::move(w));
    }
    if (gens.empty()) throw FileFormatError("no generators found");
    return gens;
}

inline AdditiveCode read_additive_code(const std::string& path, int q) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open " + path);
    auto gens = read_generators(in, q);
    const int n = static_cast<int>(gens.front().size());
    return AdditiveCode(q, n, std::move(gens));
}

inline void write_generators(std::ostream& os, const AdditiveCode& c) {
    for (const auto& g : c.generators()) {
        for (int s : g) os << detail::digit_char(s);
        os << '\n';
    }
}

}  // namespace crc
