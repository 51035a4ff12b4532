/**
 * @file code.hpp
 * @brief Codes (vertex subsets) in a graph: distance partitions, complete
 * regularity, quotient matrices, outer distribution, and code spectra.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "crc/error.hpp"
#include "crc/graph.hpp"
#include "crc/matrix.hpp"
#include "crc/scalar.hpp"
#include "crc/spectral.hpp"
#include "crc/tridiagonal.hpp"

namespace crc {

/// Nonempty vertex subset of a graph.
class Code {
public:
    Code(Graph g, std::vector<Vertex> vertices) : g_(std::move(g)), vertices_(std::move(vertices)) {
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
        if (vertices_.empty()) throw InvalidArgument("a code must be nonempty");
        if (vertices_.back() >= g_.order()) throw InvalidArgument("codeword outside the vertex set");
    }

    const Graph& graph() const noexcept { return g_; }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    bool contains(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }
    bool is_trivial() const noexcept { return size() <= 1 || size() == g_.order(); }

private:
    Graph g_;
    std::vector<Vertex> vertices_;
};

struct DistancePartition {
    std::vector<std::vector<Vertex>> cells;  ///< cells[i] = C_i, sorted
    std::vector<int> layer;                  ///< layer[v] = d(v, C)
    std::size_t rho = 0;

    std::vector<std::size_t> cell_sizes() const {
        std::vector<std::size_t> s;
        for (const auto& c : cells) s.push_back(c.size());
        return s;
    }
};

inline DistancePartition distance_partition(const Code& code) {
    DistancePartition p;
    p.layer = code.graph().multi_source_bfs(code.vertices());
    const int rho = *std::max_element(p.layer.begin(), p.layer.end());
    p.rho = static_cast<std::size_t>(rho);
    p.cells.resize(p.rho + 1);
    for (Vertex v = 0; v < p.layer.size(); ++v) p.cells[static_cast<std::size_t>(p.layer[v])].push_back(v);
    return p;
}

/// Smallest distance between two distinct codewords.
inline int minimum_distance(const Code& code) {
    if (code.size() <= 1) throw TrivialCode("minimum distance needs at least two codewords");
    int best = std::numeric_limits<int>::max();
    for (Vertex c : code.vertices()) {
        const auto row = code.graph().distances_from(c);
        for (Vertex other : code.vertices())
            if (other != c) best = std::min(best, (*row)[other]);
        if (best == 1) break;
    }
    return best;
}

/// Tridiagonal U(C) with rows (gamma_i, alpha_i, beta_i).
class QuotientMatrix {
public:
    QuotientMatrix(std::vector<long long> gamma, std::vector<long long> alpha, std::vector<long long> beta)
        : gamma_(std::move(gamma)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
        const std::size_t n = alpha_.size();
        if (n == 0 || gamma_.size() != n || beta_.size() != n)
            throw InvalidArgument("quotient matrix rows must have equal, nonzero length");
        if (gamma_.front() != 0 || beta_.back() != 0)
            throw InvalidArgument("quotient matrix needs gamma_0 = 0 and beta_rho = 0");
        const long long k = alpha_[0] + beta_[0];
        for (std::size_t i = 0; i < n; ++i) {
            if (gamma_[i] < 0 || alpha_[i] < 0 || beta_[i] < 0)
                throw InvalidArgument("quotient matrix entries must be nonnegative");
            if (gamma_[i] + alpha_[i] + beta_[i] != k)
                throw InvalidArgument("quotient matrix row " + std::to_string(i) + " does not sum to k");
            if (i >= 1 && gamma_[i] == 0) throw InvalidArgument("gamma_" + std::to_string(i) + " must be positive");
            if (i + 1 < n && beta_[i] == 0) throw InvalidArgument("beta_" + std::to_string(i) + " must be positive");
        }
    }

    std::size_t rho() const noexcept { return alpha_.size() - 1; }
    long long k() const noexcept { return alpha_[0] + beta_[0]; }
    long long gamma(std::size_t i) const { return gamma_.at(i); }
    long long alpha(std::size_t i) const { return alpha_.at(i); }
    long long beta(std::size_t i) const { return beta_.at(i); }
    const std::vector<long long>& gammas() const noexcept { return gamma_; }
    const std::vector<long long>& alphas() const noexcept { return alpha_; }
    const std::vector<long long>& betas() const noexcept { return beta_; }

    Tridiagonal tridiagonal() const { return {gamma_, alpha_, beta_}; }
    IntMatrix dense() const { return tridiagonal().dense(); }

    friend bool operator==(const QuotientMatrix& a, const QuotientMatrix& b) {
        return a.gamma_ == b.gamma_ && a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
    }
    friend std::ostream& operator<<(std::ostream& os, const QuotientMatrix& u) { return os << u.dense(); }

private:
    std::vector<long long> gamma_, alpha_, beta_;
};

/// Two vertices of the same cell whose (gamma, alpha, beta) counts differ.
struct EquitabilityWitness {
    std::size_t cell = 0;
    Vertex first = 0, second = 0;
    std::array<long long, 3> first_counts{}, second_counts{};
};

/// n x (D+1) matrix with B[x][i] = |Gamma_i(x) ∩ C|; D is the largest distance seen from a codeword.
inline IntMatrix outer_distribution_matrix(const Code& code) {
    const Graph& g = code.graph();
    std::vector<std::shared_ptr<const std::vector<int>>> rows;
    int width = 0;
    for (Vertex c : code.vertices()) {
        rows.push_back(g.distances_from(c));
        width = std::max(width, *std::max_element(rows.back()->begin(), rows.back()->end()));
    }
    IntMatrix b(g.order(), static_cast<std::size_t>(width) + 1, 0);
    for (const auto& row : rows)
        for (Vertex x = 0; x < g.order(); ++x) ++b(x, static_cast<std::size_t>((*row)[x]));
    return b;
}

inline std::size_t distinct_rows(const IntMatrix& m) {
    std::set<std::vector<long long>> seen;
    for (std::size_t r = 0; r < m.rows(); ++r) seen.insert(m.row(r));
    return seen.size();
}

struct CompleteRegularity {
    std::variant<QuotientMatrix, EquitabilityWitness> verdict;
    std::size_t rho = 0;
    /// Distinct rows of the outer distribution matrix (0 when the cross-check was skipped).
    std::size_t delsarte_distinct_rows = 0;

    bool is_completely_regular() const noexcept { return std::holds_alternative<QuotientMatrix>(verdict); }
    const QuotientMatrix& quotient() const { return std::get<QuotientMatrix>(verdict); }
    const EquitabilityWitness& witness() const { return std::get<EquitabilityWitness>(verdict); }
};

struct RegularityOptions {
    /// Also count distinct outer-distribution rows and require agreement with the equitability verdict.
    bool delsarte_cross_check = true;
};

/**
 * Equitability of the distance partition, tested at every vertex. The first
 * vertex (in vertex order) of each cell fixes the reference counts; the first
 * later vertex that disagrees is reported with it.
 *
 * With the cross-check enabled, the code is also completely regular in the
 * outer-distribution sense iff that matrix has exactly rho+1 distinct rows;
 * the two verdicts must agree (they do on distance-regular graphs).
 */
inline CompleteRegularity is_completely_regular(const Code& code, const DistancePartition& dp,
                                                RegularityOptions options = {}) {
    const Graph& g = code.graph();
    const std::size_t k = g.degree(0);
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) != k) throw InvalidArgument("complete regularity is only defined here for regular graphs");

    const std::size_t cells = dp.rho + 1;
    std::vector<std::array<long long, 3>> reference(cells);
    std::vector<Vertex> first_vertex(cells);
    std::vector<bool> seen(cells, false);
    std::optional<EquitabilityWitness> witness;
    for (Vertex x = 0; x < g.order() && !witness; ++x) {
        const int i = dp.layer[x];
        std::array<long long, 3> counts{0, 0, 0};
        for (Vertex y : g.neighbors(x)) ++counts[static_cast<std::size_t>(dp.layer[y] - i + 1)];
        const auto cell = static_cast<std::size_t>(i);
        if (!seen[cell]) {
            seen[cell] = true;
            reference[cell] = counts;
            first_vertex[cell] = x;
        } else if (reference[cell] != counts) {
            witness = EquitabilityWitness{cell, first_vertex[cell], x, reference[cell], counts};
        }
    }

    CompleteRegularity result{EquitabilityWitness{}, dp.rho, 0};
    if (witness) {
        result.verdict = *witness;
    } else {
        std::vector<long long> gamma(cells), alpha(cells), beta(cells);
        for (std::size_t i = 0; i < cells; ++i) {
            gamma[i] = reference[i][0];
            alpha[i] = reference[i][1];
            beta[i] = reference[i][2];
        }
        result.verdict = QuotientMatrix(std::move(gamma), std::move(alpha), std::move(beta));
    }
    if (options.delsarte_cross_check) {
        result.delsarte_distinct_rows = distinct_rows(outer_distribution_matrix(code));
        const bool delsarte = result.delsarte_distinct_rows == cells;
        if (delsarte != result.is_completely_regular())
            throw InternalError("equitability and outer-distribution criteria disagree (" +
                                std::to_string(result.delsarte_distinct_rows) + " distinct rows, rho = " +
                                std::to_string(dp.rho) + ")");
    }
    return result;
}

inline CompleteRegularity is_completely_regular(const Code& code, RegularityOptions options = {}) {
    return is_completely_regular(code, distance_partition(code), options);
}

/**
 * Standard eigenvector of U for eta: u_0 = 1, u_1 = (eta - alpha_0)/beta_0,
 * then gamma_i u_{i-1} + alpha_i u_i + beta_i u_{i+1} = eta u_i.
 */
inline std::vector<Scalar> code_standard_eigenvector(const QuotientMatrix& u, const Scalar& eta,
                                                     const Tolerances& tol = {}) {
    const std::size_t rho = u.rho();
    std::vector<Scalar> v(rho + 1);
    v[0] = 1;
    for (std::size_t i = 0; i < rho; ++i) {
        Scalar next = (eta - Scalar(u.alpha(i))) * v[i];
        if (i > 0) next -= Scalar(u.gamma(i)) * v[i - 1];
        v[i + 1] = next / Scalar(u.beta(i));
    }
    Scalar residual = (Scalar(u.alpha(rho)) - eta) * v[rho];
    if (rho > 0) residual += Scalar(u.gamma(rho)) * v[rho - 1];
    const double bound = tol.residual * static_cast<double>(u.k()) * static_cast<double>(rho + 1);
    if (!residual.is_zero(bound))
        throw NotAnEigenvalue(eta.to_string() + " is not an eigenvalue of the quotient matrix (residual " +
                              residual.to_string() + ")");
    return v;
}

struct CodeSpectrum {
    std::vector<Scalar> etas;                 ///< eigenvalues of U, decreasing; etas[0] = k
    std::vector<std::size_t> graph_index;     ///< etas[j] = theta_{graph_index[j]}
    std::vector<std::size_t> sstar;           ///< S*(C), increasing
    std::vector<std::vector<Scalar>> stdvecs; ///< stdvecs[j] = u(etas[j])

    std::size_t rho() const noexcept { return etas.size() - 1; }

    /// Position of the eigenvalue theta_{index} within etas, if present.
    std::optional<std::size_t> position_of_graph_index(std::size_t index) const {
        for (std::size_t j = 0; j < graph_index.size(); ++j)
            if (graph_index[j] == index) return j;
        return std::nullopt;
    }
};

/**
 * Eigenvalues of U, each matched to an eigenvalue of the graph. Throws
 * LloydViolation when one has no match: then no completely regular code with
 * this quotient matrix exists in the graph.
 */
inline CodeSpectrum code_spectrum(const QuotientMatrix& u, const Spectrum& spec, const Tolerances& tol = {}) {
    CodeSpectrum cs;
    cs.etas = u.rho() == 0 ? std::vector<Scalar>{Scalar(u.k())} : tridiagonal_eigenvalues(u.tridiagonal(), tol.eigen);
    for (const auto& eta : cs.etas) {
        const auto idx = spec.index_of(eta, tol);
        if (!idx) throw LloydViolation("eigenvalue " + eta.to_string() + " of the quotient matrix is not an eigenvalue of " +
                                       spec.array.to_string());
        cs.graph_index.push_back(*idx);
        cs.stdvecs.push_back(code_standard_eigenvector(u, eta, tol));
    }
    if (cs.graph_index.front() != 0) throw LloydViolation("largest eigenvalue of the quotient matrix is not k");
    cs.sstar.assign(cs.graph_index.begin() + 1, cs.graph_index.end());
    std::sort(cs.sstar.begin(), cs.sstar.end());
    return cs;
}

/// min{ p >= 1 : the eigenvalue at position p of the ordering lies in Spec*(C) } - 1.
inline std::size_t strength(const CodeSpectrum& cs, const Ordering& ordering) {
    for (std::size_t p = 0; p < ordering.size(); ++p)
        if (std::binary_search(cs.sstar.begin(), cs.sstar.end(), ordering[p])) return p;
    throw InvalidArgument("code has no nontrivial eigenvalue in the ordering");
}

}  // namespace crc
