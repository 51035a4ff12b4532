// Brute-force reference computations used to check the library. Nothing
// here calls into the parameter-level machinery: everything is derived from
// the explicit adjacency structure with dense floating-point linear algebra.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <vector>

#include "crc/graph.hpp"

namespace oracle {

inline Eigen::MatrixXd adjacency(const crc::Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (crc::Vertex u = 0; u < g.order(); ++u)
        for (crc::Vertex v : g.neighbors(u)) a(u, v) = 1.0;
    return a;
}

inline std::vector<int> bfs(const crc::Graph& g, const std::vector<crc::Vertex>& sources) {
    std::vector<int> d(g.order(), -1);
    std::deque<crc::Vertex> q;
    for (auto s : sources) {
        d[s] = 0;
        q.push_back(s);
    }
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        for (auto v : g.neighbors(u))
            if (d[v] < 0) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
    }
    return d;
}

/// Rows (gamma_i, alpha_i, beta_i) if the distance partition is equitable, else empty.
inline std::vector<std::array<long long, 3>> quotient_rows(const crc::Graph& g, const std::vector<crc::Vertex>& code) {
    const auto d = bfs(g, code);
    const int rho = *std::max_element(d.begin(), d.end());
    std::vector<std::array<long long, 3>> rows(static_cast<std::size_t>(rho) + 1, {-1, -1, -1});
    for (crc::Vertex x = 0; x < g.order(); ++x) {
        std::array<long long, 3> c{0, 0, 0};
        for (auto y : g.neighbors(x)) {
            if (d[y] == d[x] - 1) ++c[0];
            else if (d[y] == d[x]) ++c[1];
            else ++c[2];
        }
        auto& r = rows[static_cast<std::size_t>(d[x])];
        if (r[0] < 0) r = c;
        else if (r != c) return {};
    }
    return rows;
}

/// Distinct eigenvalues (decreasing) with the orthogonal projector onto each eigenspace.
struct Eigenspaces {
    std::vector<double> values;
    std::vector<Eigen::MatrixXd> projectors;
    std::vector<int> multiplicities;
};

inline Eigenspaces eigenspaces(const Eigen::MatrixXd& a, double gap = 1e-6) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const auto& w = es.eigenvalues();
    const auto& v = es.eigenvectors();
    Eigenspaces out;
    Eigen::Index i = w.size() - 1;
    while (i >= 0) {
        Eigen::Index j = i;
        while (j - 1 >= 0 && std::fabs(w(j - 1) - w(i)) < gap) --j;
        const Eigen::MatrixXd block = v.middleCols(j, i - j + 1);
        out.values.push_back(w.segment(j, i - j + 1).mean());
        out.projectors.push_back(block * block.transpose());
        out.multiplicities.push_back(static_cast<int>(i - j + 1));
        i = j - 1;
    }
    return out;
}

/// q_ij^l = n tr((E_i o E_j) E_l) / m_l.
inline std::vector<double> krein(const Eigenspaces& es) {
    const std::size_t d = es.values.size();
    const double n = static_cast<double>(es.projectors.front().rows());
    std::vector<double> q(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Eigen::MatrixXd h = es.projectors[i].cwiseProduct(es.projectors[j]);
            for (std::size_t l = 0; l < d; ++l)
                q[(i * d + j) * d + l] = n * h.cwiseProduct(es.projectors[l]).sum() / es.multiplicities[l];
        }
    return q;
}

/// p_ij^l from the distance matrices, read off at one pair (x, y) per distance.
inline std::vector<long long> intersection_numbers(const crc::Graph& g) {
    std::vector<std::vector<int>> dist(g.order());
    for (crc::Vertex x = 0; x < g.order(); ++x) dist[x] = bfs(g, {x});
    const int d = *std::max_element(dist[0].begin(), dist[0].end());
    const auto dd = static_cast<std::size_t>(d) + 1;
    std::vector<long long> p(dd * dd * dd, 0);
    for (std::size_t l = 0; l < dd; ++l) {
        crc::Vertex y = 0;
        while (dist[0][y] != static_cast<int>(l)) ++y;
        for (crc::Vertex z = 0; z < g.order(); ++z)
            ++p[(static_cast<std::size_t>(dist[0][z]) * dd + static_cast<std::size_t>(dist[z][y])) * dd + l];
    }
    return p;
}

/**
 * Coefficient of u(eta_j) in the p-th entrywise power of u(eta), where u(eta)
 * is E x scaled to 1 on the code: the value of E_j (u^(p)) at a codeword.
 */
inline std::vector<double> expansion(const Eigenspaces& es, const std::vector<crc::Vertex>& code, std::size_t eta_index,
                                     const std::vector<std::size_t>& basis_indices, int power) {
    const auto n = es.projectors.front().rows();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (auto c : code) x(c) = 1.0;
    Eigen::VectorXd u = es.projectors[eta_index] * x;
    u /= u(code.front());
    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    for (int p = 0; p < power; ++p) w = w.cwiseProduct(u);
    std::vector<double> out;
    for (auto j : basis_indices) {
        // E_j w is a multiple of E_j x; scaled to 1 on the code, that multiple is its value at a codeword
        const Eigen::VectorXd part = es.projectors[j] * w;
        out.push_back(part(code.front()));
    }
    return out;
}

}  // namespace oracle
