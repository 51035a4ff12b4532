/**
 * @file spectral.hpp
 * @brief Parameter-level spectral data of a distance-regular graph.
 *
 * Everything here is a function of the intersection array alone: the
 * tridiagonal matrix L, its eigenvalues, the standard eigenvectors u(theta),
 * valencies k_i, multiplicities m_j, the Krein parameters q_ij^l, and the
 * Q-polynomial orderings of the primitive idempotents.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crc/error.hpp"
#include "crc/matrix.hpp"
#include "crc/scalar.hpp"
#include "crc/tridiagonal.hpp"

namespace crc {

/// {b_0, ..., b_{D-1}; c_1, ..., c_D}
class IntersectionArray {
public:
    /// Enforces c_1 = 1, positivity, a_i >= 0, and the standing assumption k >= 2, D >= 2.
    IntersectionArray(std::vector<long long> b, std::vector<long long> c)
        : IntersectionArray(std::move(b), std::move(c), true) {}

    /**
     * Structural checks only; admits diameter 1 and valency 1. Quotients of
     * small codes (complete graphs, K_2) need this form.
     */
    static IntersectionArray relaxed(std::vector<long long> b, std::vector<long long> c) {
        return IntersectionArray(std::move(b), std::move(c), false);
    }

    /// Parses "{b0,b1,...;c1,c2,...}" (braces optional, whitespace ignored).
    static IntersectionArray parse(const std::string& text, bool strict = true) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}') s.push_back(ch);
        const auto semi = s.find(';');
        if (semi == std::string::npos || s.find(';', semi + 1) != std::string::npos)
            throw InvalidArgument("intersection array must contain exactly one ';': '" + text + "'");
        auto numbers = [&](const std::string& part) {
            std::vector<long long> out;
            std::stringstream ss(part);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) throw InvalidArgument("empty entry in intersection array '" + text + "'");
                std::size_t used = 0;
                long long v = 0;
                try {
                    v = std::stoll(tok, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok.size()) throw InvalidArgument("non-integer entry '" + tok + "' in intersection array");
                out.push_back(v);
            }
            return out;
        };
        return IntersectionArray(numbers(s.substr(0, semi)), numbers(s.substr(semi + 1)), strict);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < b_.size(); ++i) os << (i ? "," : "") << b_[i];
        os << ';';
        for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
        os << '}';
        return os.str();
    }

    std::size_t diameter() const noexcept { return b_.size(); }
    long long k() const noexcept { return b_.front(); }
    /// b_i with b_D = 0.
    long long b(std::size_t i) const { return i < b_.size() ? b_[i] : 0; }
    /// c_i with c_0 = 0.
    long long c(std::size_t i) const { return i == 0 ? 0 : c_.at(i - 1); }
    long long a(std::size_t i) const { return k() - b(i) - c(i); }

    bool satisfies_standing_assumption() const noexcept { return k() >= 2 && diameter() >= 2; }

    void require_standing_assumption() const {
        if (!satisfies_standing_assumption())
            throw InvalidArgument("intersection array " + to_string() + " needs valency >= 2 and diameter >= 2");
    }

    Tridiagonal tridiagonal() const {
        const std::size_t d = diameter();
        Tridiagonal t;
        t.lower.resize(d + 1);
        t.diag.resize(d + 1);
        t.upper.resize(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            t.lower[i] = c(i);
            t.diag[i] = a(i);
            t.upper[i] = b(i);
        }
        return t;
    }

    friend bool operator==(const IntersectionArray& x, const IntersectionArray& y) {
        return x.b_ == y.b_ && x.c_ == y.c_;
    }

private:
    IntersectionArray(std::vector<long long> b, std::vector<long long> c, bool strict)
        : b_(std::move(b)), c_(std::move(c)) {
        if (b_.empty() || b_.size() != c_.size())
            throw InvalidArgument("intersection array needs D >= 1 entries on each side");
        if (c_.front() != 1) throw InvalidArgument("intersection array must have c_1 = 1");
        for (std::size_t i = 0; i < b_.size(); ++i) {
            if (b_[i] <= 0) throw InvalidArgument("b_" + std::to_string(i) + " must be positive");
            if (c_[i] <= 0) throw InvalidArgument("c_" + std::to_string(i + 1) + " must be positive");
        }
        for (std::size_t i = 0; i <= diameter(); ++i)
            if (a(i) < 0) throw InvalidArgument("a_" + std::to_string(i) + " is negative in " + to_string());
        if (strict) require_standing_assumption();
    }

    std::vector<long long> b_;
    std::vector<long long> c_;
};

/// L(Gamma): subdiagonal c_i, diagonal a_i, superdiagonal b_i.
inline IntMatrix tridiagonal_matrix(const IntersectionArray& ia) { return ia.tridiagonal().dense(); }

/// The D+1 distinct eigenvalues of L(Gamma), decreasing; theta_0 = k exactly.
inline std::vector<Scalar> eigenvalues(const IntersectionArray& ia, const Tolerances& tol = {}) {
    auto thetas = tridiagonal_eigenvalues(ia.tridiagonal(), tol.eigen);
    if (!(thetas.front().is_exact() && thetas.front().exact() == ia.k()))
        throw EigenFailure("largest eigenvalue of " + ia.to_string() + " is not the valency");
    return thetas;
}

/// k_i = k_{i-1} b_{i-1} / c_i.
inline std::vector<Rational> valencies(const IntersectionArray& ia) {
    std::vector<Rational> k{Rational(1)};
    for (std::size_t i = 1; i <= ia.diameter(); ++i) k.push_back(k.back() * ia.b(i - 1) / ia.c(i));
    return k;
}

inline Rational vertex_count(const IntersectionArray& ia) {
    Rational n = 0;
    for (const auto& ki : valencies(ia)) n += ki;
    return n;
}

namespace detail {

inline double residual_bound(const Rational& n, const Tolerances& tol) { return tol.residual * to_double(n); }

}  // namespace detail

/**
 * Standard right eigenvector [u_0 = 1, u_1 = theta/k, ..., u_D] from the
 * three-term recurrence. Throws NotAnEigenvalue when the last row of the
 * recurrence is violated (exactly for exact theta, beyond the residual
 * tolerance otherwise).
 */
inline std::vector<Scalar> standard_eigenvector(const IntersectionArray& ia, const Scalar& theta,
                                                const Tolerances& tol = {}) {
    const std::size_t d = ia.diameter();
    std::vector<Scalar> u(d + 1);
    u[0] = 1;
    u[1] = theta / Scalar(ia.k());
    for (std::size_t i = 1; i < d; ++i)
        u[i + 1] = ((theta - Scalar(ia.a(i))) * u[i] - Scalar(ia.c(i)) * u[i - 1]) / Scalar(ia.b(i));
    const Scalar residual = Scalar(ia.c(d)) * u[d - 1] + Scalar(ia.a(d)) * u[d] - theta * u[d];
    if (!residual.is_zero(detail::residual_bound(vertex_count(ia), tol)))
        throw NotAnEigenvalue(theta.to_string() + " is not an eigenvalue of " + ia.to_string() +
                              " (terminal residual " + residual.to_string() + ")");
    return u;
}

struct Spectrum {
    IntersectionArray array;
    std::vector<Scalar> thetas;                 ///< decreasing, thetas[0] = k
    std::vector<Rational> valencies;            ///< k_i
    std::vector<Scalar> multiplicities;         ///< m_j
    bool integral_multiplicities = false;       ///< every m_j within 1e-6 of an integer
    std::vector<std::vector<Scalar>> stdvecs;   ///< stdvecs[j][i] = u_i(theta_j)
    Rational n;                                 ///< vertex count implied by the array

    std::size_t diameter() const noexcept { return thetas.size() - 1; }

    /// Index j with theta_j equal to value (exactly, or within tol.eigen).
    std::optional<std::size_t> index_of(const Scalar& value, const Tolerances& tol = {}) const {
        for (std::size_t j = 0; j < thetas.size(); ++j)
            if (approx_equal(thetas[j], value, tol.eigen)) return j;
        return std::nullopt;
    }
};

/// k_i and m_j = n / sum_i k_i u_i(theta_j)^2.
inline std::pair<std::vector<Rational>, std::vector<Scalar>> valencies_and_multiplicities(
    const IntersectionArray& ia, const Tolerances& tol = {}) {
    ia.require_standing_assumption();
    const auto k = valencies(ia);
    const Rational n = vertex_count(ia);
    std::vector<Scalar> m;
    for (const auto& theta : eigenvalues(ia, tol)) {
        const auto u = standard_eigenvector(ia, theta, tol);
        Scalar norm;
        for (std::size_t i = 0; i < u.size(); ++i) norm += Scalar(k[i]) * u[i] * u[i];
        m.push_back(Scalar(n) / norm);
    }
    return {k, m};
}

inline Spectrum compute_spectrum(const IntersectionArray& ia, const Tolerances& tol = {}) {
    ia.require_standing_assumption();
    Spectrum s{ia, eigenvalues(ia, tol), {}, {}, false, {}, vertex_count(ia)};
    auto [k, m] = valencies_and_multiplicities(ia, tol);
    s.valencies = std::move(k);
    s.multiplicities = std::move(m);
    s.integral_multiplicities = std::all_of(s.multiplicities.begin(), s.multiplicities.end(), [](const Scalar& x) {
        return std::fabs(x.value() - std::round(x.value())) < 1e-6;
    });
    for (const auto& theta : s.thetas) s.stdvecs.push_back(standard_eigenvector(ia, theta, tol));
    return s;
}

/// q[i][j][l], with zero tests exact on exact entries.
class KreinTensor {
public:
    KreinTensor(std::size_t diameter, std::vector<Scalar> entries, double zero_tolerance)
        : d_(diameter), q_(std::move(entries)), zero_tol_(zero_tolerance) {}

    std::size_t diameter() const noexcept { return d_; }
    double zero_tolerance() const noexcept { return zero_tol_; }

    const Scalar& operator()(std::size_t i, std::size_t j, std::size_t l) const {
        return q_[(i * (d_ + 1) + j) * (d_ + 1) + l];
    }
    bool is_zero(std::size_t i, std::size_t j, std::size_t l) const { return (*this)(i, j, l).is_zero(zero_tol_); }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : q_) m = std::max(m, std::fabs(x.value()));
        return m;
    }

private:
    std::size_t d_;
    std::vector<Scalar> q_;
    double zero_tol_;
};

/// q_ij^l = (m_i m_j / n) sum_h k_h u_h(theta_i) u_h(theta_j) u_h(theta_l).
inline KreinTensor krein_parameters(const Spectrum& s, const Tolerances& tol = {}) {
    const std::size_t d = s.diameter();
    const Scalar n(s.n);
    std::vector<Scalar> q((d + 1) * (d + 1) * (d + 1));
    double max_abs = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
        for (std::size_t j = i; j <= d; ++j) {
            std::vector<Scalar> w(d + 1);
            for (std::size_t h = 0; h <= d; ++h) w[h] = Scalar(s.valencies[h]) * s.stdvecs[i][h] * s.stdvecs[j][h];
            const Scalar scale = s.multiplicities[i] * s.multiplicities[j] / n;
            for (std::size_t l = 0; l <= d; ++l) {
                Scalar acc;
                for (std::size_t h = 0; h <= d; ++h) acc += w[h] * s.stdvecs[l][h];
                acc *= scale;
                max_abs = std::max(max_abs, std::fabs(acc.value()));
                q[(i * (d + 1) + j) * (d + 1) + l] = acc;
                q[(j * (d + 1) + i) * (d + 1) + l] = acc;
            }
        }
    }
    return KreinTensor(d, std::move(q), tol.krein_zero * max_abs);
}

inline KreinTensor krein_parameters(const IntersectionArray& ia, const Tolerances& tol = {}) {
    return krein_parameters(compute_spectrum(ia, tol), tol);
}

/// max over h, i, j of |m_i m_j u_h(theta_i) u_h(theta_j) - sum_l q_ij^l m_l u_h(theta_l)|.
inline double krein_residual(const Spectrum& s, const KreinTensor& q) {
    const std::size_t d = s.diameter();
    double worst = 0.0;
    for (std::size_t h = 0; h <= d; ++h)
        for (std::size_t i = 0; i <= d; ++i)
            for (std::size_t j = 0; j <= d; ++j) {
                Scalar rhs;
                for (std::size_t l = 0; l <= d; ++l) rhs += q(i, j, l) * s.multiplicities[l] * s.stdvecs[l][h];
                const Scalar lhs = s.multiplicities[i] * s.multiplicities[j] * s.stdvecs[i][h] * s.stdvecs[j][h];
                worst = std::max(worst, std::fabs((lhs - rhs).value()));
            }
    return worst;
}

/// An ordering lists the eigenvalue indices placed at positions 1..D (E_0 is always first).
using Ordering = std::vector<std::size_t>;

inline constexpr std::size_t kMaxOrderingSearchDiameter = 9;

namespace detail {

/// Checks every Q-polynomial condition whose largest position index is `top`.
inline bool qpoly_conditions_at(const KreinTensor& q, const std::vector<std::size_t>& at, std::size_t top,
                                std::size_t d) {
    for (std::size_t i = 0; i <= top; ++i)
        for (std::size_t j = 0; j <= top; ++j)
            for (std::size_t l = 0; l <= top; ++l) {
                if (std::max({i, j, l}) != top) continue;
                const std::size_t lo = i > j ? i - j : j - i;
                const bool zero = q.is_zero(at[i], at[j], at[l]);
                if ((l < lo || l > i + j) && !zero) return false;
                if ((l == lo || (l == i + j && i + j <= d)) && zero) return false;
            }
    return true;
}

}  // namespace detail

/// Whether E_0, E_{o[0]}, ..., E_{o[D-1]} is a Q-polynomial ordering.
inline bool is_qpoly_ordering(const KreinTensor& q, const Ordering& ordering) {
    const std::size_t d = q.diameter();
    if (ordering.size() != d) throw InvalidArgument("ordering must list D eigenvalue indices");
    std::vector<std::size_t> at{0};
    std::vector<bool> seen(d + 1, false);
    for (std::size_t idx : ordering) {
        if (idx == 0 || idx > d || seen[idx]) throw InvalidArgument("ordering is not a permutation of 1..D");
        seen[idx] = true;
        at.push_back(idx);
    }
    for (std::size_t top = 0; top <= d; ++top)
        if (!detail::qpoly_conditions_at(q, at, top, d)) return false;
    return true;
}

inline Ordering natural_ordering(std::size_t diameter) {
    Ordering o(diameter);
    for (std::size_t i = 0; i < diameter; ++i) o[i] = i + 1;
    return o;
}

/**
 * All Q-polynomial orderings, found by depth-first search over permutations
 * of 1..D that abandons a prefix at its first violated condition. Results
 * come out in lexicographic order, so the natural ordering is first when valid.
 */
inline std::vector<Ordering> qpoly_orderings(const KreinTensor& q) {
    const std::size_t d = q.diameter();
    if (d > kMaxOrderingSearchDiameter)
        throw ParameterOutOfRange("Q-polynomial ordering search is limited to diameter <= " +
                                  std::to_string(kMaxOrderingSearchDiameter) + " (got " + std::to_string(d) + ")");
    std::vector<Ordering> found;
    std::vector<std::size_t> at{0};
    std::vector<bool> used(d + 1, false);
    used[0] = true;
    auto extend = [&](auto&& self) -> void {
        if (at.size() == d + 1) {
            found.emplace_back(at.begin() + 1, at.end());
            return;
        }
        for (std::size_t idx = 1; idx <= d; ++idx) {
            if (used[idx]) continue;
            at.push_back(idx);
            used[idx] = true;
            if (detail::qpoly_conditions_at(q, at, at.size() - 1, d)) self(self);
            used[idx] = false;
            at.pop_back();
        }
    };
    if (detail::qpoly_conditions_at(q, at, 0, d)) extend(extend);
    return found;
}

inline std::vector<Ordering> qpoly_orderings(const IntersectionArray& ia, const Tolerances& tol = {}) {
    return qpoly_orderings(krein_parameters(ia, tol));
}

}  // namespace crc
