/**
 * @file leonard.hpp
 * @brief Algebraic classification of completely regular codes.
 *
 * Everything is computed in "cell coordinates": a vector constant on each
 * cell C_i of the distance partition is stored as its rho+1 cell values, so
 * the eigenvector belonging to C for eta is just the standard eigenvector
 * u(eta) of U, and entrywise products of such vectors are entrywise products
 * of their cell values. Expansions are taken in the basis
 * {u(eta_0), ..., u(eta_rho)}, indexed like CodeSpectrum::etas.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crc/atlas.hpp"
#include "crc/code.hpp"
#include "crc/error.hpp"
#include "crc/matrix.hpp"
#include "crc/scalar.hpp"
#include "crc/spectral.hpp"
#include "crc/tridiagonal.hpp"

namespace crc {

inline constexpr std::size_t kMaxCodeOrderingSearchRadius = 8;

/// Coefficients of u(eta_1)^(2) and u(eta_1)^(3) in the eigenvector basis.
struct EigenExpansion {
    std::vector<Scalar> lambdas;
    std::vector<Scalar> taus;
};

/// Inverse of the matrix whose columns are the standard eigenvectors of C.
class EigenBasis {
public:
    explicit EigenBasis(const CodeSpectrum& cs) {
        const std::size_t n = cs.etas.size();
        Matrix<Scalar> columns(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) columns(i, j) = cs.stdvecs[j][i];
        inverse_ = inverse(columns);
        // distinct eigenvalues give independent eigenvectors
        if (inverse_.rows() != n) throw InternalError("standard eigenvectors of the code are linearly dependent");
    }

    std::vector<Scalar> expand(const std::vector<Scalar>& cell_vector) const { return multiply(inverse_, cell_vector); }

private:
    Matrix<Scalar> inverse_;
};

namespace detail {

inline std::vector<Scalar> hadamard(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

inline std::vector<Scalar> hadamard_power(const std::vector<Scalar>& a, int power) {
    std::vector<Scalar> out(a.size(), Scalar(1));
    for (int p = 0; p < power; ++p) out = hadamard(out, a);
    return out;
}

/// Zero threshold for approximate coefficients relative to the largest one.
inline double relative_zero(const std::vector<Scalar>& v, double rel) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::fabs(x.value()));
    return rel * m;
}

inline std::size_t position_of(const CodeSpectrum& cs, const Scalar& eta, const Tolerances& tol) {
    for (std::size_t j = 0; j < cs.etas.size(); ++j)
        if (approx_equal(cs.etas[j], eta, tol.eigen)) return j;
    throw NotAnEigenvalue(eta.to_string() + " is not an eigenvalue of the code");
}

}  // namespace detail

/**
 * Coefficients c with u(eta1)^(power) = sum_i c_i u(eta_i), solved exactly
 * when the spectrum is rational. They always sum to 1 (compare the 0-th
 * entries: every u(eta_i) starts with 1).
 */
inline std::vector<Scalar> expand_in_eigenbasis(const QuotientMatrix& u, const CodeSpectrum& cs, const Scalar& eta1,
                                                int power, const Tolerances& tol = {}) {
    if (cs.rho() != u.rho()) throw InvalidArgument("code spectrum does not belong to this quotient matrix");
    if (power < 0) throw InvalidArgument("negative Hadamard power");
    const auto j = detail::position_of(cs, eta1, tol);
    return EigenBasis(cs).expand(detail::hadamard_power(cs.stdvecs[j], power));
}

/// lambda (power 2) and tau (power 3) for eta1 = etas[1], the second largest eigenvalue.
inline EigenExpansion eigen_expansion(const QuotientMatrix& u, const CodeSpectrum& cs, const Tolerances& tol = {}) {
    if (cs.rho() == 0) throw TrivialCode("a code with covering radius 0 has no nontrivial eigenvalue");
    return {expand_in_eigenbasis(u, cs, cs.etas[1], 2, tol), expand_in_eigenbasis(u, cs, cs.etas[1], 3, tol)};
}

/// u_{i-1} != u_i for 1 <= i <= rho and u_{i-1} != u_{i+1} for 1 <= i < rho.
inline bool is_nondegenerate(const std::vector<Scalar>& stdvec, double tol = 1e-9) {
    for (std::size_t i = 1; i < stdvec.size(); ++i) {
        if (approx_equal(stdvec[i - 1], stdvec[i], tol)) return false;
        if (i + 1 < stdvec.size() && approx_equal(stdvec[i - 1], stdvec[i + 1], tol)) return false;
    }
    return true;
}

struct QPolyResult {
    bool flag = false;
    /// Each ordering lists graph eigenvalue indices i_1, ..., i_rho.
    std::vector<Ordering> orderings;
};

/**
 * Searches every ordering eta_{i_1}, ..., eta_{i_rho} of Spec*(C) for which the
 * p-th Hadamard power of u(eta_{i_1}) lies in the span of u(eta_0),
 * u(eta_{i_1}), ..., u(eta_{i_p}) with a nonzero coefficient on u(eta_{i_p}),
 * for all p. Since the outer distribution
 * module is closed under entrywise products, span membership there is the
 * vanishing of the remaining expansion coefficients.
 */
inline QPolyResult qpoly_test(const QuotientMatrix& u, const CodeSpectrum& cs, const Tolerances& tol = {}) {
    const std::size_t rho = cs.rho();
    if (rho != u.rho()) throw InvalidArgument("code spectrum does not belong to this quotient matrix");
    if (rho > kMaxCodeOrderingSearchRadius)
        throw ParameterOutOfRange("ordering search is limited to covering radius <= " +
                                  std::to_string(kMaxCodeOrderingSearchRadius));
    QPolyResult result;
    if (rho == 0) return result;
    const EigenBasis basis(cs);
    for (std::size_t first = 1; first <= rho; ++first) {
        // support[p] = positions with a nonzero coefficient in u(eta_first)^(p)
        std::vector<std::vector<bool>> support(rho + 1, std::vector<bool>(rho + 1, false));
        for (std::size_t p = 0; p <= rho; ++p) {
            const auto coeffs = basis.expand(detail::hadamard_power(cs.stdvecs[first], static_cast<int>(p)));
            const double zero = detail::relative_zero(coeffs, tol.expansion_zero);
            for (std::size_t j = 0; j <= rho; ++j) support[p][j] = !coeffs[j].is_zero(zero);
        }
        std::vector<std::size_t> chain{0, first};
        std::vector<bool> placed(rho + 1, false);
        placed[0] = placed[first] = true;
        // u^(p) must reach V_{i_p}, not merely stay inside the span
        auto admissible = [&](std::size_t p) {
            if (!support[p][chain[p]]) return false;
            for (std::size_t j = 0; j <= rho; ++j)
                if (support[p][j] && std::find(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(p + 1), j) ==
                                         chain.begin() + static_cast<std::ptrdiff_t>(p + 1))
                    return false;
            return true;
        };
        if (!admissible(0) || !admissible(1)) continue;
        auto extend = [&](auto&& self) -> void {
            if (chain.size() == rho + 1) {
                Ordering o;
                for (std::size_t p = 1; p <= rho; ++p) o.push_back(cs.graph_index[chain[p]]);
                result.orderings.push_back(std::move(o));
                return;
            }
            for (std::size_t j = 1; j <= rho; ++j) {
                if (placed[j]) continue;
                chain.push_back(j);
                placed[j] = true;
                if (admissible(chain.size() - 1)) self(self);
                placed[j] = false;
                chain.pop_back();
            }
        };
        extend(extend);
    }
    std::sort(result.orderings.begin(), result.orderings.end());
    result.flag = !result.orderings.empty();
    return result;
}

struct LeonardResult {
    bool flag = false;
    /// Orderings (graph indices i_1, ..., i_rho) under which M is irreducible tridiagonal.
    std::vector<Ordering> orderings;
    /// M in the first witnessing ordering, or in decreasing eigenvalue order when there is none.
    Matrix<Scalar> coefficients;
};

/**
 * M(l, j) = coefficient of u(eta_l) in u(theta) o u(eta_j), i.e. the matrix
 * of the dual operator A*(theta) in the basis of eigenvectors belonging to C.
 */
inline Matrix<Scalar> dual_operator_matrix(const CodeSpectrum& cs, std::size_t theta_position) {
    const std::size_t n = cs.etas.size();
    const EigenBasis basis(cs);
    Matrix<Scalar> m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto col = basis.expand(detail::hadamard(cs.stdvecs[theta_position], cs.stdvecs[j]));
        for (std::size_t l = 0; l < n; ++l) m(l, j) = col[l];
    }
    return m;
}

namespace detail {

inline double matrix_zero(const Matrix<Scalar>& m, double rel) {
    double mx = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) mx = std::max(mx, std::fabs(m(r, c).value()));
    return rel * mx;
}

/// Places positions 0..a of perm are consistent with irreducible tridiagonality.
inline bool tridiagonal_prefix_ok(const Matrix<Scalar>& m, const std::vector<std::size_t>& perm, double zero) {
    const std::size_t a = perm.size() - 1;
    for (std::size_t b = 0; b < a; ++b) {
        const bool z1 = m(perm[a], perm[b]).is_zero(zero);
        const bool z2 = m(perm[b], perm[a]).is_zero(zero);
        if (a - b > 1 && (!z1 || !z2)) return false;
        if (a - b == 1 && (z1 || z2)) return false;
    }
    return true;
}

/// Follows the chain forced by column eta_0, then each new column; no search.
inline std::optional<std::vector<std::size_t>> tridiagonal_chain(const Matrix<Scalar>& m, double zero) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm{0};
    std::vector<bool> placed(n, false);
    placed[0] = true;
    while (perm.size() < n) {
        std::optional<std::size_t> next;
        for (std::size_t l = 0; l < n; ++l) {
            if (placed[l] || m(l, perm.back()).is_zero(zero)) continue;
            if (next) return std::nullopt;
            next = l;
        }
        if (!next) return std::nullopt;
        perm.push_back(*next);
        placed[*next] = true;
    }
    for (std::size_t a = 1; a <= n; ++a) {
        std::vector<std::size_t> prefix(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(a));
        if (!tridiagonal_prefix_ok(m, prefix, zero)) return std::nullopt;
    }
    return perm;
}

}  // namespace detail

/**
 * Whether A*(theta) is irreducible tridiagonal in some ordering of the
 * eigenvectors with eta_0 = k kept first. The exhaustive search is the
 * verdict; the chain-following fast path must agree with it.
 */
inline LeonardResult leonard_test(const QuotientMatrix& u, const CodeSpectrum& cs, const Scalar& theta,
                                  const Tolerances& tol = {}) {
    const std::size_t rho = cs.rho();
    if (rho != u.rho()) throw InvalidArgument("code spectrum does not belong to this quotient matrix");
    if (rho > kMaxCodeOrderingSearchRadius)
        throw ParameterOutOfRange("ordering search is limited to covering radius <= " +
                                  std::to_string(kMaxCodeOrderingSearchRadius));
    const std::size_t pos = detail::position_of(cs, theta, tol);
    if (pos == 0) throw InvalidArgument("theta must be a nontrivial eigenvalue of the code");

    const Matrix<Scalar> m = dual_operator_matrix(cs, pos);
    const double zero = detail::matrix_zero(m, tol.expansion_zero);
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> perm{0};
    std::vector<bool> placed(rho + 1, false);
    placed[0] = true;
    auto extend = [&](auto&& self) -> void {
        if (perm.size() == rho + 1) {
            perms.push_back(perm);
            return;
        }
        for (std::size_t l = 1; l <= rho; ++l) {
            if (placed[l]) continue;
            perm.push_back(l);
            placed[l] = true;
            if (detail::tridiagonal_prefix_ok(m, perm, zero)) self(self);
            placed[l] = false;
            perm.pop_back();
        }
    };
    extend(extend);

    const auto chain = detail::tridiagonal_chain(m, zero);
    const bool chain_in_search = chain && std::find(perms.begin(), perms.end(), *chain) != perms.end();
    if (chain.has_value() != !perms.empty() || (chain && !chain_in_search))
        throw InternalError("chain-following and exhaustive tridiagonality search disagree");

    LeonardResult result;
    result.flag = !perms.empty();
    for (const auto& p : perms) {
        Ordering o;
        for (std::size_t a = 1; a < p.size(); ++a) o.push_back(cs.graph_index[p[a]]);
        result.orderings.push_back(std::move(o));
    }
    std::sort(result.orderings.begin(), result.orderings.end());
    if (perms.empty()) {
        result.coefficients = m;
    } else {
        const auto& p = perms.front();
        result.coefficients = Matrix<Scalar>(rho + 1, rho + 1);
        for (std::size_t a = 0; a <= rho; ++a)
            for (std::size_t b = 0; b <= rho; ++b) result.coefficients(a, b) = m(p[a], p[b]);
    }
    return result;
}

/// Graph positions 1..D of each eigenvalue index under an ordering.
inline std::vector<std::size_t> ordering_positions(const Ordering& ordering) {
    std::vector<std::size_t> pos(ordering.size() + 1, 0);
    for (std::size_t p = 0; p < ordering.size(); ++p) pos.at(ordering[p]) = p + 1;
    return pos;
}

/// t > 0 with S*(C) ∪ {0} = {0, t, 2t, ..., rho t} in the given Q-polynomial ordering of the graph.
inline std::optional<std::size_t> harmonic_test(const CodeSpectrum& cs, const Ordering& ordering) {
    if (ordering.empty()) throw GraphNotQPolynomial("harmonic test needs a Q-polynomial ordering of the graph");
    if (cs.rho() == 0) return std::nullopt;
    const auto pos = ordering_positions(ordering);
    std::vector<std::size_t> at;
    for (std::size_t idx : cs.sstar) at.push_back(pos.at(idx));
    std::sort(at.begin(), at.end());
    const std::size_t t = at.front();
    for (std::size_t j = 0; j < at.size(); ++j)
        if (at[j] != (j + 1) * t) return std::nullopt;
    return t;
}

/// t > 0 with eta_j = k - j t for every j.
inline std::optional<Scalar> arithmetic_test(const CodeSpectrum& cs, const Tolerances& tol = {}) {
    if (cs.rho() == 0) return std::nullopt;
    const Scalar t = cs.etas[0] - cs.etas[1];
    for (std::size_t j = 1; j <= cs.rho(); ++j)
        if (!approx_equal(cs.etas[j - 1] - cs.etas[j], t, tol.eigen)) return std::nullopt;
    return t;
}

/// With i_0 = 0 prepended to the sorted S*(C): every gap i_j - i_{j-1} is at most i_1.
inline bool gap_filter(std::vector<std::size_t> sstar) {
    std::sort(sstar.begin(), sstar.end());
    if (sstar.empty()) return true;
    std::size_t prev = 0;
    for (std::size_t i : sstar) {
        if (i - prev > sstar.front()) return false;
        prev = i;
    }
    return true;
}

/// Whether S*(C) fits either parity pattern an antipodal 2-cover allows (no code needed).
inline bool antipodal_parity_possible(std::vector<std::size_t> sstar) {
    std::sort(sstar.begin(), sstar.end());
    bool all_even = true, alternating = true;
    for (std::size_t j = 0; j < sstar.size(); ++j) {
        all_even = all_even && sstar[j] % 2 == 0;
        alternating = alternating && sstar[j] % 2 == (j + 1) % 2;
    }
    return all_even || alternating;
}

enum class AntipodalImage { code, last_cell };

struct ParityOutcome {
    bool pass = false;
    AntipodalImage image = AntipodalImage::code;
};

/**
 * In an antipodal 2-cover, pi(C) is either C (then every index in
 * {0} ∪ S*(C) is even) or C_rho (then i_j ≡ j mod 2). Anything else throws
 * LemmaViolation.
 */
inline ParityOutcome antipodal_parity_filter(std::vector<std::size_t> sstar, const AntipodalMap& pi, const Code& code,
                                             const DistancePartition& dp) {
    std::sort(sstar.begin(), sstar.end());
    bool into_code = true, into_last = code.size() == dp.cells.back().size();
    for (Vertex c : code.vertices()) {
        const Vertex image = pi(c);
        into_code = into_code && code.contains(image);
        into_last = into_last && dp.layer[image] == static_cast<int>(dp.rho);
    }
    ParityOutcome out;
    if (into_code) {
        out.image = AntipodalImage::code;
        out.pass = std::all_of(sstar.begin(), sstar.end(), [](std::size_t i) { return i % 2 == 0; });
    } else if (into_last) {
        out.image = AntipodalImage::last_cell;
        out.pass = true;
        for (std::size_t j = 0; j < sstar.size(); ++j) out.pass = out.pass && sstar[j] % 2 == (j + 1) % 2;
    } else {
        throw LemmaViolation("antipodal image of the code is neither the code nor its last cell");
    }
    return out;
}

namespace detail {

inline long long to_count(const Scalar& s, const char* what) {
    if (!s.is_integer(1e-6) || s.value() < -1e-6)
        throw InconsistentData(std::string(what) + " = " + s.to_string() + " is not a nonnegative integer");
    return s.round();
}

}  // namespace detail

/**
 * Rebuilds U from k, the eigenvalues and the lambda/tau expansions of the
 * second and third Hadamard powers of u(etas[1]).
 *
 * Row 0 comes from alpha_0 + beta_0 = k, alpha_0 + beta_0 u_1(eta) = eta and
 * alpha_0 + beta_0 u_1(eta_1)^2 = sum lambda_i eta_i. Row m+1 comes from the
 * four equations gamma + alpha + beta = k and the rows of U applied to u,
 * u^(2), u^(3); the last row is reached when they are solvable with beta = 0.
 * Only eigenvalues with a nonzero lambda or tau (plus eta_0, eta_1) matter,
 * so etas may be a subset of the code spectrum.
 */
inline QuotientMatrix reconstruct_parameters(long long k, const std::vector<Scalar>& etas, const EigenExpansion& exp,
                                             std::size_t max_steps = 0) {
    const std::size_t r = etas.size();
    if (r < 2 || exp.lambdas.size() != r || exp.taus.size() != r)
        throw InvalidArgument("reconstruction needs matching eigenvalue, lambda and tau lists of length >= 2");
    if (max_steps == 0) max_steps = 2 * (r - 1);
    const Scalar kk(k);
    const Scalar& eta1 = etas[1];

    Scalar s;
    for (std::size_t i = 0; i < r; ++i) s += exp.lambdas[i] * etas[i];
    if ((eta1 - kk).is_zero(0.0)) throw InvalidArgument("eta_1 must differ from k");
    const Scalar u1 = (s - kk) / (eta1 - kk) - Scalar(1);
    if ((u1 - Scalar(1)).is_zero(1e-12)) throw DegenerateEigenvector("u_1(eta_1) = u_0");
    const Scalar beta0 = (eta1 - kk) / (u1 - Scalar(1));
    if (beta0.is_zero(1e-12)) throw InconsistentData("beta_0 vanishes");
    const Scalar alpha0 = kk - beta0;
    detail::to_count(alpha0, "alpha");
    detail::to_count(beta0, "beta");

    std::vector<std::vector<Scalar>> u(r);  // u[i][j] = u_j(etas[i])
    for (std::size_t i = 0; i < r; ++i) u[i] = {Scalar(1), (etas[i] - alpha0) / beta0};
    std::vector<Scalar> gamma{Scalar(0)}, alpha{alpha0}, beta{beta0};

    const double tiny = 1e-9;
    for (std::size_t m = 0;; ++m) {
        if (m >= max_steps) throw NonTermination("no terminal row after " + std::to_string(max_steps) + " steps");
        Scalar r_lambda, r_tau;
        for (std::size_t i = 0; i < r; ++i) {
            r_lambda += exp.lambdas[i] * etas[i] * u[i][m + 1];
            r_tau += exp.taus[i] * etas[i] * u[i][m + 1];
        }
        const Scalar a = u[1][m];
        const Scalar b = u[1][m + 1];
        if ((a - b).is_zero(tiny)) throw DegenerateEigenvector("u_" + std::to_string(m) + " = u_" + std::to_string(m + 1));

        // terminal row: beta = 0, gamma + alpha = k, gamma a + alpha b = eta_1 b
        const Scalar g_end = (eta1 * b - kk * b) / (a - b);
        const Scalar a_end = kk - g_end;
        if ((g_end * a * a + a_end * b * b - r_lambda).is_zero(tiny) &&
            (g_end * a * a * a + a_end * b * b * b - r_tau).is_zero(tiny)) {
            gamma.push_back(g_end);
            alpha.push_back(a_end);
            beta.push_back(Scalar(0));
            break;
        }

        const Scalar den = r_lambda + kk * b * a - eta1 * b * (b + a);
        if (den.is_zero(tiny)) throw DegenerateEigenvector("vanishing denominator for u_" + std::to_string(m + 2));
        const Scalar c = (r_tau - r_lambda * (b + a) + eta1 * b * b * a) / den;
        if ((a - c).is_zero(tiny) || (b - c).is_zero(tiny))
            throw DegenerateEigenvector("u_" + std::to_string(m + 2) + " repeats an earlier entry");
        const Scalar g = (r_lambda + kk * c * b - eta1 * b * (c + b)) / ((a - c) * (a - b));
        const Scalar al = (r_lambda + kk * c * a - eta1 * b * (c + a)) / ((b - c) * (b - a));
        const Scalar be = (r_lambda + kk * b * a - eta1 * b * (b + a)) / ((c - b) * (c - a));
        if (be.is_zero(tiny)) throw InconsistentData("beta vanishes without a consistent terminal row");
        // entries are counts; stop before exact rationals grow over further steps
        detail::to_count(g, "gamma");
        detail::to_count(al, "alpha");
        detail::to_count(be, "beta");
        gamma.push_back(g);
        alpha.push_back(al);
        beta.push_back(be);
        for (std::size_t i = 0; i < r; ++i)
            u[i].push_back((etas[i] * u[i][m + 1] - g * u[i][m] - al * u[i][m + 1]) / be);
    }

    std::vector<long long> gi, ai, bi;
    for (std::size_t j = 0; j < gamma.size(); ++j) {
        gi.push_back(detail::to_count(gamma[j], "gamma"));
        ai.push_back(detail::to_count(alpha[j], "alpha"));
        bi.push_back(detail::to_count(beta[j], "beta"));
    }
    try {
        return QuotientMatrix(std::move(gi), std::move(ai), std::move(bi));
    } catch (const InvalidArgument& e) {
        throw InconsistentData(std::string("reconstructed quotient matrix is invalid: ") + e.what());
    }
}

/// Eigen data of a quotient matrix on its own (no ambient graph); graph_index is the identity.
inline CodeSpectrum standalone_code_spectrum(const QuotientMatrix& u, const Tolerances& tol = {}) {
    CodeSpectrum cs;
    cs.etas = u.rho() == 0 ? std::vector<Scalar>{Scalar(u.k())} : tridiagonal_eigenvalues(u.tridiagonal(), tol.eigen);
    for (std::size_t j = 0; j < cs.etas.size(); ++j) {
        cs.graph_index.push_back(j);
        cs.stdvecs.push_back(code_standard_eigenvector(u, cs.etas[j], tol));
    }
    cs.sstar.assign(cs.graph_index.begin() + 1, cs.graph_index.end());
    return cs;
}

/**
 * Rebuilds U of a Q-polynomial code (ordering eta_0 = k, eta_1, eta_2, ...)
 * from eta_1, eta_2, lambda_0, lambda_1, tau_1, tau_2 alone:
 * lambda_2 = 1 - lambda_0 - lambda_1, tau_0 = lambda_0 lambda_1,
 * tau_3 = 1 - tau_0 - tau_1 - tau_2, alpha_0 and beta_0 from row 0, and eta_3
 * from entry 1 of the u^(3) expansion. When tau_3 = 0 the code has rho <= 2
 * and eta_3 is not needed.
 *
 * The result is checked by recomputing the expansions from the rebuilt U;
 * any mismatch (or failure of the recursion) is InconsistentData.
 */
inline QuotientMatrix reconstruct_from_qpoly_data(long long k, const Scalar& eta1, const Scalar& eta2,
                                                  const Scalar& lambda0, const Scalar& lambda1, const Scalar& tau1,
                                                  const Scalar& tau2, std::size_t max_radius = 64,
                                                  const Tolerances& tol = {}) {
    const Scalar kk(k), one(1);
    const Scalar lambda2 = one - lambda0 - lambda1;
    const Scalar tau0 = lambda0 * lambda1;
    const Scalar tau3 = one - tau0 - tau1 - tau2;
    const Scalar s = lambda0 * kk + lambda1 * eta1 + lambda2 * eta2;
    const Scalar u1 = (s - kk) / (eta1 - kk) - one;
    if ((u1 - one).is_zero(1e-12)) throw InconsistentData("row 0 equations are singular");
    const Scalar beta0 = (eta1 - kk) / (u1 - one);
    const Scalar alpha0 = kk - beta0;
    auto first_entry = [&](const Scalar& eta) { return (eta - alpha0) / beta0; };

    const double zero = 1e-12;
    std::vector<Scalar> etas{kk, eta1, eta2};
    EigenExpansion exp{{lambda0, lambda1, lambda2}, {tau0, tau1, tau2}};
    if (!tau3.is_zero(zero)) {
        const Scalar x1 = first_entry(eta1);
        const Scalar rhs = x1 * x1 * x1 - tau0 - tau1 * x1 - tau2 * first_entry(eta2);
        etas.push_back(alpha0 + beta0 * rhs / tau3);
        exp.lambdas.push_back(Scalar(0));
        exp.taus.push_back(tau3);
    }

    QuotientMatrix u({0}, {k}, {0});
    try {
        u = reconstruct_parameters(k, etas, exp, 2 * max_radius);
    } catch (const DegenerateEigenvector& e) {
        throw InconsistentData(std::string("recursion failed: ") + e.what());
    } catch (const NonTermination& e) {
        throw InconsistentData(std::string("recursion failed: ") + e.what());
    }

    // recompute the expansions from the rebuilt matrix
    CodeSpectrum cs;
    try {
        cs = standalone_code_spectrum(u, tol);
    } catch (const Error& e) {
        throw InconsistentData(std::string("rebuilt quotient matrix has no usable spectrum: ") + e.what());
    }
    std::vector<Scalar> expect_l(cs.etas.size()), expect_t(cs.etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        std::optional<std::size_t> at;
        for (std::size_t j = 0; j < cs.etas.size(); ++j)
            if (approx_equal(cs.etas[j], etas[i], tol.eigen)) at = j;
        const bool needed = i < 2 || !exp.lambdas[i].is_zero(zero) || !exp.taus[i].is_zero(zero);
        if (!at) {
            if (needed) throw InconsistentData("eigenvalue " + etas[i].to_string() + " missing from the rebuilt matrix");
            continue;
        }
        expect_l[*at] = exp.lambdas[i];
        expect_t[*at] = exp.taus[i];
    }
    const auto got_l = expand_in_eigenbasis(u, cs, eta1, 2, tol);
    const auto got_t = expand_in_eigenbasis(u, cs, eta1, 3, tol);
    for (std::size_t j = 0; j < cs.etas.size(); ++j)
        if (!approx_equal(got_l[j], expect_l[j], 1e-9) || !approx_equal(got_t[j], expect_t[j], 1e-9))
            throw InconsistentData("rebuilt quotient matrix does not reproduce the given expansion coefficients");
    return u;
}

struct KreinSupport {
    bool ok = true;
    std::optional<std::size_t> violating;  ///< position j in the expansion
};

/**
 * lambda_j != 0 needs q_{i1,i1}^{ij} != 0; tau_j != 0 needs some l with
 * q_{i1,i1}^{il} != 0 and q_{il,i1}^{ij} != 0. indices[j] is the graph
 * eigenvalue index of the j-th expansion position (indices[0] = 0).
 */
inline KreinSupport krein_support_check(const EigenExpansion& exp, const KreinTensor& q,
                                        const std::vector<std::size_t>& indices) {
    const std::size_t n = indices.size();
    if (exp.lambdas.size() != n || exp.taus.size() != n || n < 2)
        throw InvalidArgument("expansion and index list differ in length");
    const double zl = detail::relative_zero(exp.lambdas, 1e-8);
    const double zt = detail::relative_zero(exp.taus, 1e-8);
    const std::size_t i1 = indices[1];
    for (std::size_t j = 0; j < n; ++j) {
        if (!exp.lambdas[j].is_zero(zl) && q.is_zero(i1, i1, indices[j])) return {false, j};
        if (!exp.taus[j].is_zero(zt)) {
            bool found = false;
            for (std::size_t l = 0; l < n && !found; ++l)
                found = !q.is_zero(i1, i1, indices[l]) && !q.is_zero(indices[l], i1, indices[j]);
            if (!found) return {false, j};
        }
    }
    return {};
}

}  // namespace crc
