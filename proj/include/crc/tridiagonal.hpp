/**
 * @file tridiagonal.hpp
 * @brief Spectra of integer tridiagonal matrices.
 *
 * Both L(Gamma) of a distance-regular graph and the quotient matrix U(C) of a
 * completely regular code are irreducible integer tridiagonal matrices, so
 * their eigenvalues are real and simple. The characteristic polynomial is
 * monic with integer coefficients, hence every rational root is an integer.
 * Roots are bracketed by Sturm-count bisection on the symmetrized matrix and
 * every bracket that contains an integer root of the characteristic
 * polynomial is replaced by that exact integer.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "crc/error.hpp"
#include "crc/matrix.hpp"
#include "crc/scalar.hpp"

namespace crc {

/// Irreducible tridiagonal matrix given by its three bands.
struct Tridiagonal {
    std::vector<long long> lower;  ///< lower[i] = T(i, i-1); lower[0] ignored
    std::vector<long long> diag;   ///< diag[i] = T(i, i)
    std::vector<long long> upper;  ///< upper[i] = T(i, i+1); last entry ignored

    std::size_t size() const noexcept { return diag.size(); }

    IntMatrix dense() const {
        const std::size_t n = size();
        IntMatrix m(n, n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = diag[i];
            if (i > 0) m(i, i - 1) = lower[i];
            if (i + 1 < n) m(i, i + 1) = upper[i];
        }
        return m;
    }
};

/// Coefficients (constant term first) of det(xI - T).
inline std::vector<Integer> characteristic_polynomial(const Tridiagonal& t) {
    std::vector<Integer> prev{1};
    if (t.size() == 0) return prev;
    std::vector<Integer> cur{Integer(-t.diag[0]), 1};
    for (std::size_t i = 1; i < t.size(); ++i) {
        const Integer coupling = Integer(t.upper[i - 1]) * t.lower[i];
        std::vector<Integer> next(cur.size() + 1, 0);
        for (std::size_t d = 0; d < cur.size(); ++d) {
            next[d + 1] += cur[d];
            next[d] -= cur[d] * t.diag[i];
        }
        for (std::size_t d = 0; d < prev.size(); ++d) next[d] -= coupling * prev[d];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline Integer evaluate(const std::vector<Integer>& poly, long long x) {
    Integer acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace detail {

/// Number of eigenvalues strictly below x (LDL^T pivot signs).
inline std::size_t sturm_count(const Tridiagonal& t, double x) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double coupling =
            i == 0 ? 0.0 : static_cast<double>(t.upper[i - 1]) * static_cast<double>(t.lower[i]);
        q = (static_cast<double>(t.diag[i]) - x) - (i == 0 ? 0.0 : coupling / q);
        if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(x));
        if (q < 0.0) ++count;
    }
    return count;
}

inline double gershgorin_radius(const Tridiagonal& t) {
    double r = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double row = std::fabs(static_cast<double>(t.diag[i]));
        if (i > 0) row += std::fabs(static_cast<double>(t.lower[i]));
        if (i + 1 < t.size()) row += std::fabs(static_cast<double>(t.upper[i]));
        r = std::max(r, row);
    }
    return r;
}

}  // namespace detail

/**
 * Eigenvalues in strictly decreasing order. Integer roots are exact, the
 * rest are doubles isolated to about 1e-12 absolute.
 *
 * Throws EigenFailure if the matrix is reducible or two roots cannot be
 * separated by more than separation_tol.
 */
inline std::vector<Scalar> tridiagonal_eigenvalues(const Tridiagonal& t, double separation_tol = 1e-9) {
    const std::size_t n = t.size();
    if (n == 0) return {};
    if (t.lower.size() != n || t.upper.size() != n) throw InvalidArgument("tridiagonal bands differ in length");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (t.upper[i] * t.lower[i + 1] <= 0)
            throw EigenFailure("tridiagonal matrix is not irreducible with positive couplings at row " +
                               std::to_string(i));
    }

    const auto poly = characteristic_polynomial(t);
    const double radius = detail::gershgorin_radius(t) + 1.0;
    std::vector<Scalar> roots;
    roots.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        // j-th smallest eigenvalue lies in (lo, hi]
        double lo = -radius;
        double hi = radius;
        for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (detail::sturm_count(t, mid) > j) hi = mid;
            else lo = mid;
        }
        const double x = 0.5 * (lo + hi);
        const double r = std::round(x);
        if (std::fabs(x - r) < 1e-6 && evaluate(poly, static_cast<long long>(r)) == 0)
            roots.emplace_back(static_cast<long long>(r));
        else
            roots.push_back(Scalar::approx(x));
    }
    std::reverse(roots.begin(), roots.end());
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (!(roots[j].value() - roots[j + 1].value() > separation_tol))
            throw EigenFailure("could not isolate " + std::to_string(n) + " distinct eigenvalues");
    }
    return roots;
}

}  // namespace crc
