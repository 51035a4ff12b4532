/**
 * @file scalar.hpp
 * @brief Exact-or-approximate real numbers.
 *
 * Almost every quantity in this library is rational: intersection numbers,
 * quotient matrices, and (for the graphs that matter in practice) eigenvalues.
 * A Scalar carries an exact rational as long as every operand that produced
 * it was exact, and degrades to a double the moment an irrational eigenvalue
 * enters the computation. Zero tests and comparisons are exact on the exact
 * side and tolerance-based on the approximate side.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "crc/error.hpp"

namespace crc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (!is_integral(r)) os << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw InvalidArgument("zero denominator in '" + text + "'");
        return Rational(Integer(text.substr(0, slash)), den);
    } catch (const std::runtime_error&) {
        throw InvalidArgument("not a rational number: '" + text + "'");
    }
}

class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(int v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(long long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)

    static Scalar approx(double v) {
        Scalar s;
        s.value_ = v;
        return s;
    }

    bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }

    const Rational& exact() const {
        if (!is_exact()) throw InternalError("exact value requested from an approximate scalar");
        return std::get<Rational>(value_);
    }

    double value() const {
        return is_exact() ? to_double(std::get<Rational>(value_)) : std::get<double>(value_);
    }

    /// Exact zero for exact scalars; |x| <= tol otherwise.
    bool is_zero(double tol) const {
        if (is_exact()) return std::get<Rational>(value_) == 0;
        return std::fabs(std::get<double>(value_)) <= tol;
    }

    bool is_integer(double tol = 1e-9) const {
        if (is_exact()) return is_integral(std::get<Rational>(value_));
        const double v = std::get<double>(value_);
        return std::fabs(v - std::round(v)) <= tol;
    }

    /// Nearest integer; exact for integral rationals.
    long long round() const { return std::llround(value()); }

    int sign(double tol = 0.0) const {
        if (is_zero(tol)) return 0;
        return value() > 0 ? 1 : -1;
    }

    Scalar operator-() const {
        if (is_exact()) return Scalar(Rational(-std::get<Rational>(value_)));
        return approx(-std::get<double>(value_));
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() + b.exact()));
        return approx(a.value() + b.value());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() - b.exact()));
        return approx(a.value() - b.value());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() * b.exact()));
        return approx(a.value() * b.value());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_exact() && b.exact() == 0) throw InternalError("division by exact zero");
        if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() / b.exact()));
        return approx(a.value() / b.value());
    }

    /// Ordering on exact values when both are exact, on doubles otherwise.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
        return a.value() < b.value();
    }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }

    /// Exact equality; approximate scalars compare by their stored double.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_exact() != b.is_exact()) return false;
        if (a.is_exact()) return a.exact() == b.exact();
        return a.value() == b.value();
    }

    std::string to_string() const {
        if (is_exact()) return crc::to_string(std::get<Rational>(value_));
        std::ostringstream os;
        os << std::setprecision(15) << std::get<double>(value_);
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    std::variant<Rational, double> value_;
};

/// Exact comparison when both sides are exact, |a-b| <= tol otherwise.
inline bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return std::fabs(a.value() - b.value()) <= tol;
}

inline Scalar abs(const Scalar& s) { return s.value() < 0 ? -s : s; }

/// Tolerances used wherever an approximate scalar has to be compared.
struct Tolerances {
    double eigen = 1e-9;          ///< matching a scalar to a known eigenvalue
    double residual = 1e-8;       ///< relative to the vertex count n
    double krein_zero = 1e-8;     ///< relative to max |q_ij^l|
    double expansion_zero = 1e-8; ///< relative to the largest expansion coefficient
};

}  // namespace crc
