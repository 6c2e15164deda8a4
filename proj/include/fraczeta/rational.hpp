#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace fraczeta {

/// Exact rational number with 64-bit numerator/denominator, always normalized
/// (gcd 1, positive denominator).
///
/// Rationals carry the exact band exponents and pole real parts through the
/// term algebra, so coincident pole locations compare exactly instead of
/// within a floating tolerance.  All values in this project are tiny
/// (exponents, small fractions), but products are still computed in 128-bit
/// and range-checked to fail loudly rather than wrap.
class Rational {
public:
    constexpr Rational() : p_(0), q_(1) {}
    Rational(long long p) : p_(p), q_(1) {}
    Rational(long long p, long long q) : p_(p), q_(q) { normalize(); }

    long long num() const { return p_; }
    long long den() const { return q_; }

    double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    bool isInteger() const { return q_ == 1; }

    Rational operator-() const { return Rational(-p_, q_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checkedAdd(checkedMul(a.p_, b.q_), checkedMul(b.p_, a.q_)),
                        checkedMul(a.q_, b.q_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checkedMul(a.p_, b.p_), checkedMul(a.q_, b.q_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.p_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(checkedMul(a.p_, b.q_), checkedMul(a.q_, b.p_));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.p_ * b.q_ < (__int128)b.p_ * a.q_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Renders as "p/q", or just "p" when the denominator is 1.
    std::string str() const {
        if (q_ == 1) return std::to_string(p_);
        return std::to_string(p_) + "/" + std::to_string(q_);
    }

    /// Parses "p/q" or "p".  Throws std::invalid_argument on malformed input.
    static Rational parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            long long p = std::stoll(s.substr(0, slash));
            long long q = std::stoll(s.substr(slash + 1));
            return Rational(p, q);
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational::parse: malformed rational '" + s + "'");
        }
    }

private:
    static long long checkedMul(long long a, long long b) {
        __int128 r = (__int128)a * b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational: overflow");
        return (long long)r;
    }
    static long long checkedAdd(long long a, long long b) {
        __int128 r = (__int128)a + b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational: overflow");
        return (long long)r;
    }
    void normalize() {
        if (q_ == 0) throw std::domain_error("Rational: zero denominator");
        if (q_ < 0) { p_ = -p_; q_ = -q_; }
        long long g = std::gcd(p_ < 0 ? -p_ : p_, q_);
        if (g > 1) { p_ /= g; q_ /= g; }
        if (p_ == 0) q_ = 1;
    }

    long long p_, q_;
};

/// Expresses log_base(m) as an exact rational p/q with q <= maxDen, when m is
/// (to within 1e-13 relative) an exact rational power of base.  Returns
/// nullopt otherwise.  This is how lattice growth factors are certified to
/// sit on an arithmetic progression of pole real parts.
inline std::optional<Rational> rational_log(double m, double base, int maxDen = 24) {
    if (!(m > 0.0) || !(base > 1.0)) return std::nullopt;
    if (m == 1.0) return Rational(0);
    const double x = std::log(m) / std::log(base);
    // Continued-fraction convergents of x with denominator capped at maxDen.
    long long p0 = 1, q0 = 0, p1 = (long long)std::floor(x), q1 = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64 && q1 <= maxDen; ++iter) {
        const double approx = (double)p1 / (double)q1;
        if (std::abs(std::pow(base, approx) - m) <= 1e-13 * m)
            return Rational(p1, q1);
        if (frac < 1e-15) break;
        const double inv = 1.0 / frac;
        const long long a = (long long)std::floor(inv);
        frac = inv - std::floor(inv);
        const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    if (q1 <= maxDen) {
        const double approx = (double)p1 / (double)q1;
        if (std::abs(std::pow(base, approx) - m) <= 1e-13 * m)
            return Rational(p1, q1);
    }
    return std::nullopt;
}

} // namespace fraczeta

template <>
struct std::hash<fraczeta::Rational> {
    std::size_t operator()(const fraczeta::Rational& r) const noexcept {
        return std::hash<long long>()(r.num()) * 1000003u ^ std::hash<long long>()(r.den());
    }
};
