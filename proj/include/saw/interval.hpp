#pragma once

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace saw {

// Closed interval of doubles with outward rounding. Basic operations widen by
// one ulp on each side, library transcendental calls by four.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval point(double x) { return {x, x}; }
    bool certainly_less(const Interval& o) const { return hi < o.lo; }
    bool certainly_less_equal(const Interval& o) const { return hi <= o.lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

namespace interval_detail {

inline double down(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}
inline double up(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}
inline Interval widen(double lo, double hi, int ulps) { return {down(lo, ulps), up(hi, ulps)}; }

}  // namespace interval_detail

inline Interval operator+(const Interval& a, const Interval& b) {
    return interval_detail::widen(a.lo + b.lo, a.hi + b.hi, 1);
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return interval_detail::widen(a.lo - b.hi, a.hi - b.lo, 1);
}
inline Interval operator*(const Interval& a, const Interval& b) {
    const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double lo = p[0], hi = p[0];
    for (double x : p) {
        lo = std::fmin(lo, x);
        hi = std::fmax(hi, x);
    }
    return interval_detail::widen(lo, hi, 1);
}
inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && b.hi >= 0.0) {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
    return a * interval_detail::widen(1.0 / b.hi, 1.0 / b.lo, 1);
}

// Monotone increasing functions.
inline Interval log(const Interval& x) { return interval_detail::widen(std::log(x.lo), std::log(x.hi), 4); }
inline Interval log1p(const Interval& x) { return interval_detail::widen(std::log1p(x.lo), std::log1p(x.hi), 4); }
inline Interval exp(const Interval& x) {
    Interval r = interval_detail::widen(std::exp(x.lo), std::exp(x.hi), 4);
    if (r.lo < 0.0) r.lo = 0.0;
    return r;
}
inline Interval expm1(const Interval& x) { return interval_detail::widen(std::expm1(x.lo), std::expm1(x.hi), 4); }
inline Interval sqrt(const Interval& x) { return interval_detail::widen(std::sqrt(x.lo), std::sqrt(x.hi), 1); }

// x^y for x > 0.
inline Interval pow(const Interval& x, const Interval& y) { return exp(log(x) * y); }

// Interval containing an exact integer.
inline Interval from_integer(const boost::multiprecision::cpp_int& c) {
    const double d = c.convert_to<double>();
    if (boost::multiprecision::cpp_int(d) == c) return Interval::point(d);
    return interval_detail::widen(d, d, 1);
}

// c^{1/n} for an exact count; [0, 0] for zero.
inline Interval root_interval(const boost::multiprecision::cpp_int& c, int n) {
    if (c == 0) return Interval::point(0.0);
    return exp(log(from_integer(c)) / Interval::point(static_cast<double>(n)));
}

// x·ln x, continuous at 0.
inline Interval xlogx(const Interval& x) {
    if (x.hi <= 0.0) return Interval::point(0.0);
    // Not monotone on (0, 1): evaluate the endpoints and include the minimum
    // at 1/e when it lies inside.
    auto f = [](double v) { return v <= 0.0 ? 0.0 : v * std::log(v); };
    double lo = std::fmin(f(x.lo), f(x.hi));
    double hi = std::fmax(f(x.lo), f(x.hi));
    const double e_inv = 1.0 / std::exp(1.0);
    if (x.lo <= e_inv && e_inv <= x.hi) lo = std::fmin(lo, -e_inv);
    return interval_detail::widen(lo, hi, 4);
}

}  // namespace saw
