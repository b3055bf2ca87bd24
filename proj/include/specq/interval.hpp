#pragma once

#include <string>

#include "specq/rational.hpp"

namespace specq {

// Closed interval [lo, hi] with exact rational endpoints. lo == hi encodes an
// exactly known (rational) point.
struct RationalInterval {
    Rat lo, hi;

    RationalInterval() = default;
    RationalInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw SyntaxError("interval with lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    // Sign of every point in the interval, or 0 if the interval straddles
    // (or touches) zero.
    int definite_sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return 0;
    }

    std::string str() const { return "[" + rat_to_string(lo) + ", " + rat_to_string(hi) + "]"; }
};

inline RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return {lo, hi};
}

inline RationalInterval operator*(const Rat& c, const RationalInterval& a) {
    return c >= 0 ? RationalInterval{c * a.lo, c * a.hi} : RationalInterval{c * a.hi, c * a.lo};
}

inline RationalInterval operator+(const Rat& c, const RationalInterval& a) {
    return {c + a.lo, c + a.hi};
}

} // namespace specq
