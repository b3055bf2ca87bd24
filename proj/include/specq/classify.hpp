#pragma once

#include <cassert>
#include <optional>

#include "specq/algebraic.hpp"

namespace specq {

// Exact root counts relative to the unit circle, with multiplicity (inputs
// are squarefree, so every root counts once).
struct RootCircleCounts {
    int inside = 0;
    int on = 0;
    int outside = 0;
    int total() const { return inside + on + outside; }
    bool operator==(const RootCircleCounts&) const = default;
};

enum class NumberClassTag {
    Pisot,
    Salem,
    PerronNotPisotSalem,
    AlgebraicNonPerron,
    NotAlgebraicInteger,
};

inline const char* to_string(NumberClassTag t) {
    switch (t) {
        case NumberClassTag::Pisot: return "Pisot";
        case NumberClassTag::Salem: return "Salem";
        case NumberClassTag::PerronNotPisotSalem: return "PerronNotPisotSalem";
        case NumberClassTag::AlgebraicNonPerron: return "AlgebraicNonPerron";
        case NumberClassTag::NotAlgebraicInteger: return "NotAlgebraicInteger";
    }
    return "?";
}

struct NumberClass {
    NumberClassTag tag;
    RootCircleCounts counts;
    bool monic = false;
};

// An algebraic number is an algebraic integer iff its defining polynomial
// (primitive, squarefree) is monic.
inline bool is_algebraic_integer(const IntPolynomial& p) { return p.primitive().is_monic(); }

namespace detail {

struct ComplexIntPoly {
    IntPolynomial re, im;
    ComplexIntPoly operator*(const ComplexIntPoly& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
};

// Real and imaginary parts of G(t) = (1-it)^n h((1+it)/(1-it)). The curve
// t -> G(t) traces h along the unit circle (tangent half-angle substitution);
// its winding is the number of roots of h inside the circle.
inline std::pair<IntPolynomial, IntPolynomial> circle_winding_parts(const IntPolynomial& h) {
    int n = h.degree();
    ComplexIntPoly plus{IntPolynomial::constant(1), IntPolynomial::x()};   // 1 + it
    ComplexIntPoly minus{IntPolynomial::constant(1), -IntPolynomial::x()}; // 1 - it
    std::vector<ComplexIntPoly> up(n + 1), down(n + 1);
    up[0] = down[0] = {IntPolynomial::constant(1), IntPolynomial()};
    for (int k = 1; k <= n; ++k) {
        up[k] = up[k - 1] * plus;
        down[k] = down[k - 1] * minus;
    }
    IntPolynomial A, B;
    for (int k = 0; k <= n; ++k) {
        ComplexIntPoly term = up[k] * down[n - k];
        A = A + h[k] * term.re;
        B = B + h[k] * term.im;
    }
    return {A, B};
}

// Number of roots of h strictly inside the unit circle. Requires h
// squarefree with no roots of modulus exactly 1 (hence h(1), h(-1) != 0).
inline int roots_in_unit_disk_circle_free(const IntPolynomial& h) {
    int n = h.degree();
    if (n <= 0) return 0;
    auto [A, B] = circle_winding_parts(h);
    if (A.is_zero()) {
        // curve confined to the imaginary axis: zero net winding
        assert(n % 2 == 0);
        return n / 2;
    }
    int index = cauchy_index(A, B);
    int corr = 0;
    if (B.degree() > A.degree()) {
        int s_pos = sgn(B.lc()) * sgn(A.lc());
        int s_neg = ((B.degree() - A.degree()) % 2 == 0) ? s_pos : -s_pos;
        corr = (s_pos - s_neg) / 2;
    }
    int twice = n + corr - index; // = n + delta_arg/pi
    assert(twice % 2 == 0 && twice >= 0 && twice <= 2 * n);
    return twice / 2;
}

// Maps a palindromic polynomial g of degree 2k (no roots at +-1) to the
// degree-k polynomial G with g(x) = x^k G(x + 1/x).
inline IntPolynomial selfreciprocal_to_y(const IntPolynomial& g) {
    int deg = g.degree();
    assert(deg % 2 == 0);
    int k = deg / 2;
    IntPolynomial G = IntPolynomial::constant(g[static_cast<size_t>(k)]);
    IntPolynomial pjm1 = IntPolynomial::constant(2); // x^0 + x^0
    IntPolynomial pj = IntPolynomial::x();           // x + 1/x
    for (int j = 1; j <= k; ++j) {
        G = G + g[static_cast<size_t>(k + j)] * pj;
        IntPolynomial next = IntPolynomial::x() * pj - pjm1;
        pjm1 = pj;
        pj = next;
    }
    return G;
}

} // namespace detail

// Exact counts of roots of p inside / on / outside the unit circle. Roots on
// the circle are split off via gcd with the reversed polynomial; the
// remaining circle-free factor is counted by an exact winding number.
inline RootCircleCounts unit_circle_root_counts(const IntPolynomial& p_in) {
    IntPolynomial p = p_in.primitive();
    if (p.is_zero()) throw SyntaxError("root counts of the zero polynomial");
    RootCircleCounts counts;
    if (p.degree() == 0) return counts;
    if (p[0] == 0) { // squarefree, so x divides exactly once
        counts.inside += 1;
        p = div_exact(p, IntPolynomial::x());
    }
    if (p.degree() == 0) return counts;

    IntPolynomial g = poly_gcd(p, p.reversed());
    IntPolynomial h = div_exact(p, g);

    // self-reciprocal part: contains every root on the circle and every
    // reciprocal pair z, 1/z
    if (g.degree() >= 1) {
        for (long r : {1L, -1L}) {
            IntPolynomial lin({Int(-r), Int(1)});
            if (g.sign_at(Rat(r)) == 0) {
                counts.on += 1;
                g = div_exact(g, lin);
            }
        }
        if (g.degree() >= 1) {
            IntPolynomial G = detail::selfreciprocal_to_y(g);
            int pairs_on = count_roots_halfopen(sturm_chain(G), Rat(-2), Rat(2));
            counts.on += 2 * pairs_on;
            int off = g.degree() / 2 - pairs_on; // reciprocal pairs off the circle
            counts.inside += off;
            counts.outside += off;
        }
    }

    int nu = detail::roots_in_unit_disk_circle_free(h);
    counts.inside += nu;
    counts.outside += h.degree() - nu;
    return counts;
}

// Counts relative to the circle |z| = r for exact rational r > 0, via the
// substitution z = r*x.
inline RootCircleCounts circle_root_counts(const IntPolynomial& p, const Rat& r) {
    if (r <= 0) throw OutOfRange("circle radius must be positive");
    return unit_circle_root_counts(p.scale_arg(r));
}

namespace detail {

// Dense polynomial over Q(q), low degree first, trimmed by exact value.
using FieldPoly = std::vector<FieldElement>;

inline void trim_by_value(FieldPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int field_poly_gcd_degree(FieldPoly a, FieldPoly b) {
    trim_by_value(a);
    trim_by_value(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size()) {
            FieldElement c = a.back() / b.back();
            size_t k = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[k + i] = a[k + i] - c * b[i];
            a.pop_back(); // leading term cancels exactly
            trim_by_value(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// True iff every conjugate of q other than q itself has modulus < q.
// A second root of modulus >= q either shares a "radius-q reciprocal"
// partner with p (detected exactly by a gcd over Q(q)) or is separated from
// q by some rational radius (found by refinement).
inline bool all_other_conjugates_below(const AlgebraicReal& a) {
    IntPolynomial p = a.defpoly();
    int n = p.degree();
    if (n == 1) return true;

    IntPolynomial p0 = p;
    if (p0[0] == 0) p0 = div_exact(p0, IntPolynomial::x());
    int n0 = p0.degree();

    // gcd over Q(q) of p0(x) and x^n0 * p0(q^2/x): nontrivial common roots
    // besides q itself mean some conjugate has modulus >= q.
    FieldElement q2 = FieldElement::generator(a).pow(2);
    FieldPoly fp(static_cast<size_t>(n0) + 1), fr(static_cast<size_t>(n0) + 1);
    for (int j = 0; j <= n0; ++j) {
        fp[static_cast<size_t>(j)] =
            FieldElement(a, IntPolynomial::constant(p0[static_cast<size_t>(j)]));
        fr[static_cast<size_t>(j)] =
            FieldElement(a, IntPolynomial::constant(p0[static_cast<size_t>(n0 - j)])) *
            q2.pow(static_cast<unsigned long>(n0 - j));
    }
    if (field_poly_gcd_degree(std::move(fp), std::move(fr)) >= 2) return false;

    // Now q is the only root on its own circle; refine until the annulus
    // (lo, hi) around q isolates exactly one modulus.
    while (a.interval().lo <= 1) a.refine_steps(2);
    while (true) {
        RationalInterval iso = a.interval();
        RootCircleCounts at_lo = circle_root_counts(p, iso.lo);
        RootCircleCounts at_hi = circle_root_counts(p, iso.hi);
        int below = at_lo.inside + at_lo.on; // #{|z| <= lo}
        int strictly_in_hi = at_hi.inside;   // #{|z| < hi}
        if (strictly_in_hi - below == 1) return strictly_in_hi == n;
        a.refine_steps(4);
    }
}

} // namespace detail

// Classification per the Pisot / Salem / Perron definitions. The defining
// polynomial is taken as the minimal polynomial of the number.
inline NumberClass classify_number(const AlgebraicReal& a) {
    if (a.compare_rational(Rat(1)) <= 0)
        throw NotGreaterThanOne("classification requires q > 1");
    const IntPolynomial& p = a.defpoly();
    NumberClass out;
    out.counts = unit_circle_root_counts(p);
    out.monic = p.is_monic();
    if (!out.monic) {
        out.tag = NumberClassTag::NotAlgebraicInteger;
    } else if (out.counts.outside == 1 && out.counts.on == 0) {
        out.tag = NumberClassTag::Pisot;
    } else if (out.counts.outside == 1 && out.counts.on >= 1) {
        out.tag = NumberClassTag::Salem;
    } else {
        out.tag = detail::all_other_conjugates_below(a) ? NumberClassTag::PerronNotPisotSalem
                                                        : NumberClassTag::AlgebraicNonPerron;
    }
    return out;
}

enum class DensityReason { Pisot, TooLarge };

struct DensityVerdict {
    bool dense = false;
    std::optional<DensityReason> reason; // set iff not dense
};

// Verdict for "Y_m(q) is dense in R": dense iff q < m+1 and q is not Pisot.
inline DensityVerdict density_verdict(const AlgebraicReal& a, int m) {
    if (m < 1) throw OutOfRange("m must be a positive integer");
    if (a.compare_rational(Rat(1)) <= 0)
        throw NotGreaterThanOne("density verdict requires q > 1");
    if (a.compare_rational(Rat(m + 1)) >= 0) return {false, DensityReason::TooLarge};
    if (classify_number(a).tag == NumberClassTag::Pisot) return {false, DensityReason::Pisot};
    return {true, std::nullopt};
}

} // namespace specq
