#pragma once

#include <vector>

#include "specq/polynomial.hpp"

namespace specq {

// Generalized Sturm chain f0, f1, -rem(f0,f1), ... with content removed but
// signs preserved at every step.
inline std::vector<IntPolynomial> sturm_chain(IntPolynomial f0, IntPolynomial f1) {
    std::vector<IntPolynomial> chain;
    chain.push_back(f0.primitive_keep_sign());
    if (f1.is_zero()) return chain;
    chain.push_back(f1.primitive_keep_sign());
    while (true) {
        const IntPolynomial& a = chain[chain.size() - 2];
        const IntPolynomial& b = chain[chain.size() - 1];
        IntPolynomial r = -pseudo_rem_signed(a, b);
        if (r.is_zero()) break;
        chain.push_back(r.primitive_keep_sign());
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

inline std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
    return sturm_chain(p, p.derivative());
}

inline int sign_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

inline int variations_at(const std::vector<IntPolynomial>& chain, const Rat& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& f : chain) signs.push_back(f.sign_at(x));
    return sign_variations(signs);
}

inline int sign_at_infinity(const IntPolynomial& f, bool plus) {
    if (f.is_zero()) return 0;
    int s = sgn(f.lc());
    if (!plus && f.degree() % 2 == 1) s = -s;
    return s;
}

inline int variations_at_infinity(const std::vector<IntPolynomial>& chain, bool plus) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& f : chain) signs.push_back(sign_at_infinity(f, plus));
    return sign_variations(signs);
}

// Number of distinct real roots of the (squarefree) head of the chain in
// (a, b]. Requires a <= b.
inline int count_roots_halfopen(const std::vector<IntPolynomial>& chain, const Rat& a, const Rat& b) {
    return variations_at(chain, a) - variations_at(chain, b);
}

inline int count_real_roots(const std::vector<IntPolynomial>& chain) {
    return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

// Cauchy index I(B/A) over the whole real line: the number of poles where
// B/A jumps from -inf to +inf minus those jumping +inf to -inf. Computed by
// the generalized Sturm chain started from (A, B).
inline int cauchy_index(const IntPolynomial& A, const IntPolynomial& B) {
    if (A.is_zero()) return 0;
    auto chain = sturm_chain(A, B);
    return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

// --- real root isolation ----------------------------------------------

// Pairwise-disjoint isolating intervals for the real roots of the squarefree
// part of p, sorted ascending. A point interval [r, r] marks an exact
// rational root. Open-interval endpoints are never roots.
inline std::vector<RationalInterval> isolate_real_roots(const IntPolynomial& p) {
    if (p.is_zero()) throw SyntaxError("cannot isolate roots of the zero polynomial");
    IntPolynomial sf = squarefree_part(p);
    if (sf.degree() <= 0) return {};
    auto chain = sturm_chain(sf);

    std::vector<RationalInterval> out;
    Rat M = root_bound(sf);

    // Invariant for every stacked interval: sf has no root at either endpoint,
    // and `count` roots strictly inside.
    struct Seg {
        Rat a, b;
        int count;
    };
    std::vector<Seg> stack;

    {
        Rat a = -M, b = M;
        // Cauchy bound is strict, so sf(-M) != 0 and sf(M) != 0.
        int c = count_roots_halfopen(chain, a, b);
        if (c > 0) stack.push_back({a, b, c});
    }
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 1) {
            out.emplace_back(s.a, s.b);
            continue;
        }
        Rat m = (s.a + s.b) / 2;
        if (sf.sign_at(m) == 0) {
            // Exact rational root: emit it and carve out a root-free margin
            // around it before recursing on the two sides.
            out.emplace_back(m, m);
            Rat d = (s.b - s.a) / 4;
            while (sf.sign_at(m - d) == 0 || sf.sign_at(m + d) == 0 ||
                   count_roots_halfopen(chain, m - d, m + d) != 1)
                d /= 2;
            int left = count_roots_halfopen(chain, s.a, m - d);
            int right = s.count - left - 1;
            if (left > 0) stack.push_back({s.a, m - d, left});
            if (right > 0) stack.push_back({m + d, s.b, right});
        } else {
            int left = count_roots_halfopen(chain, s.a, m);
            int right = s.count - left;
            if (left > 0) stack.push_back({s.a, m, left});
            if (right > 0) stack.push_back({m, s.b, right});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RationalInterval& x, const RationalInterval& y) { return x.lo < y.lo; });
    return out;
}

} // namespace specq
