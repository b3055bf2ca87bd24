#pragma once

#include <cfloat>
#include <climits>

#include "specq/algebraic.hpp"

namespace specq {

// Finite digit alphabet of exact rationals, sorted ascending.
struct DigitSet {
    std::vector<Rat> digits;

    explicit DigitSet(std::vector<Rat> ds) : digits(std::move(ds)) {
        if (digits.empty()) throw InvalidDigits("digit set must be nonempty");
        std::sort(digits.begin(), digits.end());
        for (size_t i = 0; i + 1 < digits.size(); ++i)
            if (digits[i] == digits[i + 1]) throw InvalidDigits("digit set must be distinct");
    }
    static DigitSet range(long lo, long hi) {
        std::vector<Rat> ds;
        for (long v = lo; v <= hi; ++v) ds.emplace_back(v);
        return DigitSet(std::move(ds));
    }
    bool contains_zero() const {
        for (const Rat& d : digits)
            if (d == 0) return true;
        return false;
    }
    bool all_nonnegative() const { return digits.front() >= 0; }
};

struct SpectrumPoint {
    FieldElement value;
    double approx = 0;
};

// Finite slice {x in X : x <= B} of the spectrum X = {sum eps_i q^i}.
struct SpectrumSlice {
    AlgebraicReal q;
    DigitSet digits;
    Rat bound;
    int max_position = -1; // highest power of q that can carry a nonzero digit
    std::vector<SpectrumPoint> points; // strictly increasing
};

struct GapStats {
    std::vector<FieldElement> gaps; // consecutive differences, all positive
    FieldElement min_gap, max_gap;
    double min_approx = 0, max_approx = 0;
};

// All values sum_{i=0}^{n} eps_i q^i <= B over nonnegative digit alphabets,
// by bounded-degree exhaustion: a nonzero digit at position j forces
// eps_min * q^j <= B, which caps j; partial sums exceeding B prune exactly.
inline SpectrumSlice enumerate_spectrum(const AlgebraicReal& q, const DigitSet& digits,
                                        const Rat& bound) {
    if (q.compare_rational(Rat(1)) <= 0) throw OutOfRange("spectrum requires q > 1");
    if (!digits.all_nonnegative()) throw InvalidDigits("negative digit in X_m-style enumeration");
    if (!digits.contains_zero()) throw InvalidDigits("digit set must contain 0");
    if (bound <= 0) throw BoundNonPositive("bound must be > 0");

    SpectrumSlice slice{q, digits, bound, -1, {}};

    const Rat* eps_min = nullptr;
    for (const Rat& d : digits.digits)
        if (d > 0) { eps_min = &d; break; }

    std::vector<FieldElement> powers; // q^0 .. q^max_position
    if (eps_min) {
        FieldElement pw = FieldElement::one(q);
        FieldElement qe = FieldElement::generator(q);
        while ((*eps_min * pw).compare_rational(bound) <= 0) {
            powers.push_back(pw);
            pw = pw * qe;
        }
        slice.max_position = static_cast<int>(powers.size()) - 1;
    }

    std::vector<FieldElement> found;
    FieldElement zero = FieldElement::zero(q);
    // DFS high position to low, digits ascending, pruning sums above bound
    auto rec = [&](auto&& self, int pos, const FieldElement& sum) -> void {
        if (pos < 0) {
            found.push_back(sum);
            return;
        }
        for (const Rat& d : digits.digits) {
            FieldElement next = d == 0 ? sum : sum + d * powers[static_cast<size_t>(pos)];
            if (d != 0 && next.compare_rational(bound) > 0) break; // larger digits only grow
            self(self, pos - 1, next);
        }
    };
    rec(rec, slice.max_position, zero);

    std::sort(found.begin(), found.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.compare(b) < 0; });
    for (auto& v : found) {
        if (!slice.points.empty() && slice.points.back().value.compare(v) == 0) continue;
        double ap = v.approx();
        slice.points.push_back({std::move(v), ap});
    }
    return slice;
}

// Exact consecutive gaps of a slice.
inline GapStats gap_stats(const SpectrumSlice& slice) {
    if (slice.points.size() < 2)
        throw TooFewPoints("gap statistics need at least 2 spectrum points");
    GapStats out{{}, FieldElement(), FieldElement(), 0, 0};
    for (size_t i = 0; i + 1 < slice.points.size(); ++i)
        out.gaps.push_back(slice.points[i + 1].value - slice.points[i].value);
    out.min_gap = out.gaps.front();
    out.max_gap = out.gaps.front();
    for (const auto& g : out.gaps) {
        if (g.compare(out.min_gap) < 0) out.min_gap = g;
        if (g.compare(out.max_gap) > 0) out.max_gap = g;
    }
    out.min_approx = out.min_gap.approx();
    out.max_approx = out.max_gap.approx();
    return out;
}

// --- minimal nonzero values of Y_m^n(q) ---------------------------------

struct MinValueResult {
    FieldElement value; // exact minimum of |sum eps_i q^i| over nonzero values
    double approx = 0;
    std::vector<int> witness; // eps_0 .. eps_{n-1}
};

enum class MinValueBackend { Auto, Exhaustive, BranchBound };

namespace detail {

// Exhaustive oracle: plain odometer over all (2m+1)^n digit vectors with
// exact arithmetic throughout. Guarded; intended for small n.
inline MinValueResult min_nonzero_exhaustive(const AlgebraicReal& q, int m, int n) {
    double space = std::pow(2.0 * m + 1.0, n);
    if (space > 8e6) throw TooLarge("exhaustive search space exceeds the guard");
    std::vector<FieldElement> powers(static_cast<size_t>(n));
    powers[0] = FieldElement::one(q);
    FieldElement qe = FieldElement::generator(q);
    for (int j = 1; j < n; ++j)
        powers[static_cast<size_t>(j)] = powers[static_cast<size_t>(j - 1)] * qe;

    std::vector<int> eps(static_cast<size_t>(n), -m);
    std::optional<FieldElement> best;
    std::vector<int> witness;
    while (true) {
        FieldElement v = FieldElement::zero(q);
        for (int j = 0; j < n; ++j)
            if (eps[static_cast<size_t>(j)] != 0)
                v = v + Rat(eps[static_cast<size_t>(j)]) * powers[static_cast<size_t>(j)];
        if (v.sign() != 0) {
            FieldElement a = v.abs();
            if (!best || a.compare(*best) < 0) {
                best = a;
                witness = eps;
            }
        }
        int j = 0;
        while (j < n && eps[static_cast<size_t>(j)] == m) eps[static_cast<size_t>(j++)] = -m;
        if (j == n) break;
        ++eps[static_cast<size_t>(j)];
    }
    if (!best) throw AllZero("no nonzero value in the search space");
    return {*best, best->approx(), std::move(witness)};
}

// Meet-in-the-middle for rational q = p/r: every value scales to an integer
// by r^(n-1); halves are enumerated, one side sorted, and nearest partners
// located by binary search. Exact integer arithmetic throughout.
inline MinValueResult min_nonzero_rational(const AlgebraicReal& q, int m, int n) {
    const Rat& val = *q.rational_value();
    const Int &p = val.get_num(), &r = val.get_den();
    std::vector<Int> w(static_cast<size_t>(n)); // w[j] = p^j r^(n-1-j)
    for (int j = 0; j < n; ++j)
        w[static_cast<size_t>(j)] = pow_int(p, static_cast<unsigned long>(j)) *
                                    pow_int(r, static_cast<unsigned long>(n - 1 - j));
    int half = n / 2;
    auto enumerate = [&](int from, int to) { // positions [from, to)
        std::vector<std::pair<Int, long>> out; // (scaled sum, digit code)
        int len = to - from;
        if (len == 0) return std::vector<std::pair<Int, long>>{{Int(0), 0L}};
        long count = 1;
        for (int j = 0; j < len; ++j) count *= 2 * m + 1;
        out.reserve(static_cast<size_t>(count));
        std::vector<int> eps(static_cast<size_t>(len), -m);
        std::vector<long> place(static_cast<size_t>(len));
        place[0] = 1;
        for (int j = 1; j < len; ++j) place[static_cast<size_t>(j)] = place[static_cast<size_t>(j - 1)] * (2 * m + 1);
        Int s = 0;
        long code = 0;
        for (int j = 0; j < len; ++j) s -= m * w[static_cast<size_t>(from + j)];
        while (true) {
            out.emplace_back(s, code);
            int j = 0;
            while (j < len && eps[static_cast<size_t>(j)] == m) {
                eps[static_cast<size_t>(j)] = -m;
                s -= 2 * m * w[static_cast<size_t>(from + j)];
                code -= 2 * m * place[static_cast<size_t>(j)];
                ++j;
            }
            if (j == len) break;
            ++eps[static_cast<size_t>(j)];
            s += w[static_cast<size_t>(from + j)];
            code += place[static_cast<size_t>(j)];
        }
        return out;
    };
    auto low = enumerate(0, half), high = enumerate(half, n);
    std::sort(low.begin(), low.end());

    std::optional<Int> best;
    long best_low_code = 0, best_high_code = 0;
    auto consider = [&](const Int& total, long lc, long hc) {
        if (total == 0) return;
        Int a = abs(total);
        if (!best || a < *best) {
            best = a;
            best_low_code = lc;
            best_high_code = hc;
        }
    };
    for (const auto& [hs, hc] : high) {
        Int target = -hs;
        // nearest strictly-greater and strictly-smaller partners; exact-zero
        // pairs are never candidates, so ties at the target are skipped
        auto above = std::upper_bound(low.begin(), low.end(), std::make_pair(target, LONG_MAX));
        if (above != low.end()) consider(above->first + hs, above->second, hc);
        auto below = std::lower_bound(low.begin(), low.end(), std::make_pair(target, LONG_MIN));
        if (below != low.begin()) {
            auto probe = std::prev(below);
            consider(probe->first + hs, probe->second, hc);
        }
    }
    if (!best) throw AllZero("no nonzero value in the search space");
    std::vector<int> witness(static_cast<size_t>(n));
    long lc = best_low_code, hc = best_high_code;
    for (int j = 0; j < half; ++j) { witness[static_cast<size_t>(j)] = static_cast<int>(lc % (2 * m + 1)) - m; lc /= 2 * m + 1; }
    for (int j = half; j < n; ++j) { witness[static_cast<size_t>(j)] = static_cast<int>(hc % (2 * m + 1)) - m; hc /= 2 * m + 1; }
    FieldElement exact = FieldElement(q, IntPolynomial::constant(*best), pow_int(r, static_cast<unsigned long>(n - 1)));
    return {exact, exact.approx(), std::move(witness)};
}

// Branch-and-bound over digit prefixes (most significant first) with exact
// integer coordinates in the power basis and a certified floating fast path.
// Pruning radius: |prefix| - tail >= incumbent excludes the subtree.
class MinValueBnB {
public:
    MinValueBnB(const AlgebraicReal& q, int m, int n) : q_(q), m_(m), n_(n) {
        int d = q.degree();
        // basis value enclosures
        std::vector<FieldElement> powers(static_cast<size_t>(n));
        powers[0] = FieldElement::one(q);
        FieldElement qe = FieldElement::generator(q);
        for (int j = 1; j < n; ++j)
            powers[static_cast<size_t>(j)] = powers[static_cast<size_t>(j - 1)] * qe;
        D_ = 1;
        for (const auto& pw : powers) D_ = lcm(D_, pw.den());
        W_.assign(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(d), Int(0)));
        mid_.resize(static_cast<size_t>(n));
        err_.resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const auto& pw = powers[static_cast<size_t>(j)];
            Int scale = D_ / pw.den();
            for (int k = 0; k <= pw.num().degree(); ++k)
                W_[static_cast<size_t>(j)][static_cast<size_t>(k)] = scale * pw.num()[static_cast<size_t>(k)];
            auto iv = pw.value_interval(make_rat(1, Int(1) << 70));
            mid_[static_cast<size_t>(j)] = iv.mid().get_d();
            err_[static_cast<size_t>(j)] = double_above(iv.width()) + std::abs(mid_[static_cast<size_t>(j)]) * 1e-14;
        }
        // tails: tail[j] = m * (q^0 + ... + q^j), tail[-1] = 0
        tails_.resize(static_cast<size_t>(n));
        FieldElement acc = FieldElement::zero(q);
        for (int j = 0; j < n; ++j) {
            acc = acc + powers[static_cast<size_t>(j)];
            tails_[static_cast<size_t>(j)] = Rat(m) * acc;
            auto hull = tails_[static_cast<size_t>(j)].approx_hull();
            tail_lo_.push_back(hull.first);
            tail_hi_.push_back(hull.second);
        }
        coords_.assign(static_cast<size_t>(d), Int(0));
        digits_.assign(static_cast<size_t>(n), 0);
    }

    MinValueResult run(std::optional<MinValueResult> seed) {
        if (seed) {
            best_ = seed->value;
            witness_ = seed->witness;
            witness_.resize(static_cast<size_t>(n_), 0);
        } else {
            best_ = FieldElement::one(q_); // value of the vector (1, 0, ..., 0)
            witness_.assign(static_cast<size_t>(n_), 0);
            witness_[0] = 1;
        }
        refresh_best_hull();
        descend(n_ - 1, false, 0.0, 0.0);
        return {best_, best_.approx(), witness_};
    }

private:
    void refresh_best_hull() {
        auto hull = best_.approx_hull();
        best_lo_ = hull.first;
        best_hi_ = hull.second;
    }

    FieldElement current_exact() const {
        return {q_, IntPolynomial(coords_), D_};
    }

    // est/err: certified enclosure value(P) in [est-err, est+err]
    void descend(int pos, bool has_nonzero, double est, double err) {
        if (pos < 0) {
            leaf(has_nonzero, est, err);
            return;
        }
        // prune: |P| - tail >= best
        double tlo = tail_lo_[static_cast<size_t>(pos)], thi = tail_hi_[static_cast<size_t>(pos)];
        double mag_lo = std::abs(est) - err; // lower bound on |P|
        if (mag_lo > best_hi_ + thi) return;
        if (!(std::abs(est) + err < best_lo_ + tlo)) {
            // floating test inconclusive: decide exactly
            FieldElement margin = current_exact().abs() - best_ - tails_[static_cast<size_t>(pos)];
            if (margin.sign() >= 0) return;
        }
        int lo = has_nonzero ? -m_ : 0; // symmetry: first nonzero digit positive
        std::vector<std::pair<double, int>> order;
        order.reserve(static_cast<size_t>(m_ - lo + 1));
        for (int e = lo; e <= m_; ++e)
            order.emplace_back(std::abs(est + e * mid_[static_cast<size_t>(pos)]), e);
        std::sort(order.begin(), order.end());
        for (auto [unused, e] : order) {
            apply(pos, e);
            double nest = est + e * mid_[static_cast<size_t>(pos)];
            double nerr = err + std::abs(e) * err_[static_cast<size_t>(pos)] +
                          4 * DBL_EPSILON * (std::abs(nest) + std::abs(est));
            descend(pos - 1, has_nonzero || e != 0, nest, nerr);
            apply(pos, -e);
        }
    }

    void leaf(bool has_nonzero, double est, double err) {
        if (!has_nonzero) return; // the all-zero vector has value 0
        double mag_lo = std::abs(est) - err, mag_hi = std::abs(est) + err;
        if (mag_lo > best_hi_) return; // certainly not an improvement
        FieldElement v = current_exact();
        if (mag_hi < best_lo_ && mag_lo > 0) {
            adopt(v.abs());
            return;
        }
        int s = v.sign();
        if (s == 0) return;
        FieldElement a = s < 0 ? -v : v;
        if (a.compare(best_) < 0) adopt(std::move(a));
    }

    void adopt(FieldElement a) {
        best_ = std::move(a);
        witness_ = digits_;
        refresh_best_hull();
    }

    void apply(int pos, int e) {
        if (e == 0) return;
        digits_[static_cast<size_t>(pos)] += e;
        auto& w = W_[static_cast<size_t>(pos)];
        for (size_t k = 0; k < coords_.size(); ++k) coords_[k] += e * w[k];
    }

    AlgebraicReal q_;
    int m_, n_;
    Int D_;
    std::vector<std::vector<Int>> W_;
    std::vector<double> mid_, err_;
    std::vector<FieldElement> tails_;
    std::vector<double> tail_lo_, tail_hi_;
    FieldElement best_;
    double best_lo_ = 0, best_hi_ = 0;
    std::vector<int> witness_;
    std::vector<int> digits_;
    std::vector<Int> coords_;
};

} // namespace detail

// Minimum of |sum_{i<n} eps_i q^i| over nonzero values, eps_i in {0,+-1,..,+-m},
// with one witness vector. Exact; every pruning decision is certified.
inline MinValueResult min_nonzero_value(const AlgebraicReal& q, int m, int n,
                                        MinValueBackend backend = MinValueBackend::Auto,
                                        std::optional<MinValueResult> seed = std::nullopt) {
    if (q.compare_rational(Rat(1)) <= 0) throw OutOfRange("min_nonzero_value requires q > 1");
    if (m < 1 || n < 1) throw OutOfRange("m and n must be positive");
    switch (backend) {
        case MinValueBackend::Exhaustive:
            return detail::min_nonzero_exhaustive(q, m, n);
        case MinValueBackend::BranchBound:
            if (q.degree() == 1) return detail::min_nonzero_rational(q, m, n);
            return detail::MinValueBnB(q, m, n).run(std::move(seed));
        case MinValueBackend::Auto:
        default:
            if (q.degree() == 1) return detail::min_nonzero_rational(q, m, n);
            if (std::pow(2.0 * m + 1.0, n) <= 2e4) return detail::min_nonzero_exhaustive(q, m, n);
            return detail::MinValueBnB(q, m, n).run(std::move(seed));
    }
}

// --- distances to the nearest integer -----------------------------------

struct PowerNorm {
    int n = 0;
    FieldElement norm_exact; // || lambda q^n ||, exact
    double norm = 0;         // certified to certified_error
    double partial_sum = 0;  // sum of norms up to n
};

inline constexpr double power_norm_certified_error = 1e-12;

// || lambda q^n || for n = 1..N: exact distance from lambda q^n to the
// nearest integer, certified to 1e-12, plus running partial sums.
inline std::vector<PowerNorm> power_norms(const Rat& lambda, const AlgebraicReal& q, int N) {
    if (lambda == 0) throw LambdaZero("lambda must be nonzero");
    if (N < 1) throw OutOfRange("N must be positive");
    std::vector<PowerNorm> out;
    FieldElement v = FieldElement::from_rational(q, lambda);
    FieldElement qe = FieldElement::generator(q);
    Rat eps = make_rat(1, Int(1) << 44); // ~5.7e-14 enclosure width
    double running = 0;
    for (int n = 1; n <= N; ++n) {
        v = v * qe;
        RationalInterval iv = v.value_interval(eps);
        Int k = floor_rat(iv.lo);
        // value lies in [k, k+2); nearest-integer distance is
        // min(|v-k|, |v-(k+1)|, |v-(k+2)|), decided exactly
        FieldElement f = v - FieldElement::from_rational(q, Rat(k));
        FieldElement c1 = (f - FieldElement::one(q)).abs();
        FieldElement c2 = (f - FieldElement::from_rational(q, Rat(2))).abs();
        FieldElement norm = f.abs();
        if (c1.compare(norm) < 0) norm = c1;
        if (c2.compare(norm) < 0) norm = c2;
        double nd = norm.value_interval(eps).mid().get_d();
        running += nd;
        out.push_back({n, norm, nd, running});
    }
    return out;
}

} // namespace specq
