#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "specq/sturm.hpp"

namespace specq {

namespace detail {

// Shared, refinable state of one algebraic number. The isolating interval
// only ever tightens; readers take a snapshot under the lock and may observe
// a stale (wider) interval, which is always still valid.
struct AlgebraicState {
    IntPolynomial defpoly; // squarefree, primitive, positive leading coefficient
    std::vector<IntPolynomial> chain;
    std::optional<Rat> rational; // set iff the value is exactly rational

    mutable std::mutex mu;
    mutable RationalInterval iso;
    mutable int sign_lo = 0; // sign of defpoly at iso.lo (0 only in rational mode)
};

} // namespace detail

// A real algebraic number: squarefree defining polynomial plus an isolating
// rational interval. Cheap to copy; copies share the refinement cache.
class AlgebraicReal {
public:
    AlgebraicReal(const IntPolynomial& poly, const RationalInterval& iso)
        : st_(std::make_shared<detail::AlgebraicState>()) {
        if (poly.is_zero() || poly.degree() < 1)
            throw NoRootInInterval("defining polynomial must have positive degree");
        st_->defpoly = squarefree_part(poly);
        st_->chain = sturm_chain(st_->defpoly);
        if (st_->defpoly.degree() == 1) {
            Rat r = make_rat(-st_->defpoly[0], st_->defpoly[1]);
            if (!iso.contains(r))
                throw NoRootInInterval("interval " + iso.str() + " does not contain the root");
            set_rational(r);
            return;
        }
        int inner = count_roots_halfopen(st_->chain, iso.lo, iso.hi);
        bool at_lo = st_->defpoly.sign_at(iso.lo) == 0;
        bool at_hi = st_->defpoly.sign_at(iso.hi) == 0;
        if (at_hi) --inner; // half-open count includes hi
        int total = inner + (at_lo ? 1 : 0) + (at_hi ? 1 : 0);
        if (total != 1)
            throw NoRootInInterval("interval " + iso.str() + " contains " +
                                   std::to_string(total) + " roots, expected exactly 1");
        if (at_lo) { set_rational(iso.lo); return; }
        if (at_hi) { set_rational(iso.hi); return; }
        st_->iso = iso;
        st_->sign_lo = st_->defpoly.sign_at(iso.lo);
    }

    static AlgebraicReal from_rational(const Rat& r) {
        IntPolynomial p({-r.get_num(), r.get_den()});
        return AlgebraicReal(p, RationalInterval(r, r));
    }

    const IntPolynomial& defpoly() const { return st_->defpoly; }
    int degree() const { return st_->defpoly.degree(); }
    const std::vector<IntPolynomial>& sturm() const { return st_->chain; }
    const std::optional<Rat>& rational_value() const { return st_->rational; }
    bool same_context(const AlgebraicReal& o) const { return st_ == o.st_; }

    RationalInterval interval() const {
        std::lock_guard<std::mutex> lk(st_->mu);
        return st_->iso;
    }

    // Tighten the cached interval to width <= eps and return it.
    RationalInterval refine(const Rat& eps) const {
        if (eps <= 0) throw OutOfRange("refine requires eps > 0");
        std::lock_guard<std::mutex> lk(st_->mu);
        while (st_->iso.width() > eps) bisect_locked();
        return st_->iso;
    }

    RationalInterval refine_steps(int k) const {
        std::lock_guard<std::mutex> lk(st_->mu);
        for (int i = 0; i < k && !st_->iso.is_point(); ++i) bisect_locked();
        return st_->iso;
    }

    double approx() const {
        RationalInterval iv = refine(make_rat(1, 1l << 60));
        return iv.mid().get_d();
    }

    // Sign of (value - r), decided exactly.
    int compare_rational(const Rat& r) const {
        if (st_->rational) {
            int c = cmp(*st_->rational, r);
            return (c > 0) - (c < 0);
        }
        if (st_->defpoly.sign_at(r) == 0) {
            // r is a root of the defining polynomial; ours iff it lies inside.
            RationalInterval iv = interval();
            if (iv.contains(r)) return 0;
            return iv.lo > r ? 1 : -1;
        }
        while (true) {
            RationalInterval iv = interval();
            if (iv.lo > r) return 1;
            if (iv.hi < r) return -1;
            refine_steps(4);
        }
    }

    std::shared_ptr<detail::AlgebraicState> state() const { return st_; }

private:
    void set_rational(const Rat& r) {
        st_->rational = r;
        st_->iso = RationalInterval(r, r);
        st_->sign_lo = 0;
    }

    void bisect_locked() const {
        if (st_->iso.is_point()) return;
        Rat m = st_->iso.mid();
        int s = st_->defpoly.sign_at(m);
        if (s == 0) {
            st_->rational = m;
            st_->iso = RationalInterval(m, m);
            st_->sign_lo = 0;
            return;
        }
        if (s == st_->sign_lo) st_->iso.lo = m;
        else st_->iso.hi = m;
    }

    std::shared_ptr<detail::AlgebraicState> st_;
};

// Exact element of the number field Q(q): an integer polynomial residue of
// degree < deg(defpoly) over a positive integer denominator. All predicates
// (sign, comparison, zero test) are decided exactly.
class FieldElement {
public:
    FieldElement() = default;

    FieldElement(AlgebraicReal ctx, IntPolynomial num, Int den = Int(1))
        : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw DivisionByZero("field element with zero denominator");
        if (den_ < 0) { den_ = -den_; num_ = -num_; }
        reduce();
    }

    static FieldElement zero(const AlgebraicReal& ctx) { return {ctx, IntPolynomial(), Int(1)}; }
    static FieldElement one(const AlgebraicReal& ctx) {
        return {ctx, IntPolynomial::constant(1), Int(1)};
    }
    static FieldElement from_rational(const AlgebraicReal& ctx, const Rat& r) {
        return {ctx, IntPolynomial::constant(r.get_num()), r.get_den()};
    }
    // The number q itself as an element of its own field.
    static FieldElement generator(const AlgebraicReal& ctx) {
        return {ctx, IntPolynomial::x(), Int(1)};
    }

    const AlgebraicReal& ctx() const { return ctx_; }
    const IntPolynomial& num() const { return num_; }
    const Int& den() const { return den_; }
    bool same_context(const FieldElement& o) const { return ctx_.same_context(o.ctx_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_ctx(b);
        return {a.ctx_, b.den_ * a.num_ + a.den_ * b.num_, a.den_ * b.den_};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_ctx(b);
        return {a.ctx_, b.den_ * a.num_ - a.den_ * b.num_, a.den_ * b.den_};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_ctx(b);
        return {a.ctx_, a.num_ * b.num_, a.den_ * b.den_};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check_ctx(b);
        return a * b.inverse();
    }
    friend FieldElement operator*(const Rat& r, const FieldElement& a) {
        return {a.ctx_, r.get_num() * a.num_, r.get_den() * a.den_};
    }
    FieldElement operator-() const { return {ctx_, -num_, den_}; }

    FieldElement abs() const { return sign() < 0 ? -*this : *this; }

    FieldElement pow(unsigned long e) const {
        FieldElement acc = one(ctx_), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Exact sign of the value at the root. Fast path: interval evaluation
    // over the (refining) isolating interval; exact zero detection via
    // gcd with the defining polynomial once the interval is tight.
    int sign() const {
        if (num_.is_zero()) return 0;
        if (ctx_.rational_value()) return num_.sign_at(*ctx_.rational_value());
        const Rat gcd_threshold = make_rat(1, Int(1) << 64);
        bool gcd_done = false;
        while (true) {
            RationalInterval iso = ctx_.interval();
            if (iso.is_point()) return num_.sign_at(iso.lo);
            int s = num_.eval_interval(iso).definite_sign();
            if (s != 0) return s;
            if (!gcd_done && iso.width() <= gcd_threshold) {
                if (is_zero_by_gcd(iso)) return 0;
                gcd_done = true; // provably nonzero; keep refining until decisive
            }
            ctx_.refine_steps(8);
        }
    }

    bool is_zero() const { return sign() == 0; }

    // Three-way comparison by value: -1, 0, +1.
    int compare(const FieldElement& o) const { return (*this - o).sign(); }
    int compare_rational(const Rat& r) const {
        return (*this - from_rational(ctx_, r)).sign();
    }
    bool equals(const FieldElement& o) const { return compare(o) == 0; }

    // Enclosure of the value with width <= eps.
    RationalInterval value_interval(const Rat& eps) const {
        if (ctx_.rational_value()) {
            Rat v = exact_rational_value();
            return {v, v};
        }
        Rat deps = eps * Rat(den_);
        while (true) {
            RationalInterval iv = num_.eval_interval(ctx_.interval());
            if (iv.width() <= deps)
                return {iv.lo / Rat(den_), iv.hi / Rat(den_)};
            ctx_.refine_steps(4);
        }
    }

    double approx() const {
        return value_interval(make_rat(1, Int(1) << 60)).mid().get_d();
    }

    // Certified double hull [lo, hi] of the value.
    std::pair<double, double> approx_hull() const {
        RationalInterval iv = value_interval(make_rat(1, Int(1) << 52));
        return {double_below(iv.lo), double_above(iv.hi)};
    }

    // Exact rational value; only valid when the context is rational.
    Rat exact_rational_value() const {
        return num_.eval(*ctx_.rational_value()) / Rat(den_);
    }

    std::string str(const std::string& var = "q") const;

private:
    void check_ctx(const FieldElement& o) const {
        if (!same_context(o)) throw ContextMismatch("field elements from different contexts");
    }

    // Residue reduction mod defpoly plus content/denominator canonicalization.
    void reduce() {
        const IntPolynomial& dp = ctx_.defpoly();
        int d = dp.degree();
        while (num_.degree() >= d) {
            int k = num_.degree() - d;
            num_ = dp.lc() * num_ - num_.lc() * dp.shift_up(k);
            den_ *= dp.lc();
        }
        if (num_.is_zero()) { den_ = 1; return; }
        Int g;
        mpz_gcd(g.get_mpz_t(), num_.content().get_mpz_t(), den_.get_mpz_t());
        if (g != 1) {
            std::vector<Int> cs(num_.coeffs());
            for (Int& c : cs) c /= g;
            num_ = IntPolynomial(std::move(cs));
            den_ /= g;
        }
    }

    // Exact zero test once interval evaluation has failed to decide: the
    // element vanishes at the root iff gcd(num, defpoly) does.
    bool is_zero_by_gcd(const RationalInterval& iso) const {
        IntPolynomial g = poly_gcd(num_, ctx_.defpoly());
        if (g.degree() < 1) return false;
        // iso's endpoints are never roots of defpoly, hence not of g | defpoly;
        // a sign change of g over iso pins the (unique) root inside.
        return g.sign_at(iso.lo) != g.sign_at(iso.hi);
    }

    // Multiplicative inverse of the value. When gcd(num, defpoly) is
    // nonconstant the residue ring has zero divisors; inverting modulo the
    // cofactor still yields a residue with the correct value at the root.
    FieldElement inverse() const {
        if (is_zero()) throw DivisionByZero("division by a zero field element");
        const IntPolynomial& dp = ctx_.defpoly();
        IntPolynomial g = poly_gcd(num_, dp);
        IntPolynomial mod = g.degree() >= 1 ? div_exact(dp, g).primitive() : dp;
        // extended Euclid over Q[x]: u*num + v*mod = 1
        using QP = std::vector<Rat>;
        auto deg = [](const QP& p) { return static_cast<int>(p.size()) - 1; };
        auto trim = [](QP& p) { while (!p.empty() && p.back() == 0) p.pop_back(); };
        auto to_qp = [](const IntPolynomial& p) {
            QP out(p.coeffs().size());
            for (size_t i = 0; i < out.size(); ++i) out[i] = Rat(p[i]);
            return out;
        };
        QP r0 = to_qp(mod), r1 = to_qp(num_);
        QP u0 = {}, u1 = {Rat(1)}; // coefficients of num in r0, r1
        while (deg(r1) > 0) {
            // divide r0 by r1
            QP q(std::max(0, deg(r0) - deg(r1) + 1), Rat(0));
            QP rem = r0;
            for (int d2 = deg(rem); d2 >= deg(r1); d2 = deg(rem)) {
                Rat c = rem[d2] / r1[deg(r1)];
                int k = d2 - deg(r1);
                q[k] = c;
                for (int i = 0; i <= deg(r1); ++i) rem[k + i] -= c * r1[i];
                rem[d2] = 0;
                trim(rem);
                if (rem.empty()) break;
            }
            // u_next = u0 - q*u1
            QP un(std::max(u0.size(), q.size() + u1.size()), Rat(0));
            for (size_t i = 0; i < u0.size(); ++i) un[i] += u0[i];
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < u1.size(); ++j) un[i + j] -= q[i] * u1[j];
            trim(un);
            r0 = std::move(r1); r1 = std::move(rem);
            u0 = std::move(u1); u1 = std::move(un);
        }
        if (r1.empty())
            throw DivisionByZero("element not invertible at the root"); // unreachable: value nonzero
        // r1 is a nonzero constant: u1 * num = r1 (mod `mod`)
        Rat c = r1[0];
        // inverse = (den / c) * u1
        Int common_den = 1;
        for (const Rat& t : u1) {
            Rat scaled = t / c;
            common_den = lcm(common_den, scaled.get_den());
        }
        std::vector<Int> ncoef(u1.size());
        for (size_t i = 0; i < u1.size(); ++i) {
            Rat t = (u1[i] / c) * Rat(common_den) * Rat(den_);
            ncoef[i] = t.get_num(); // t integral by construction of common_den
        }
        return {ctx_, IntPolynomial(std::move(ncoef)), common_den};
    }

    AlgebraicReal ctx_ = AlgebraicReal::from_rational(Rat(0));
    IntPolynomial num_;
    Int den_ = 1;
};

// Rendering: descending powers, but flipped to ascending when the leading
// term is negative so "2-q" prints without a unary minus.
inline std::string FieldElement::str(const std::string& var) const {
    if (num_.is_zero()) return "0";
    struct Term { int deg; Int coeff; };
    std::vector<Term> terms;
    for (int d = num_.degree(); d >= 0; --d)
        if (num_[static_cast<size_t>(d)] != 0) terms.push_back({d, num_[static_cast<size_t>(d)]});
    if (terms.front().coeff < 0) std::reverse(terms.begin(), terms.end());
    std::string body;
    for (const Term& t : terms) {
        if (body.empty()) {
            if (t.coeff < 0) body += "-";
        } else {
            body += t.coeff < 0 ? "-" : "+";
        }
        Int mag = ::abs(t.coeff);
        if (mag != 1 || t.deg == 0) body += mag.get_str();
        if (t.deg >= 1) {
            body += var;
            if (t.deg >= 2) body += "^" + std::to_string(t.deg);
        }
    }
    if (den_ == 1) return body;
    if (terms.size() == 1 && terms.front().coeff > 0) return body + "/" + den_.get_str();
    return "(" + body + ")/" + den_.get_str();
}

// Parse a polynomial-in-q string (optionally "(...)/den" or "term/den") back
// into a field element; inverse of FieldElement::str.
inline FieldElement parse_field_element(const AlgebraicReal& ctx, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw EmptyInput("empty field element");
    Int den = 1;
    auto slash = s.rfind('/');
    if (slash != std::string::npos && slash + 1 < s.size() &&
        s.find_first_not_of("0123456789", slash + 1) == std::string::npos) {
        den = Int(s.substr(slash + 1));
        s = s.substr(0, slash);
        if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    }
    detail::PolyParser parser(s);
    return {ctx, IntPolynomial(parser.parse()), den};
}

} // namespace specq
