#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "specq/interval.hpp"
#include "specq/rational.hpp"

namespace specq {

// Integer-coefficient polynomial, coefficients stored in ascending degree
// order with a nonzero leading coefficient (the zero polynomial is an empty
// vector).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPolynomial constant(Int v) { return IntPolynomial({std::move(v)}); }
    static IntPolynomial x() { return IntPolynomial({Int(0), Int(1)}); }

    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero poly
    const Int& lc() const { return c_.back(); }
    const Int& operator[](size_t i) const { return c_[i]; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    // gcd of all coefficients, always >= 0 (0 for the zero polynomial).
    Int content() const {
        Int g = 0;
        for (const Int& a : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    // Primitive part with positive leading coefficient.
    IntPolynomial primitive() const {
        if (is_zero()) return *this;
        Int g = content();
        if (lc() < 0) g = -g;
        std::vector<Int> out(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / g;
        return IntPolynomial(std::move(out));
    }

    // Divide by the content only, keeping the sign of the leading
    // coefficient. Used inside Sturm chains where signs carry information.
    IntPolynomial primitive_keep_sign() const {
        if (is_zero()) return *this;
        Int g = content();
        std::vector<Int> out(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / g;
        return IntPolynomial(std::move(out));
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return IntPolynomial();
        std::vector<Int> out(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<long>(i);
        return IntPolynomial(std::move(out));
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
        return acc;
    }

    Int eval_int(const Int& x) const {
        Int acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    int sign_at(const Rat& x) const { return sgn(eval(x)); }

    // Interval Horner evaluation; the result encloses p(t) for every t in iv.
    RationalInterval eval_interval(const RationalInterval& iv) const {
        RationalInterval acc{Rat(0), Rat(0)};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = Rat(*it) + (acc * iv);
        return acc;
    }

    friend IntPolynomial operator-(const IntPolynomial& p) {
        std::vector<Int> out(p.c_.size());
        for (size_t i = 0; i < p.c_.size(); ++i) out[i] = -p.c_[i];
        return IntPolynomial(std::move(out));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Int> out(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
        return IntPolynomial(std::move(out));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Int> out(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
        return IntPolynomial(std::move(out));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return IntPolynomial();
        std::vector<Int> out(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(out));
    }

    friend IntPolynomial operator*(const Int& k, const IntPolynomial& p) {
        if (k == 0) return IntPolynomial();
        std::vector<Int> out(p.c_.size());
        for (size_t i = 0; i < p.c_.size(); ++i) out[i] = k * p.c_[i];
        return IntPolynomial(std::move(out));
    }

    // p * x^k
    IntPolynomial shift_up(size_t k) const {
        if (is_zero()) return *this;
        std::vector<Int> out(c_.size() + k, Int(0));
        std::copy(c_.begin(), c_.end(), out.begin() + k);
        return IntPolynomial(std::move(out));
    }

    // x^deg * p(1/x)
    IntPolynomial reversed() const {
        std::vector<Int> out(c_.rbegin(), c_.rend());
        return IntPolynomial(std::move(out));
    }

    IntPolynomial neg_arg() const { // p(-x)
        std::vector<Int> out(c_);
        for (size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
        return IntPolynomial(std::move(out));
    }

    // den^deg * p(num/den * x): integer polynomial with roots scaled by den/num.
    IntPolynomial scale_arg(const Rat& r) const {
        if (is_zero()) return *this;
        const Int &u = r.get_num(), &v = r.get_den();
        size_t n = c_.size() - 1;
        std::vector<Int> out(c_.size());
        Int up = 1;
        for (size_t k = 0; k <= n; ++k) {
            out[k] = c_[k] * up * pow_int(v, static_cast<unsigned long>(n - k));
            up *= u;
        }
        return IntPolynomial(std::move(out));
    }

    std::string str(const std::string& var = "x") const;

private:
    static int sgn(const Rat& r) { return ::sgn(r); }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// --- division ---------------------------------------------------------

// Exact division; caller guarantees b | a over Z.
inline IntPolynomial div_exact(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> quot(a.is_zero() ? 0 : std::max(0, a.degree() - b.degree() + 1), Int(0));
    int db = b.degree();
    for (int d = static_cast<int>(rem.size()) - 1; d >= db; --d) {
        if (rem[d] == 0) continue;
        Int q = rem[d] / b.lc(); // exact by assumption
        quot[d - db] = q;
        for (int i = 0; i <= db; ++i) rem[d - db + i] -= q * b[i];
    }
    return IntPolynomial(std::move(quot));
}

// Sign-true pseudo-remainder: rem(lc(b)^e * a, b) with e even, so the
// remainder has the same sign behaviour as the true rational remainder.
inline IntPolynomial pseudo_rem_signed(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw DivisionByZero("pseudo-remainder by zero");
    int da = a.degree(), db = b.degree();
    if (da < db) return a;
    unsigned long e = static_cast<unsigned long>(da - db + 1);
    if (e % 2 == 1) ++e;
    std::vector<Int> rem((pow_int(b.lc(), e) * a).coeffs());
    for (int d = static_cast<int>(rem.size()) - 1; d >= db; --d) {
        if (rem[d] == 0) continue;
        Int q = rem[d] / b.lc(); // exact: we premultiplied by lc^e
        for (int i = 0; i <= db; ++i) rem[d - db + i] -= q * b[i];
        rem[d] = 0;
    }
    return IntPolynomial(std::move(rem));
}

// Primitive PRS gcd, result primitive with positive leading coefficient.
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    a = a.primitive();
    b = b.primitive();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_rem_signed(a, b).primitive();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive();
}

inline IntPolynomial squarefree_part(const IntPolynomial& p) {
    if (p.is_zero() || p.degree() == 0) return p.primitive();
    IntPolynomial g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return p.primitive();
    return div_exact(p.primitive(), g).primitive();
}

// Cauchy bound: all real roots lie in (-M, M).
inline Rat root_bound(const IntPolynomial& p) {
    if (p.is_zero() || p.degree() == 0) return Rat(1);
    Int mx = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Int a = abs(p[i]);
        if (a > mx) mx = a;
    }
    return 1 + make_rat(mx, abs(p.lc()));
}

// --- parsing & printing ------------------------------------------------

namespace detail {

struct PolyParser {
    const std::string& s;
    size_t i = 0;
    std::string var_seen; // first variable letter encountered

    explicit PolyParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }

    Int parse_uint() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw SyntaxError("expected digits at position " + std::to_string(start));
        if (i < s.size() && (s[i] == '.' || s[i] == ','))
            throw NonIntegerCoefficient("non-integer literal near position " + std::to_string(i));
        return Int(s.substr(start, i - start));
    }

    bool at_var() {
        if (eof()) return false;
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c));
    }

    void eat_var() {
        char c = peek();
        if (!var_seen.empty() && var_seen[0] != c)
            throw SyntaxError(std::string("unexpected second variable '") + c + "'");
        var_seen = std::string(1, c);
        ++i;
    }

    // term := int | int? var ('^' uint)?
    void parse_term(int sign, std::vector<Int>& acc) {
        Int coeff = 1;
        bool have_coeff = false;
        if (!at_var()) {
            coeff = parse_uint();
            have_coeff = true;
        }
        unsigned long exp = 0;
        if (!eof() && at_var()) {
            eat_var();
            exp = 1;
            if (!eof() && peek() == '^') {
                ++i;
                Int e = parse_uint();
                if (!e.fits_ulong_p()) throw SyntaxError("exponent too large");
                exp = e.get_ui();
            }
        } else if (!have_coeff) {
            throw SyntaxError("expected term at position " + std::to_string(i));
        }
        if (acc.size() < exp + 1) acc.resize(exp + 1, Int(0));
        acc[exp] += sign * coeff;
    }

    std::vector<Int> parse() {
        if (eof()) throw EmptyInput("empty polynomial");
        std::vector<Int> acc;
        int sign = 1;
        if (peek() == '+' || peek() == '-') { // tolerate a leading sign
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        }
        parse_term(sign, acc);
        while (!eof()) {
            char c = peek();
            if (c == '+') sign = 1;
            else if (c == '-') sign = -1;
            else if (c == '.')
                throw NonIntegerCoefficient("non-integer literal near position " + std::to_string(i));
            else
                throw SyntaxError(std::string("unexpected character '") + c + "'");
            ++i;
            parse_term(sign, acc);
        }
        return acc;
    }
};

} // namespace detail

// Parses the grammar: poly := term (('+'|'-') term)*, term := int | int? x ('^' uint)?.
// The result is normalized to primitive form with positive leading coefficient.
inline IntPolynomial parse_polynomial(const std::string& text) {
    detail::PolyParser parser(text);
    return IntPolynomial(parser.parse()).primitive();
}

inline std::string IntPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
        const Int& a = c_[d];
        if (a == 0) continue;
        if (out.empty()) {
            if (a < 0) out += "-";
        } else {
            out += (a < 0) ? "-" : "+";
        }
        Int mag = abs(a);
        if (mag != 1 || d == 0) out += mag.get_str();
        if (d >= 1) {
            out += var;
            if (d >= 2) out += "^" + std::to_string(d);
        }
    }
    return out;
}

} // namespace specq
