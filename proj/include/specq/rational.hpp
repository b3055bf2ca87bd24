#pragma once

#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include <gmpxx.h>

#include "specq/errors.hpp"

namespace specq {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize; every Rat built from raw parts
// must go through here.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

// Accepts "p", "p/q" and plain decimal strings with integral value ("2.0").
inline Rat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw EmptyInput("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw SyntaxError("cannot parse rational '" + text + "'");
    }
}

inline std::string rat_to_string(const Rat& r) {
    return r.get_den() == 1 ? r.get_num().get_str()
                            : r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat out;
    mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    return out; // base canonical => base^e canonical
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// Directed double bounds: mpq_get_d truncates toward zero, so one ulp of
// outward slack on each side makes [lo, hi] a true enclosure of r.
inline double double_below(const Rat& r) {
    return std::nextafter(r.get_d(), -std::numeric_limits<double>::infinity());
}
inline double double_above(const Rat& r) {
    return std::nextafter(r.get_d(), std::numeric_limits<double>::infinity());
}

} // namespace specq
