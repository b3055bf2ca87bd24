#include <atomic>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include "specq/algebraic.hpp"

#include "oracles.hpp"

using namespace specq;

static AlgebraicReal golden() {
    return AlgebraicReal(parse_polynomial("x^2-x-1"), RationalInterval(Rat(1), Rat(2)));
}

static AlgebraicReal plastic() {
    return AlgebraicReal(parse_polynomial("x^3-x-1"), RationalInterval(Rat(1), Rat(2)));
}

TEST_CASE("AlgebraicReal construction validates the interval") {
    auto p = parse_polynomial("x^2-x-1");
    CHECK_NOTHROW(AlgebraicReal(p, RationalInterval(Rat(1), Rat(2))));
    CHECK_THROWS_AS(AlgebraicReal(p, RationalInterval(Rat(-2), Rat(2))), NoRootInInterval); // two roots
    CHECK_THROWS_AS(AlgebraicReal(p, RationalInterval(Rat(3), Rat(4))), NoRootInInterval);  // none
    // squarefree-ization happens internally
    AlgebraicReal r(p * p, RationalInterval(Rat(1), Rat(2)));
    CHECK(r.defpoly() == p);
}

TEST_CASE("a rational root at an interval endpoint collapses to the exact value") {
    // (x-1)(x^2-x-1): the root 1 sits at the low endpoint of [1, 3/2]
    auto p = parse_polynomial("x^3-2x^2+1");
    AlgebraicReal r(p, RationalInterval(Rat(1), make_rat(3, 2)));
    REQUIRE(r.rational_value().has_value());
    CHECK(*r.rational_value() == 1);
    CHECK(FieldElement::generator(r).compare_rational(Rat(1)) == 0);
}

TEST_CASE("rational numbers are degenerate algebraic reals") {
    auto three_halves = AlgebraicReal::from_rational(make_rat(3, 2));
    CHECK(three_halves.degree() == 1);
    REQUIRE(three_halves.rational_value().has_value());
    CHECK(*three_halves.rational_value() == make_rat(3, 2));
    CHECK(three_halves.compare_rational(Rat(1)) > 0);
    CHECK(three_halves.compare_rational(Rat(2)) < 0);
    CHECK(three_halves.compare_rational(make_rat(3, 2)) == 0);
    // degree-1 polynomial input collapses too
    AlgebraicReal viapoly(parse_polynomial("2x-3"), RationalInterval(Rat(1), Rat(2)));
    CHECK(viapoly.rational_value().has_value());
}

TEST_CASE("field arithmetic satisfies the defining relation") {
    auto ctx = golden();
    auto q = FieldElement::generator(ctx);

    SECTION("q*q reduces to q+1 in the golden field") {
        auto q2 = q * q;
        CHECK(q2.num().coeffs() == std::vector<Int>{Int(1), Int(1)});
        CHECK(q2.den() == 1);
    }
    SECTION("a - a = 0 exactly") {
        auto a = (make_rat(7, 3) * q) - FieldElement::from_rational(ctx, make_rat(2, 5));
        CHECK((a - a).is_zero());
        CHECK((a - a).num().is_zero());
    }
    SECTION("cubic defining relation q^3 = q + 1") {
        auto c = FieldElement::generator(plastic());
        CHECK((c * c * c - c - FieldElement::one(c.ctx())).is_zero());
        CHECK((c.pow(3) - c).num() == parse_polynomial("1")); // q^3 - q = 1 as residue
    }
    SECTION("context mismatch is rejected") {
        auto c = FieldElement::generator(plastic());
        CHECK_THROWS_AS(q + c, ContextMismatch);
        // two independently built goldens are distinct contexts by identity
        auto q2 = FieldElement::generator(golden());
        CHECK_THROWS_AS(q + q2, ContextMismatch);
    }
}

TEST_CASE("sign_of decides exactly") {
    auto ctx = golden();
    auto q = FieldElement::generator(ctx);
    auto one = FieldElement::one(ctx);

    CHECK((q * q - q - one).sign() == 0);
    CHECK((q - one).sign() == 1);
    CHECK((Rat(2) * q - FieldElement::from_rational(ctx, Rat(3))).sign() == 1);  // q > 3/2
    CHECK((Rat(2) * q - FieldElement::from_rational(ctx, Rat(4))).sign() == -1); // q < 2
    CHECK(FieldElement::zero(ctx).sign() == 0);
}

TEST_CASE("compare induces the value order") {
    auto ctx = golden();
    auto q = FieldElement::generator(ctx);
    CHECK(q.compare(FieldElement::one(ctx)) > 0);
    CHECK(q.compare(q) == 0);
    CHECK((q * q).compare(Rat(2) * q) < 0); // q^2 = q+1 < 2q iff q > 1
    CHECK(q.compare_rational(make_rat(8, 5)) > 0);
    CHECK(q.compare_rational(make_rat(13, 8)) < 0);
}

TEST_CASE("division") {
    auto ctx = golden();
    auto q = FieldElement::generator(ctx);
    auto one = FieldElement::one(ctx);

    CHECK(((q * q) / q).equals(q));
    CHECK(((one / q) * q).equals(one));
    CHECK(((q - one) / q).equals(one / (q * q))); // q-1 = 1/q in the golden field
    CHECK_THROWS_AS(q / FieldElement::zero(ctx), DivisionByZero);
}

TEST_CASE("division in a reducible (squarefree, non-irreducible) context") {
    // defpoly = (x^2-x-1)(x-3), root = golden ratio
    auto p = parse_polynomial("x^3-4x^2+2x+3");
    AlgebraicReal ctx(p, RationalInterval(Rat(1), Rat(2)));
    auto q = FieldElement::generator(ctx);
    auto one = FieldElement::one(ctx);
    auto three = FieldElement::from_rational(ctx, Rat(3));

    // (x^2-x-1) is a nonzero residue whose value at the root is exactly 0
    auto vanishing = q * q - q - one;
    CHECK(!vanishing.num().is_zero());
    CHECK(vanishing.is_zero());

    // q-3 is nonzero at the root but shares the factor (x-3) with defpoly
    auto shifted = q - three;
    CHECK(shifted.sign() == -1);
    auto recovered = shifted / shifted;
    CHECK(recovered.equals(one)); // value equality; representation may differ
    CHECK(((one / shifted) * shifted).equals(one));

    CHECK_THROWS_AS(one / vanishing, DivisionByZero);
}

TEST_CASE("field algebra properties on random elements") {
    auto ctx = plastic();
    std::uniform_int_distribution<int> coeff(-4, 4), den(1, 6);
    auto rnd = [&]() {
        std::vector<Int> cs(3);
        for (auto& c : cs) c = coeff(oracles::rng());
        return FieldElement(ctx, IntPolynomial(cs), Int(den(oracles::rng())));
    };
    for (int trial = 0; trial < 60; ++trial) {
        auto a = rnd(), b = rnd(), c = rnd();
        // associativity and distributivity hold on canonical representations
        CHECK(((a + b) + c).num() == (a + (b + c)).num());
        CHECK(((a + b) + c).den() == (a + (b + c)).den());
        CHECK((a * (b + c)).num() == (a * b + a * c).num());
        CHECK((a * b).num() == (b * a).num());
        // sign multiplicativity
        CHECK((a * b).sign() == a.sign() * b.sign());
    }
}

TEST_CASE("rational-valued elements agree with rational signs") {
    auto ctx = golden();
    for (long num = -5; num <= 5; ++num) {
        auto e = FieldElement::from_rational(ctx, make_rat(num, 3));
        CHECK(e.sign() == ((num > 0) - (num < 0)));
    }
    auto rat_ctx = AlgebraicReal::from_rational(make_rat(3, 2));
    auto r = FieldElement::generator(rat_ctx);
    CHECK((r * r).compare_rational(make_rat(9, 4)) == 0);
    CHECK((r - FieldElement::from_rational(rat_ctx, Rat(2))).sign() == -1);
}

TEST_CASE("value intervals enclose certified approximations") {
    auto ctx = golden();
    auto q = FieldElement::generator(ctx);
    auto e = q * q - q; // = 1 exactly
    auto iv = e.value_interval(make_rat(1, 1000));
    CHECK(iv.contains(Rat(1)));
    CHECK(iv.width() <= make_rat(1, 1000));
    auto hull = q.approx_hull();
    CHECK(hull.first <= 1.6180339887498948);
    CHECK(hull.second >= 1.6180339887498948);
    CHECK(hull.second - hull.first < 1e-12);
}

TEST_CASE("concurrent refinement only tightens the shared interval") {
    auto ctx = plastic();
    auto q = FieldElement::generator(ctx);
    std::vector<std::thread> workers;
    std::atomic<bool> ok{true};
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&]() {
            for (int i = 0; i < 50; ++i) {
                auto before = ctx.interval();
                ctx.refine_steps(1);
                auto after = ctx.interval();
                if (after.lo < before.lo || after.hi > before.hi) ok = false;
                if ((q * q - FieldElement::one(ctx)).sign() <= 0) ok = false; // q^2 > 1 always
            }
        });
    }
    for (auto& w : workers) w.join();
    CHECK(ok);
    // the interval still isolates the root: the defining polynomial changes sign
    auto iv = ctx.interval();
    CHECK(ctx.defpoly().sign_at(iv.lo) * ctx.defpoly().sign_at(iv.hi) < 0);
}

TEST_CASE("rendering and re-parsing of field elements") {
    auto ctx = golden();
    auto q = FieldElement::generator(ctx);
    auto one = FieldElement::one(ctx);

    CHECK((q - one).str() == "q-1");
    CHECK((FieldElement::from_rational(ctx, Rat(2)) - q).str() == "2-q");
    CHECK(FieldElement::zero(ctx).str() == "0");
    CHECK((q * q).str() == "q+1");
    CHECK((make_rat(1, 2) * q).str() == "q/2");
    CHECK((make_rat(1, 2) * (q - one)).str() == "(q-1)/2");

    for (const auto& e : {q - one, Rat(-3) * q, make_rat(7, 6) * (q + one), FieldElement::zero(ctx)}) {
        auto back = parse_field_element(ctx, e.str());
        CHECK(back.num() == e.num());
        CHECK(back.den() == e.den());
    }
}
