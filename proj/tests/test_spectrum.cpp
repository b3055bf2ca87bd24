#include <catch2/catch_amalgamated.hpp>

#include "specq/spectrum.hpp"

#include "oracles.hpp"

using namespace specq;

static AlgebraicReal golden() {
    return AlgebraicReal(parse_polynomial("x^2-x-1"), RationalInterval(Rat(1), Rat(2)));
}

static std::vector<Rat> rats(std::initializer_list<long> xs) {
    std::vector<Rat> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

using oracles::naive_spectrum;

TEST_CASE("enumerate_spectrum on the spec examples") {
    SECTION("q=2, digits {0,1}, B=7 gives 0..7") {
        auto s = enumerate_spectrum(AlgebraicReal::from_rational(Rat(2)), DigitSet(rats({0, 1})), Rat(7));
        REQUIRE(s.points.size() == 8);
        for (long k = 0; k <= 7; ++k)
            CHECK(s.points[static_cast<size_t>(k)].value.compare_rational(Rat(k)) == 0);
    }
    SECTION("golden, digits {0,1}, B=2 gives {0, 1, q}") {
        auto q = golden();
        auto s = enumerate_spectrum(q, DigitSet(rats({0, 1})), Rat(2));
        REQUIRE(s.points.size() == 3);
        CHECK(s.points[0].value.compare_rational(Rat(0)) == 0);
        CHECK(s.points[1].value.compare_rational(Rat(1)) == 0);
        CHECK(s.points[2].value.equals(FieldElement::generator(q)));
    }
    SECTION("digit set {0} gives {0}") {
        auto s = enumerate_spectrum(golden(), DigitSet(rats({0})), Rat(1));
        REQUIRE(s.points.size() == 1);
        CHECK(s.points[0].value.is_zero());
    }
    SECTION("errors") {
        CHECK_THROWS_AS(enumerate_spectrum(golden(), DigitSet(rats({-1, 0, 1})), Rat(1)),
                        InvalidDigits);
        CHECK_THROWS_AS(enumerate_spectrum(golden(), DigitSet(rats({1, 2})), Rat(1)), InvalidDigits);
        CHECK_THROWS_AS(enumerate_spectrum(golden(), DigitSet(rats({0, 1})), Rat(0)),
                        BoundNonPositive);
        CHECK_THROWS_AS(enumerate_spectrum(golden(), DigitSet(rats({0, 1})), Rat(-2)),
                        BoundNonPositive);
        CHECK_THROWS_AS(
            enumerate_spectrum(AlgebraicReal::from_rational(make_rat(1, 2)), DigitSet(rats({0, 1})), Rat(1)),
            OutOfRange);
    }
}

TEST_CASE("enumerate_spectrum matches naive exhaustion") {
    struct Case {
        AlgebraicReal q;
        DigitSet digits;
        Rat bound;
    };
    std::vector<Case> cases;
    cases.push_back({AlgebraicReal::from_rational(Rat(2)), DigitSet(rats({0, 1})), Rat(7)});
    cases.push_back({golden(), DigitSet(rats({0, 1})), Rat(4)});
    cases.push_back({AlgebraicReal(parse_polynomial("x^3-x-1"), RationalInterval(Rat(1), Rat(2))),
                     DigitSet(rats({0, 1, 2})), Rat(5)});
    cases.push_back({AlgebraicReal::from_rational(make_rat(3, 2)), DigitSet(rats({0, 1})), Rat(3)});
    cases.push_back({golden(), DigitSet({Rat(0), make_rat(1, 2), Rat(2)}), make_rat(7, 2)});
    for (auto& c : cases) {
        auto s = enumerate_spectrum(c.q, c.digits, c.bound);
        // no further positions could contribute: eps_min * q^(maxpos+1) > B
        auto naive = naive_spectrum(c.q, c.digits, c.bound, s.max_position);
        REQUIRE(s.points.size() == naive.size());
        for (size_t i = 0; i < naive.size(); ++i)
            CHECK(s.points[i].value.equals(naive[i]));
        // strictly increasing
        for (size_t i = 0; i + 1 < s.points.size(); ++i)
            CHECK(s.points[i].value.compare(s.points[i + 1].value) < 0);
    }
}

TEST_CASE("scale covariance: scaling digits scales points and gaps") {
    auto q = golden();
    Rat t = make_rat(3, 7);
    auto base = enumerate_spectrum(q, DigitSet(rats({0, 1, 2})), Rat(3));
    auto scaled = enumerate_spectrum(q, DigitSet({Rat(0), t, 2 * t}), Rat(3) * t);
    REQUIRE(base.points.size() == scaled.points.size());
    for (size_t i = 0; i < base.points.size(); ++i)
        CHECK(scaled.points[i].value.equals(t * base.points[i].value));
    if (base.points.size() >= 2) {
        auto g1 = gap_stats(base), g2 = gap_stats(scaled);
        CHECK(g2.min_gap.equals(t * g1.min_gap));
        CHECK(g2.max_gap.equals(t * g1.max_gap));
    }
}

TEST_CASE("gap statistics") {
    SECTION("q=2 slice has unit gaps") {
        auto s = enumerate_spectrum(AlgebraicReal::from_rational(Rat(2)), DigitSet(rats({0, 1})), Rat(7));
        auto g = gap_stats(s);
        CHECK(g.gaps.size() == 7);
        CHECK(g.min_gap.compare_rational(Rat(1)) == 0);
        CHECK(g.max_gap.compare_rational(Rat(1)) == 0);
    }
    SECTION("golden slice {0,1,q} has gaps {1, q-1}") {
        auto q = golden();
        auto s = enumerate_spectrum(q, DigitSet(rats({0, 1})), Rat(2));
        auto g = gap_stats(s);
        REQUIRE(g.gaps.size() == 2);
        CHECK(g.gaps[0].compare_rational(Rat(1)) == 0);
        CHECK(g.gaps[1].equals(FieldElement::generator(q) - FieldElement::one(q)));
        CHECK(g.min_gap.str() == "q-1");
        CHECK(g.min_approx == Catch::Approx(0.6180339887).epsilon(1e-8));
    }
    SECTION("one-point slice is an error") {
        auto s = enumerate_spectrum(golden(), DigitSet(rats({0})), Rat(1));
        CHECK_THROWS_AS(gap_stats(s), TooFewPoints);
    }
}

TEST_CASE("min_nonzero_value on the spec examples") {
    SECTION("q=2: everything is an integer, minimum 1") {
        auto r = min_nonzero_value(AlgebraicReal::from_rational(Rat(2)), 1, 5);
        CHECK(r.value.compare_rational(Rat(1)) == 0);
    }
    SECTION("q=3/2, n=3: minimum is 1/4") {
        auto r = min_nonzero_value(AlgebraicReal::from_rational(make_rat(3, 2)), 1, 3);
        CHECK(r.value.compare_rational(make_rat(1, 4)) == 0);
        // witness reproduces the value
        Rat v = 0, qq = make_rat(3, 2), pw = 1;
        for (int j = 0; j < 3; ++j) {
            v += Rat(r.witness[static_cast<size_t>(j)]) * pw;
            pw *= qq;
        }
        CHECK(abs(v) == make_rat(1, 4));
    }
    SECTION("golden, n=3: oracle and branch-and-bound agree") {
        auto q = golden();
        auto ex = min_nonzero_value(q, 1, 3, MinValueBackend::Exhaustive);
        auto bb = min_nonzero_value(q, 1, 3, MinValueBackend::BranchBound);
        CHECK(ex.value.equals(bb.value));
        // the defining relation 1 + q - q^2 = 0 is excluded as an exact zero;
        // the minimum over the 27 vectors is q-1 (frozen from the oracle)
        CHECK(ex.value.sign() > 0);
        CHECK(ex.value.str() == "q-1");
    }
}

TEST_CASE("witnesses evaluate back to the reported minimum") {
    auto q = golden();
    for (int n : {2, 4, 6}) {
        auto r = min_nonzero_value(q, 1, n, MinValueBackend::BranchBound);
        FieldElement v = FieldElement::zero(q);
        FieldElement pw = FieldElement::one(q);
        for (int j = 0; j < n; ++j) {
            if (r.witness[static_cast<size_t>(j)] != 0)
                v = v + Rat(r.witness[static_cast<size_t>(j)]) * pw;
            pw = pw * FieldElement::generator(q);
        }
        CHECK(v.abs().equals(r.value));
    }
}

TEST_CASE("backends agree on small instances") {
    auto q32 = AlgebraicReal::from_rational(make_rat(3, 2));
    auto qg = golden();
    for (int n = 1; n <= 6; ++n) {
        auto a = min_nonzero_value(q32, 1, n, MinValueBackend::Exhaustive);
        auto b = min_nonzero_value(q32, 1, n, MinValueBackend::BranchBound);
        CHECK(a.value.equals(b.value));
        auto c = min_nonzero_value(qg, 1, n, MinValueBackend::Exhaustive);
        auto d = min_nonzero_value(qg, 1, n, MinValueBackend::BranchBound);
        CHECK(c.value.equals(d.value));
    }
    // m = 2 as well
    for (int n = 1; n <= 4; ++n) {
        auto a = min_nonzero_value(qg, 2, n, MinValueBackend::Exhaustive);
        auto b = min_nonzero_value(qg, 2, n, MinValueBackend::BranchBound);
        CHECK(a.value.equals(b.value));
    }
}

TEST_CASE("min_nonzero_value is non-increasing in n") {
    auto q32 = AlgebraicReal::from_rational(make_rat(3, 2));
    auto qg = golden();
    for (auto* q : {&q32, &qg}) {
        std::optional<MinValueResult> prev;
        for (int n = 1; n <= 8; ++n) {
            auto r = min_nonzero_value(*q, 1, n);
            if (prev) CHECK(r.value.compare(prev->value) <= 0);
            prev = r;
        }
    }
}

TEST_CASE("power norms") {
    SECTION("lambda=1, q=2: all norms vanish") {
        auto ns = power_norms(Rat(1), AlgebraicReal::from_rational(Rat(2)), 6);
        for (const auto& e : ns) {
            CHECK(e.norm_exact.is_zero());
            CHECK(e.norm == 0.0);
        }
    }
    SECTION("lambda=1, q=3/2: 1/2, 1/4, 3/8") {
        auto ns = power_norms(Rat(1), AlgebraicReal::from_rational(make_rat(3, 2)), 3);
        REQUIRE(ns.size() == 3);
        CHECK(ns[0].norm_exact.compare_rational(make_rat(1, 2)) == 0);
        CHECK(ns[1].norm_exact.compare_rational(make_rat(1, 4)) == 0);
        CHECK(ns[2].norm_exact.compare_rational(make_rat(3, 8)) == 0);
        CHECK(ns[2].partial_sum == Catch::Approx(0.5 + 0.25 + 0.375).margin(1e-9));
    }
    SECTION("lambda=1, golden: ||q^n|| = q^(-n) for n >= 2") {
        auto q = golden();
        auto ns = power_norms(Rat(1), q, 16);
        auto inv = FieldElement::one(q) / FieldElement::generator(q);
        for (int n = 2; n <= 16; ++n)
            CHECK(ns[static_cast<size_t>(n - 1)].norm_exact.equals(inv.pow(static_cast<unsigned long>(n))));
        CHECK(ns[15].norm < 1e-3);
    }
    SECTION("lambda=0 is rejected") {
        CHECK_THROWS_AS(power_norms(Rat(0), golden(), 3), LambdaZero);
    }
    SECTION("rational lambda") {
        auto ns = power_norms(make_rat(1, 3), AlgebraicReal::from_rational(Rat(3)), 4);
        // (1/3)*3^n = 3^(n-1), integers: all norms 0
        for (const auto& e : ns) CHECK(e.norm_exact.is_zero());
    }
}
