#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "carlitz/errors.hpp"
#include "carlitz/fq_poly.hpp"
#include "carlitz/laurent.hpp"

using namespace carlitz;

namespace {

LaurentSeries random_series(const FqPtr& f, std::mt19937_64& rng, std::int64_t lo,
                            std::int64_t hi) {
    std::uniform_int_distribution<unsigned> coeff(0, f->q() - 1);
    std::vector<FqElem> c(static_cast<std::size_t>(hi - lo));
    for (auto& x : c) x = static_cast<FqElem>(coeff(rng));
    LaurentSeries s = LaurentSeries::zero(f, hi);
    for (std::int64_t e = lo; e < hi; ++e)
        s = s + LaurentSeries::monomial(f, c[static_cast<std::size_t>(e - lo)], e, hi);
    return s;
}

} // namespace

TEST_CASE("window semantics of zero, monomial, coeff") {
    auto f = Fq::make(3);
    auto z = LaurentSeries::zero(f, 7);
    CHECK(z.is_zero());
    CHECK(z.val() == 7);
    CHECK(z.prec() == 7);
    CHECK_FALSE(z.valuation().has_value());

    auto m = LaurentSeries::monomial(f, 2, -3, 5);
    CHECK_FALSE(m.is_zero());
    CHECK(m.val() == -3);
    CHECK(m.prec() == 5);
    REQUIRE(m.valuation().has_value());
    CHECK(*m.valuation() == -3);
    CHECK(m.coeff(-3) == 2);
    CHECK(m.coeff(0) == 0);
    CHECK(m.coeff(-10) == 0);   // below the window: provably zero
    CHECK(m.knows(4));
    CHECK_FALSE(m.knows(5));
    CHECK_THROWS_AS((void)m.coeff(5), Error); // at/after prec: unknown

    // a monomial at or past prec collapses to zero-to-precision
    auto collapsed = LaurentSeries::monomial(f, 1, 9, 9);
    CHECK(collapsed.is_zero());
}

TEST_CASE("theta embedding") {
    auto f = Fq::make(3);
    // theta = -w^(-2): theta^e = (-1)^e w^(-2e)
    auto t1 = LaurentSeries::theta_power(f, 1, 10);
    REQUIRE(t1.valuation().has_value());
    CHECK(*t1.valuation() == -2);
    CHECK(t1.coeff(-2) == 2); // -1 mod 3
    auto t2 = LaurentSeries::theta_power(f, 2, 10);
    CHECK(*t2.valuation() == -4);
    CHECK(t2.coeff(-4) == 1);
    auto tm1 = LaurentSeries::theta_power(f, -1, 10);
    CHECK((t1 * tm1).coeff(0) == 1);

    FqPoly a(f, {1, 0, 2}); // 2 theta^2 + 1
    auto s = LaurentSeries::from_poly(a, 8);
    CHECK(s.coeff(-4) == 2); // 2 * (+w^-4)
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(-2) == 0);
}

TEST_CASE("ring laws and precision rules on random series") {
    std::mt19937_64 rng(0xc0ffee);
    for (unsigned q : {2u, 3u, 4u, 5u, 9u}) {
        auto f = Fq::make(q);
        for (int rep = 0; rep < 20; ++rep) {
            auto a = random_series(f, rng, -4, 12);
            auto b = random_series(f, rng, -2, 9);
            auto c = random_series(f, rng, 0, 10);

            auto ab = a + b;
            CHECK(ab.prec() == 9); // additive window: min of precisions
            CHECK(ab == b + a);
            CHECK((a - b) + b == a.truncated(9));

            // multiplicative window: val_f + val_g, min(P_f + v_g, P_g + v_f)
            auto prod = a * b;
            CHECK(prod.val() == a.val() + b.val());
            CHECK(prod.prec() ==
                  std::min(a.prec() + b.val(), b.prec() + a.val()));
            CHECK(prod == b * a);

            // distributivity, compared on the common window
            auto lhs = a * (b + c);
            auto rhs = a * b + a * c;
            auto rep2 = agree_to_precision(lhs, rhs);
            CHECK(rep2.equal);

            // associativity
            auto p1 = (a * b) * c;
            auto p2 = a * (b * c);
            auto rep3 = agree_to_precision(p1, p2);
            CHECK(rep3.equal);
        }
    }
}

TEST_CASE("geometric series inverse") {
    auto f = Fq::make(2);
    auto one = LaurentSeries::one(f, 40);
    auto g = one - LaurentSeries::monomial(f, 1, 1, 40); // 1 - w
    auto inv = g.inverse();
    for (std::int64_t e = 0; e < 40; ++e) CHECK(inv.coeff(e) == 1);
    auto back = g * inv;
    auto rep = agree_to_precision(back, one);
    CHECK(rep.equal);
    CHECK_FALSE(rep.vacuous);
}

TEST_CASE("inverse precision and random inverses") {
    std::mt19937_64 rng(42);
    for (unsigned q : {3u, 4u}) {
        auto f = Fq::make(q);
        for (int rep = 0; rep < 10; ++rep) {
            auto a = random_series(f, rng, -3, 15);
            if (a.is_zero() || !a.valuation() || *a.valuation() != a.val()) {
                a = a + LaurentSeries::monomial(f, 1, -3, 15); // force a visible lead
            }
            auto inv = a.inverse();
            CHECK(inv.val() == -a.val());
            CHECK(inv.prec() == a.prec() - 2 * a.val());
            auto prod = a * inv;
            auto one = LaurentSeries::one(f, prod.prec());
            CHECK(agree_to_precision(prod, one).equal);
        }
    }
    auto f = Fq::make(3);
    CHECK_THROWS_AS((void)LaurentSeries::zero(f, 5).inverse(), Error);
}

TEST_CASE("integer powers") {
    auto f = Fq::make(3);
    std::mt19937_64 rng(7);
    auto a = random_series(f, rng, -2, 10) + LaurentSeries::monomial(f, 1, -2, 10);
    if (*a.valuation() != -2) a = a + LaurentSeries::monomial(f, 1, -2, 10);
    auto sq = a.pow(2);
    CHECK(agree_to_precision(sq, a * a).equal);
    auto cube = a.pow(3);
    CHECK(agree_to_precision(cube, a * a * a).equal);
    CHECK(a.pow(1) == a);
    auto p0 = a.pow(0);
    CHECK(p0.coeff(0) == 1);
    auto inv2 = a.pow(-2);
    CHECK(agree_to_precision(inv2 * sq, LaurentSeries::one(f, 30)).equal);
}

TEST_CASE("frobenius twist") {
    auto f = Fq::make(3);
    auto a = LaurentSeries::monomial(f, 2, 3, 11) + LaurentSeries::monomial(f, 1, -1, 11);
    auto t = a.twist(1);
    // exponents and the window scale by q; coefficients are cubed
    CHECK(t.val() == -3);
    CHECK(t.prec() == 33);
    CHECK(t.coeff(9) == f->pow(2, 3));
    CHECK(t.coeff(-3) == 1);
    CHECK(t.coeff(3) == 0);
    // twisting commutes with multiplication
    std::mt19937_64 rng(3);
    auto x = random_series(f, rng, 0, 8);
    auto y = random_series(f, rng, 0, 8);
    CHECK(agree_to_precision((x * y).twist(1), x.twist(1) * y.twist(1)).equal);
    // twist respects addition
    CHECK(agree_to_precision((x + y).twist(2), x.twist(2) + y.twist(2)).equal);
}

TEST_CASE("multiplication by theta powers") {
    for (unsigned q : {2u, 3u, 5u}) {
        auto f = Fq::make(q);
        const std::int64_t qm1 = f->q() - 1;
        auto a = LaurentSeries::monomial(f, 1, 4, 20);
        for (std::int64_t e : {1, 2, 3, -2}) {
            auto shifted = a.mul_theta_pow(e);
            // theta^e = (-1)^e w^(-e(q-1))
            CHECK(shifted.val() == 4 - e * qm1);
            CHECK(shifted.coeff(4 - e * qm1) == f->minus_one_pow(e));
        }
        // against the exact embedding
        auto direct = a * LaurentSeries::theta_power(f, 3, 30);
        CHECK(agree_to_precision(direct, a.mul_theta_pow(3)).equal);
    }
}

TEST_CASE("exact polynomial multiplication preserves information") {
    auto f = Fq::make(3);
    std::mt19937_64 rng(11);
    auto s = random_series(f, rng, -2, 14);
    FqPoly a(f, {1, 2, 0, 1}); // theta^3 + 2 theta + 1
    auto fast = mul_by_exact_poly(s, a);
    // reference: multiply by the embedded polynomial at ample precision
    auto ref = s * LaurentSeries::from_poly(a, 40);
    auto rep = agree_to_precision(fast, ref);
    CHECK(rep.equal);
    CHECK_FALSE(rep.vacuous);
    // the exact product keeps the full relative window: prec shifts with the
    // degree term just like the valuation does
    CHECK(fast.val() == s.val() - 3 * 2);
    CHECK(fast.prec() == s.prec() - 3 * 2);
    // multiplying by zero polynomial gives exact zero at huge precision
    auto z = mul_by_exact_poly(s, FqPoly::zero(f));
    CHECK(z.is_zero());
}

TEST_CASE("agreement reports") {
    auto f = Fq::make(2);
    auto a = LaurentSeries::monomial(f, 1, 2, 10);
    auto b = LaurentSeries::monomial(f, 1, 2, 12);
    auto rep = agree_to_precision(a, b);
    CHECK(rep.equal);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.checked_to == 10);

    auto c = b + LaurentSeries::monomial(f, 1, 7, 12);
    auto rep2 = agree_to_precision(a, c);
    CHECK_FALSE(rep2.equal);
    REQUIRE(rep2.mismatch.has_value());
    CHECK(*rep2.mismatch == 7);

    // windows that never overlap past both valuations are vacuous
    auto lowprec = LaurentSeries::zero(f, -5);
    auto rep3 = agree_to_precision(lowprec, a);
    CHECK(rep3.vacuous);

    // differing fields are a config error
    auto g = Fq::make(3);
    CHECK_THROWS_AS((void)agree_to_precision(a, LaurentSeries::one(g, 5)), Error);
}

TEST_CASE("sector classification") {
    auto f = Fq::make(4); // q - 1 = 3
    auto pure0 = LaurentSeries::monomial(f, 1, -3, 9) + LaurentSeries::monomial(f, 1, 6, 9);
    CHECK(pure0.sector() == 0);
    auto pure2 = LaurentSeries::monomial(f, 1, 2, 9) + LaurentSeries::monomial(f, 1, 5, 9);
    CHECK(pure2.sector() == 2);
    auto mixed = pure0 + pure2;
    CHECK(mixed.sector() == -1);
    CHECK(LaurentSeries::zero(f, 4).sector() == 0);
    // twisting by Frobenius preserves the sector (q^n = 1 mod q-1)
    CHECK(pure2.twist(1).sector() == 2);
    // theta multiplication preserves it too
    CHECK(pure2.mul_theta_pow(3).sector() == 2);
}

TEST_CASE("vanishing order helper") {
    auto f = Fq::make(2);
    auto a = LaurentSeries::monomial(f, 1, 5, 9);
    CHECK(vanishes_to(a) == 5);
    CHECK(vanishes_to(LaurentSeries::zero(f, 9)) == 9);
    CHECK(vanishes_to(a - a) == 9);
}

TEST_CASE("truncation") {
    auto f = Fq::make(3);
    auto a = LaurentSeries::monomial(f, 1, 0, 12) + LaurentSeries::monomial(f, 2, 8, 12);
    auto t = a.truncated(8);
    CHECK(t.prec() == 8);
    CHECK(t.coeff(0) == 1);
    CHECK_THROWS_AS((void)t.coeff(8), Error);
    // truncating below the valuation leaves zero-to-precision
    auto z = a.truncated(-3);
    CHECK(z.is_zero());
    CHECK(z.prec() == -3);
}
