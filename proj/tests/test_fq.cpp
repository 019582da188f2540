#include <doctest.h>

#include <set>
#include <vector>

#include "carlitz/errors.hpp"
#include "carlitz/fq.hpp"

using namespace carlitz;

namespace {

const std::vector<unsigned> kPrimePowers = {2,  3,  4,  5,  7,  8,  9,  11, 13, 16, 17,
                                            19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47,
                                            49, 53, 59, 61, 64};

} // namespace

TEST_CASE("prime power factorization") {
    CHECK(factor_prime_power(2) == std::pair<unsigned, unsigned>{2, 1});
    CHECK(factor_prime_power(4) == std::pair<unsigned, unsigned>{2, 2});
    CHECK(factor_prime_power(8) == std::pair<unsigned, unsigned>{2, 3});
    CHECK(factor_prime_power(27) == std::pair<unsigned, unsigned>{3, 3});
    CHECK(factor_prime_power(49) == std::pair<unsigned, unsigned>{7, 2});
    CHECK(factor_prime_power(64) == std::pair<unsigned, unsigned>{2, 6});
    CHECK(factor_prime_power(61) == std::pair<unsigned, unsigned>{61, 1});
    for (unsigned bad : {0u, 1u, 6u, 10u, 12u, 15u, 24u, 63u, 65u, 100u}) {
        CHECK_THROWS_AS((void)factor_prime_power(bad), Error);
        try {
            (void)factor_prime_power(bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Config);
        }
    }
}

TEST_CASE("field context caching") {
    for (unsigned q : kPrimePowers) {
        auto a = Fq::make(q);
        auto b = Fq::make(q);
        CHECK(a.get() == b.get());
        CHECK(a->q() == q);
        CHECK(a->p() == factor_prime_power(q).first);
        CHECK(a->m() == factor_prime_power(q).second);
    }
}

TEST_CASE("field axioms over every supported q") {
    for (unsigned q : kPrimePowers) {
        auto f = Fq::make(q);
        CAPTURE(q);

        // closure and the abelian group laws, exhaustively
        for (unsigned a = 0; a < q; ++a) {
            FqElem ea = static_cast<FqElem>(a);
            CHECK(f->add(ea, 0) == ea);
            CHECK(f->mul(ea, 1) == ea);
            CHECK(f->mul(ea, 0) == 0);
            CHECK(f->add(ea, f->neg(ea)) == 0);
            for (unsigned b = 0; b < q; ++b) {
                FqElem eb = static_cast<FqElem>(b);
                CHECK(f->is_elem(f->add(ea, eb)));
                CHECK(f->is_elem(f->mul(ea, eb)));
                CHECK(f->add(ea, eb) == f->add(eb, ea));
                CHECK(f->mul(ea, eb) == f->mul(eb, ea));
                CHECK(f->sub(ea, eb) == f->add(ea, f->neg(eb)));
            }
        }

        // associativity and distributivity: exhaustive for small q, else strided
        const unsigned step = q <= 9 ? 1 : 5;
        for (unsigned a = 0; a < q; a += step)
            for (unsigned b = 0; b < q; b += step)
                for (unsigned c = 0; c < q; c += step) {
                    FqElem ea = static_cast<FqElem>(a), eb = static_cast<FqElem>(b),
                           ec = static_cast<FqElem>(c);
                    CHECK(f->add(f->add(ea, eb), ec) == f->add(ea, f->add(eb, ec)));
                    CHECK(f->mul(f->mul(ea, eb), ec) == f->mul(ea, f->mul(eb, ec)));
                    CHECK(f->mul(ea, f->add(eb, ec)) ==
                          f->add(f->mul(ea, eb), f->mul(ea, ec)));
                }

        // multiplicative group: inverses, Lagrange, and Frobenius fixes F_q
        for (unsigned a = 1; a < q; ++a) {
            FqElem ea = static_cast<FqElem>(a);
            CHECK(f->mul(ea, f->inv(ea)) == 1);
            CHECK(f->div(ea, ea) == 1);
            CHECK(f->pow(ea, static_cast<long long>(q) - 1) == 1);
            CHECK(f->pow(ea, q) == ea);
        }

        // Frobenius is additive: (a+b)^p = a^p + b^p
        for (unsigned a = 0; a < q; ++a)
            for (unsigned b = 0; b < q; ++b) {
                FqElem ea = static_cast<FqElem>(a), eb = static_cast<FqElem>(b);
                CHECK(f->pow(f->add(ea, eb), f->p()) ==
                      f->add(f->pow(ea, f->p()), f->pow(eb, f->p())));
            }

        // the encodings 0..q-1 really enumerate q distinct elements
        std::set<FqElem> inverses;
        for (unsigned a = 1; a < q; ++a) inverses.insert(f->inv(static_cast<FqElem>(a)));
        CHECK(inverses.size() == q - 1);
    }
}

TEST_CASE("prime subfield embedding matches integer arithmetic") {
    for (unsigned q : {2u, 3u, 5u, 7u, 9u, 25u}) {
        auto f = Fq::make(q);
        const unsigned p = f->p();
        // encodings 0..p-1 are the prime subfield with mod-p arithmetic
        for (unsigned a = 0; a < p; ++a)
            for (unsigned b = 0; b < p; ++b) {
                CHECK(f->add(static_cast<FqElem>(a), static_cast<FqElem>(b)) ==
                      static_cast<FqElem>((a + b) % p));
                CHECK(f->mul(static_cast<FqElem>(a), static_cast<FqElem>(b)) ==
                      static_cast<FqElem>((a * b) % p));
            }
    }
}

TEST_CASE("negation and minus-one powers") {
    auto f2 = Fq::make(2);
    CHECK(f2->minus_one_pow(0) == 1);
    CHECK(f2->minus_one_pow(1) == 1);
    CHECK(f2->minus_one_pow(7) == 1);
    auto f3 = Fq::make(3);
    CHECK(f3->minus_one_pow(0) == 1);
    CHECK(f3->minus_one_pow(1) == 2);
    CHECK(f3->minus_one_pow(2) == 1);
    CHECK(f3->minus_one_pow(-3) == 2);
    auto f4 = Fq::make(4);
    CHECK(f4->minus_one_pow(5) == 1); // characteristic 2: -1 = 1
    auto f9 = Fq::make(9);
    CHECK(f9->mul(f9->minus_one_pow(1), f9->minus_one_pow(1)) == 1);
}

TEST_CASE("division by zero is a math error") {
    auto f = Fq::make(4);
    CHECK_THROWS_AS((void)f->inv(0), Error);
    try {
        (void)f->div(1, 0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Math);
    }
    CHECK_THROWS_AS((void)f->pow(0, -1), Error);
    CHECK(f->pow(0, 0) == 1);
    CHECK(f->pow(0, 3) == 0);
}

TEST_CASE("from_int validates range") {
    auto f = Fq::make(3);
    CHECK(f->from_int(2) == 2);
    CHECK_THROWS_AS((void)f->from_int(3), Error);
    CHECK_FALSE(f->is_elem(3));
    CHECK(f->is_elem(2));
}

TEST_CASE("binomials mod p follow Lucas reduction") {
    auto f2 = Fq::make(2);
    // binom(n, k) mod 2 = 1 iff k's bits are a subset of n's bits
    CHECK(f2->binom_mod_p(4, 2) == 0);
    CHECK(f2->binom_mod_p(5, 1) == 1);
    CHECK(f2->binom_mod_p(5, 2) == 0);
    CHECK(f2->binom_mod_p(7, 3) == 1);
    CHECK(f2->binom_mod_p(8, 4) == 0);
    auto f3 = Fq::make(3);
    CHECK(f3->binom_mod_p(4, 2) == 0);  // 6 mod 3
    CHECK(f3->binom_mod_p(4, 1) == 1);  // 4 mod 3
    CHECK(f3->binom_mod_p(5, 2) == 1);  // 10 mod 3
    CHECK(f3->binom_mod_p(9, 3) == 0);  // 84 mod 3
    CHECK(f3->binom_mod_p(10, 1) == 1); // 10 mod 3
    auto f25 = Fq::make(25);
    CHECK(f25->binom_mod_p(6, 2) == 0);  // 15 mod 5
    CHECK(f25->binom_mod_p(7, 3) == 0);  // 35 mod 5
    CHECK(f25->binom_mod_p(26, 1) == 1); // 26 mod 5
    // binom(n, 0) = binom(n, n) = 1, and k > n vanishes
    for (unsigned long long n : {0ull, 1ull, 9ull, 31ull}) {
        CHECK(f2->binom_mod_p(n, 0) == 1);
        CHECK(f2->binom_mod_p(n, n) == 1);
        CHECK(f2->binom_mod_p(n, n + 1) == 0);
    }
}

TEST_CASE("extension field modulus is monic of degree m") {
    for (unsigned q : {4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
        auto f = Fq::make(q);
        const auto& mod = f->modulus();
        CHECK(mod.size() == f->m() + 1);
        CHECK(mod.back() == 1);
    }
}
