#include <doctest.h>

#include <cstdint>
#include <vector>

#include "carlitz/errors.hpp"
#include "carlitz/motive.hpp"

using namespace carlitz;

namespace {

VerificationReport run_general(unsigned q, const IndexTuple& idx,
                               const std::vector<unsigned>& alpha_is_theta,
                               std::int64_t tdeg, std::int64_t prec) {
    auto f = Fq::make(q);
    std::vector<BiPoly> alphas;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k < alpha_is_theta.size() && alpha_is_theta[k])
            alphas.push_back(BiPoly::monomial(f, f->one(), 1, 0));
        else
            alphas.push_back(BiPoly::constant(f, f->one()));
    }
    return MotiveSystem::general(f, idx, alphas, tdeg, prec).verify();
}

} // namespace

TEST_CASE("trivialization holds for single-index systems") {
    for (unsigned q : {2u, 3u}) {
        auto f = Fq::make(q);
        for (unsigned n : {1u, 2u}) {
            auto sys = MotiveSystem::depth_one(f, {BiPoly::constant(f, f->one())}, n, 12, 120);
            CHECK(sys.dim() == 2);
            auto rep = sys.verify();
            CAPTURE(q);
            CAPTURE(n);
            CHECK(rep.status == CheckStatus::Pass);
            CHECK(rep.det.ok);
            CHECK(rep.det.exponent == n);
            CHECK(rep.tdeg_checked >= 10);
            CHECK(rep.prec_checked >= 60);
            for (const auto& e : rep.entries) CHECK(e.status == CheckStatus::Pass);
        }
        // weight above q (carries a nontrivial interpolation polynomial)
        auto sys = MotiveSystem::depth_one(f, {BiPoly::constant(f, f->one())},
                                           q + 1, 12, 160);
        CHECK(sys.verify().status == CheckStatus::Pass);
    }
}

TEST_CASE("trivialization holds with polynomial coefficients") {
    // alpha = theta satisfies the norm condition for n = 1 whenever q >= 2
    for (unsigned q : {2u, 3u}) {
        auto f = Fq::make(q);
        auto th = BiPoly::monomial(f, f->one(), 1, 0);
        auto sys = MotiveSystem::depth_one(f, {th}, 1, 10, 120);
        auto rep = sys.verify();
        CHECK(rep.status == CheckStatus::Pass);
        // depth-one with two coefficient polynomials: a 3 x 3 system
        auto sys3 = MotiveSystem::depth_one(f, {BiPoly::constant(f, f->one()), th}, 1,
                                            10, 120);
        CHECK(sys3.dim() == 3);
        CHECK(sys3.verify().status == CheckStatus::Pass);
    }
}

TEST_CASE("trivialization holds for multi-index systems") {
    CHECK(run_general(2, {1}, {}, 12, 140).status == CheckStatus::Pass);
    CHECK(run_general(3, {1}, {}, 12, 140).status == CheckStatus::Pass);
    CHECK(run_general(3, {1, 1}, {}, 12, 150).status == CheckStatus::Pass);
    CHECK(run_general(3, {2}, {}, 12, 140).status == CheckStatus::Pass);
    CHECK(run_general(4, {1, 1}, {}, 12, 150).status == CheckStatus::Pass);
    CHECK(run_general(2, {2, 1}, {}, 12, 160).status == CheckStatus::Pass);
}

TEST_CASE("phi matrix shape and determinant") {
    auto f = Fq::make(3);
    auto sys = MotiveSystem::general(f, {2, 1},
                                     {BiPoly::constant(f, 1), BiPoly::constant(f, 1)},
                                     10, 140);
    REQUIRE(sys.dim() == 3);
    // strictly upper entries are absent; diagonal carries (t-theta) powers
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) CHECK_FALSE(sys.phi(i, j).has_value());
    REQUIRE(sys.phi(0, 0).has_value());
    CHECK(sys.phi(0, 0)->tpow == 3); // weight n_1 + n_2
    auto rep = sys.verify();
    CHECK(rep.det.ok);
    CHECK(rep.det.exponent == 4); // sum of diagonal powers: (n1+n2) + n2 + 0
    CHECK(rep.det.unit != 0);
    // the twisted (0,0) entry is exactly (t - theta^q)^3
    CHECK(sys.phi_twist1(0, 0) == BiPoly::t_minus_theta_qpow(f, 1).pow(3));
}

TEST_CASE("every stored psi coefficient is corruption-sensitive") {
    auto f = Fq::make(3);
    auto sys = MotiveSystem::general(f, {1, 1},
                                     {BiPoly::constant(f, 1), BiPoly::constant(f, 1)},
                                     8, 110);
    REQUIRE(sys.verify().status == CheckStatus::Pass);
    for (std::size_t i = 0; i < sys.dim(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (!sys.psi(i, j).has_value()) continue;
            auto fresh = MotiveSystem::general(
                f, {1, 1}, {BiPoly::constant(f, 1), BiPoly::constant(f, 1)}, 8, 110);
            const auto& c0 = fresh.psi(i, j)->coeff(0);
            const std::int64_t where = (c0.is_zero() ? c0.prec() - 1 : c0.val() + 1);
            fresh.corrupt_psi(i, j, 0, where);
            auto rep = fresh.verify();
            CAPTURE(i);
            CAPTURE(j);
            CHECK(rep.status == CheckStatus::Fail);
            bool found = false;
            for (const auto& e : rep.entries)
                if (e.status == CheckStatus::Fail) {
                    found = true;
                    CHECK(e.mismatch.has_value());
                    CHECK(e.mismatch_tdeg.has_value());
                }
            CHECK(found);
        }
    }
}

TEST_CASE("corruption outside the certified window is rejected") {
    auto f = Fq::make(2);
    auto sys = MotiveSystem::depth_one(f, {BiPoly::constant(f, 1)}, 1, 8, 100);
    CHECK_THROWS_AS(sys.corrupt_psi(0, 0, 0, 1 << 20), Error);
    CHECK_THROWS_AS(sys.corrupt_psi(0, 0, 100, 5), Error); // t-degree out of range
}

TEST_CASE("raising precision never flips a passing system") {
    auto f = Fq::make(3);
    for (std::int64_t prec : {100, 140, 180}) {
        auto rep = MotiveSystem::depth_one(f, {BiPoly::constant(f, 1)}, 2, 10, prec)
                       .verify();
        CHECK(rep.status == CheckStatus::Pass);
        CHECK(rep.prec_checked >= prec / 2);
    }
}

TEST_CASE("norm condition violations are configuration errors") {
    auto f = Fq::make(2);
    auto th2 = BiPoly::monomial(f, f->one(), 2, 0); // deg_theta 2, (q-1)*2 >= 1*q
    CHECK_THROWS_AS(MotiveSystem::depth_one(f, {th2}, 1, 8, 80), Error);
    try {
        MotiveSystem::depth_one(f, {th2}, 1, 8, 80);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
    }
    // empty or mismatched alpha lists
    CHECK_THROWS_AS(MotiveSystem::general(f, {1, 1}, {BiPoly::constant(f, 1)}, 8, 80),
                    Error);
}
