#include "carlitz/special.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "carlitz/errors.hpp"
#include "carlitz/linalg.hpp"

namespace carlitz {

namespace {

constexpr std::int64_t kBig = std::int64_t(1) << 55;

std::int64_t clamp_big(__int128 x) {
    if (x > kBig) return kBig;
    if (x < -kBig) return -kBig;
    return static_cast<std::int64_t>(x);
}

// q^i clamped at kBig.
std::int64_t qpow_big(std::int64_t q, unsigned i) {
    __int128 r = 1;
    for (unsigned k = 0; k < i; ++k) {
        r *= q;
        if (r > kBig) return kBig;
    }
    return static_cast<std::int64_t>(r);
}

// q + q^2 + ... + q^i clamped at kBig (0 for i = 0).
std::int64_t qgeom_big(std::int64_t q, unsigned i) {
    __int128 r = 0, p = 1;
    for (unsigned k = 1; k <= i; ++k) {
        p *= q;
        r += p;
        if (r > kBig) return kBig;
    }
    return static_cast<std::int64_t>(r);
}

} // namespace

void check_index_tuple(const IndexTuple& idx) {
    if (idx.empty()) throw fail_config("index tuple must have depth >= 1");
    for (unsigned n : idx)
        if (n < 1) throw fail_config("index tuple entries must be >= 1");
}

bool is_even(const FqPtr& f, unsigned n) { return n % (f->q() - 1) == 0; }

FqPoly d_factor(const FqPtr& f, unsigned i) {
    FqPoly acc = FqPoly::constant(f, f->one());
    if (i == 0) return acc;
    if (qpow_big(f->q(), i) > (std::int64_t(1) << 20))
        throw fail_resource("d_factor exponent overflow");
    unsigned qi = static_cast<unsigned>(qpow_big(f->q(), i));
    for (unsigned j = 0; j < i; ++j) {
        unsigned qj = static_cast<unsigned>(qpow_big(f->q(), j));
        FqPoly factor = FqPoly::monomial(f, f->one(), qi) -
                        FqPoly::monomial(f, f->one(), qj);
        acc = acc * factor;
    }
    return acc;
}

FqPoly carlitz_factorial(const FqPtr& f, unsigned n) {
    if (n < 1) throw fail_config("carlitz factorial needs n >= 1");
    FqPoly acc = FqPoly::constant(f, f->one());
    unsigned rest = n - 1;
    unsigned i = 0;
    while (rest > 0) {
        unsigned digit = rest % static_cast<unsigned>(f->q());
        rest /= static_cast<unsigned>(f->q());
        if (digit > 0) acc = acc * d_factor(f, i).pow(digit);
        ++i;
    }
    return acc;
}

LaurentSeries power_sum(const FqPtr& f, unsigned i, unsigned n, std::int64_t prec,
                        std::int64_t cap) {
    if (n < 1) throw fail_config("power sum needs weight >= 1");
    const std::int64_t qm1 = f->q() - 1;
    std::int64_t count = qpow_big(f->q(), i);
    if (count > cap)
        throw fail_resource("power sum needs " + std::to_string(count) +
                            " monic polynomials, above the cap " + std::to_string(cap));
    // Every summand has w-valuation exactly n*i*(q-1).
    std::int64_t lead = static_cast<std::int64_t>(n) * i * qm1;
    if (lead >= prec) return LaurentSeries::zero(f, prec);
    LaurentSeries acc = LaurentSeries::zero(f, prec);
    std::int64_t p_emb = prec - static_cast<std::int64_t>(n + 1) * i * qm1;
    std::vector<FqElem> digits(i, 0);
    while (true) {
        FqPoly a = FqPoly::monomial(f, f->one(), i);
        for (unsigned j = 0; j < i; ++j)
            if (digits[j] != 0) a = a + FqPoly::monomial(f, digits[j], j);
        LaurentSeries inv = LaurentSeries::from_poly(a, p_emb).inverse();
        acc = acc + inv.pow(n);
        // odometer over the q^i lower coefficient tuples
        unsigned j = 0;
        while (j < i) {
            if (digits[j] + 1 < static_cast<int>(f->q())) {
                ++digits[j];
                break;
            }
            digits[j] = 0;
            ++j;
        }
        if (j == i) break;
    }
    return acc.truncated(prec);
}

std::int64_t power_sum_val_floor(const FqPtr& f, unsigned i, unsigned n) {
    const std::int64_t qm1 = f->q() - 1;
    return clamp_big(static_cast<__int128>(qm1) *
                     (static_cast<__int128>(n) * i + qpow_big(f->q(), i) - 1));
}

unsigned zeta_cutoff(const FqPtr& f, unsigned n1, std::int64_t prec) {
    unsigned I = 0;
    while (power_sum_val_floor(f, I + 1, n1) < prec) {
        ++I;
        if (I > 64) throw fail_resource("zeta cutoff did not stabilize");
    }
    return I;
}

LaurentSeries mzv(const FqPtr& f, const IndexTuple& idx, std::int64_t prec, std::int64_t cap) {
    check_index_tuple(idx);
    const unsigned d = static_cast<unsigned>(idx.size());
    const unsigned I = zeta_cutoff(f, idx[0], prec);
    // layer d: G_d(i) = S_i(n_d); layer l: G_l(i) = S_i(n_l) * sum_{i' < i} G_{l+1}(i').
    std::vector<LaurentSeries> prefix; // running prefix sums of the current layer
    for (unsigned layer = d; layer >= 1; --layer) {
        std::vector<LaurentSeries> next;
        next.reserve(I + 1);
        LaurentSeries run = LaurentSeries::zero(f, prec);
        for (unsigned i = 0; i <= I; ++i) {
            LaurentSeries g = power_sum(f, i, idx[layer - 1], prec, cap);
            if (layer < d) {
                if (i == 0) g = LaurentSeries::zero(f, prec);
                else g = g * prefix[i - 1];
            }
            run = run + g;
            next.push_back(run);
        }
        prefix = std::move(next);
        if (layer == 1) break;
    }
    return prefix[I].truncated(prec);
}

LaurentSeries mzv_bruteforce_oracle(const FqPtr& f, const IndexTuple& idx, unsigned maxdeg,
                                    std::int64_t prec, std::int64_t cap) {
    check_index_tuple(idx);
    const unsigned d = static_cast<unsigned>(idx.size());
    if (d > maxdeg + 1) return LaurentSeries::zero(f, prec);
    // monics by degree
    std::vector<std::vector<FqPoly>> monics(maxdeg + 1);
    std::int64_t total = 0;
    for (unsigned e = 0; e <= maxdeg; ++e) {
        std::int64_t cnt = qpow_big(f->q(), e);
        total += cnt;
        if (total > cap) throw fail_resource("oracle enumeration above the cap");
        std::vector<FqElem> digits(e, 0);
        while (true) {
            FqPoly a = FqPoly::monomial(f, f->one(), e);
            for (unsigned j = 0; j < e; ++j)
                if (digits[j] != 0) a = a + FqPoly::monomial(f, digits[j], j);
            monics[e].push_back(a);
            unsigned j = 0;
            while (j < e) {
                if (digits[j] + 1 < static_cast<int>(f->q())) { ++digits[j]; break; }
                digits[j] = 0;
                ++j;
            }
            if (j == e) break;
        }
    }
    const std::int64_t qm1 = f->q() - 1;
    // reciprocal powers, cached per (degree, index, weight); map nodes are
    // stable, so the references handed out below survive later insertions
    std::map<std::tuple<unsigned, std::size_t, unsigned>, LaurentSeries> cache;
    auto recip_pow = [&](unsigned e, std::size_t k, unsigned n) -> const LaurentSeries& {
        auto key = std::make_tuple(e, k, n);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::int64_t p_emb = prec - static_cast<std::int64_t>(n + 1) * e * qm1;
        LaurentSeries v = p_emb <= -static_cast<std::int64_t>(e) * qm1
                              ? LaurentSeries::zero(f, prec)
                              : LaurentSeries::from_poly(monics[e][k], p_emb).inverse().pow(n);
        return cache.emplace(key, v.prec() >= prec ? v.truncated(prec) : v).first->second;
    };
    LaurentSeries acc = LaurentSeries::zero(f, prec);
    // tuples of monics with strictly decreasing degrees
    std::vector<std::pair<unsigned, std::size_t>> pick(d);
    auto rec = [&](auto&& self, unsigned layer, int maxd) -> void {
        if (layer == d) {
            LaurentSeries term = recip_pow(pick[0].first, pick[0].second, idx[0]);
            for (unsigned l = 1; l < d; ++l)
                term = term * recip_pow(pick[l].first, pick[l].second, idx[l]);
            acc = acc + term;
            return;
        }
        for (int e = static_cast<int>(d - layer) - 1; e <= maxd; ++e) {
            for (std::size_t k = 0; k < monics[static_cast<unsigned>(e)].size(); ++k) {
                pick[layer] = {static_cast<unsigned>(e), k};
                self(self, layer + 1, e - 1);
            }
        }
    };
    rec(rec, 0, static_cast<int>(maxdeg));
    return acc.truncated(prec);
}

LaurentSeries pi_carlitz(const FqPtr& f, std::int64_t prec) {
    const std::int64_t qm1 = f->q() - 1;
    // (-theta)^(q/(q-1)) = w^(-q); each factor is (1 - theta^(1-q^i))^(-1)
    // = (1 - w^((q^i - 1)(q-1)))^(-1) in every characteristic.
    std::int64_t rel = prec + f->q(); // window after shifting by w^(-q)
    LaurentSeries acc = LaurentSeries::one(f, rel);
    for (unsigned i = 1;; ++i) {
        std::int64_t e = clamp_big(static_cast<__int128>(qpow_big(f->q(), i) - 1) * qm1);
        if (e >= rel) break;
        LaurentSeries factor =
            LaurentSeries::one(f, rel) - LaurentSeries::monomial(f, f->one(), e, rel);
        acc = acc * factor.inverse();
    }
    return (acc * LaurentSeries::monomial(f, f->one(), -static_cast<std::int64_t>(f->q()), prec))
        .truncated(prec);
}

TateElem omega_shifted(const FqPtr& f, unsigned i, std::int64_t tdeg, std::int64_t prec) {
    const std::int64_t qm1 = f->q() - 1;
    if (qpow_big(f->q(), i + 1) >= kBig) throw fail_resource("omega shift too deep");
    TateElem acc = TateElem::one(f, tdeg, prec);
    for (unsigned j = i + 1;; ++j) {
        std::int64_t e = clamp_big(static_cast<__int128>(qm1) * qpow_big(f->q(), j));
        if (e >= prec) break;
        // factor 1 - t/theta^(q^j) = 1 + w^((q-1) q^j) t
        std::vector<LaurentSeries> fac;
        fac.reserve(static_cast<std::size_t>(tdeg + 1));
        fac.push_back(LaurentSeries::one(f, prec));
        if (tdeg >= 1) fac.push_back(LaurentSeries::monomial(f, f->one(), e, e + prec));
        for (std::int64_t r = 2; r <= tdeg; ++r) fac.push_back(LaurentSeries::zero(f, prec));
        acc = acc * TateElem(f, tdeg, std::move(fac), std::nullopt);
    }
    // multiply by (-theta)^(-q/(q-1)) = w^q and normalize the windows
    LaurentSeries unit = LaurentSeries::monomial(f, f->one(), f->q(), f->q() + prec);
    std::vector<LaurentSeries> out;
    out.reserve(static_cast<std::size_t>(tdeg + 1));
    for (std::int64_t r = 0; r <= tdeg; ++r) out.push_back((acc.coeff(r) * unit).truncated(prec));
    std::int64_t qi1 = qpow_big(f->q(), i + 1);
    // exact coefficient valuation: q + q^(i+r+1) - q^(i+1)
    ValBound b = ValBound::with_geometric(f->q(), f->q(),
                                          clamp_big(static_cast<__int128>(qm1) * qi1),
                                          f->q() - qi1, qi1, 1, 0);
    return TateElem(f, tdeg, std::move(out), b);
}

TateElem omega(const FqPtr& f, std::int64_t tdeg, std::int64_t prec) {
    return omega_shifted(f, 0, tdeg, prec);
}

namespace {

// Coefficient-valuation bound of Omega_i^n (n-fold min-plus of the exact
// Omega_i bound).
ValBound omega_pow_bound(const FqPtr& f, unsigned i, unsigned n) {
    const std::int64_t qm1 = f->q() - 1;
    std::int64_t qi1 = qpow_big(f->q(), i + 1);
    ValBound b1 = ValBound::with_geometric(f->q(), f->q(),
                                           clamp_big(static_cast<__int128>(qm1) * qi1),
                                           f->q() - qi1, qi1, 1, 0);
    ValBound bn = b1;
    for (unsigned k = 1; k < n; ++k) bn = ValBound::min_plus(bn, b1);
    return bn;
}

// Omega_i^n evaluated at t = theta^(q^N), certified to precision >= pout.
// The truncation order m is chosen from the tail bound first; the coefficient
// window then absorbs the largest head shift m*(q-1)*q^N.
LaurentSeries omega_pow_eval(const FqPtr& f, unsigned i, unsigned n, unsigned N,
                             std::int64_t pout) {
    const std::int64_t qm1 = f->q() - 1;
    const std::int64_t slope = clamp_big(static_cast<__int128>(qm1) * qpow_big(f->q(), N));
    ValBound bn = omega_pow_bound(f, i, n);
    for (std::int64_t m = 8; m <= 1024; m *= 2) {
        if (bn.inf_minus_slope(m + 1, slope) < pout) continue;
        std::int64_t wp = pout + m * slope + 8;
        return omega_shifted(f, i, m, wp).pow(n).eval_theta_qpow(N);
    }
    throw fail_inconclusive("could not certify the evaluation tail of the shifted product");
}

// C_i = (Omega^n)^(i) at t = theta: equals w^(n q (q^i - 1)) * Omega_i^n(theta).
LaurentSeries omega_pow_frob_at_theta(const FqPtr& f, unsigned i, unsigned n,
                                      std::int64_t pout) {
    LaurentSeries v = omega_pow_eval(f, i, n, 0, pout);
    std::int64_t shift =
        clamp_big(static_cast<__int128>(n) * f->q() * (qpow_big(f->q(), i) - 1));
    if (shift == 0) return v;
    return v * LaurentSeries::monomial(f, f->one(), shift, shift + v.prec());
}

// Valuation floor of the depth-j factor of the (i_1 > ... > i_d) term:
//   n (q-1)(q + ... + q^i) - (q-1) deg_theta(alpha) q^i.
std::int64_t mcpl_cost(const FqPtr& f, unsigned n, int deg_theta, unsigned i) {
    const std::int64_t qm1 = f->q() - 1;
    const std::int64_t dth = deg_theta > 0 ? deg_theta : 0;
    // cost(0) = -qm1*dth and step k adds qm1 * q^(k-1) * (n q - dth (q-1)).
    // Accumulating increments (instead of subtracting two independently
    // clamped terms) keeps the sign right when the powers saturate.
    __int128 cost = -static_cast<__int128>(qm1) * dth;
    const __int128 bracket =
        static_cast<__int128>(n) * f->q() - static_cast<__int128>(dth) * qm1;
    __int128 p = 1; // q^(k-1), saturated
    for (unsigned k = 1; k <= i; ++k) {
        cost += static_cast<__int128>(qm1) * p * bracket;
        if (cost > kBig) return kBig;
        if (cost < -kBig) return -kBig;
        p = std::min<__int128>(p * f->q(), kBig);
    }
    return clamp_big(cost);
}

struct McplPlan {
    unsigned top;            // include tuples with i_1 <= top
    std::int64_t slack;      // extra working precision above the target
    std::int64_t tail_floor; // every dropped term is O(w^tail_floor), each t-degree
};

// `extra_dip` is any additional per-term valuation loss not visible in the
// cost function (e.g. t-degrees consumed by a later evaluation).
McplPlan plan_mcpl(const FqPtr& f, const std::vector<BiPoly>& alphas, const IndexTuple& idx,
                   std::int64_t prec, std::int64_t extra_dip) {
    const unsigned d = static_cast<unsigned>(idx.size());
    std::vector<std::int64_t> cmin(d, 0);
    std::int64_t slack = 8;
    for (unsigned j = 0; j < d; ++j) {
        std::int64_t m = 0;
        for (unsigned i = 0; i <= 96; ++i)
            m = std::min(m, mcpl_cost(f, idx[j], alphas[j].deg_theta(), i));
        cmin[j] = m;
        slack += std::max<std::int64_t>(0, -m);
    }
    std::int64_t rest = 0;
    for (unsigned j = 1; j < d; ++j) rest += cmin[j];
    unsigned top = d - 1;
    auto dropped_floor = [&](unsigned I) {
        std::int64_t m = kBig;
        for (unsigned i = I + 1; i <= I + 96; ++i)
            m = std::min(m, mcpl_cost(f, idx[0], alphas[0].deg_theta(), i));
        return clamp_big(static_cast<__int128>(m) + rest - extra_dip);
    };
    while (dropped_floor(top) < prec) {
        ++top;
        if (top > 64) throw fail_resource("polylogarithm cutoff did not stabilize");
    }
    return McplPlan{top, slack, dropped_floor(top)};
}

void check_norm_condition(const FqPtr& f, const std::vector<BiPoly>& alphas,
                          const IndexTuple& idx) {
    const std::int64_t qm1 = f->q() - 1;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (alphas[j].is_zero()) throw fail_config("alpha polynomials must be nonzero");
        if (qm1 * alphas[j].deg_theta() >= static_cast<std::int64_t>(idx[j]) * f->q())
            throw fail_config("norm condition violated: (q-1) deg_theta(alpha) < n q required");
    }
}

} // namespace

TateElem mcpl(const FqPtr& f, const std::vector<BiPoly>& alphas, const IndexTuple& idx,
              std::int64_t tdeg, std::int64_t prec) {
    if (alphas.size() != idx.size())
        throw fail_config("alpha tuple and index tuple must have the same depth");
    if (idx.empty()) return TateElem::one(f, tdeg, prec);
    check_index_tuple(idx);
    check_norm_condition(f, alphas, idx);
    const std::int64_t qm1 = f->q() - 1;
    const unsigned d = static_cast<unsigned>(idx.size());
    McplPlan plan = plan_mcpl(f, alphas, idx, prec, 0);
    const std::int64_t wp = prec + plan.slack;
    // denominator prefix products, shared across layers of equal weight
    std::map<unsigned, std::vector<TateElem>> dmemo;
    for (unsigned j = 0; j < d; ++j) {
        if (dmemo.count(idx[j])) continue;
        std::vector<TateElem> v;
        v.push_back(TateElem::one(f, tdeg, wp));
        for (unsigned i = 1; i <= plan.top; ++i)
            v.push_back(v.back() * geometric_factor(f, i, idx[j], tdeg, wp));
        dmemo.emplace(idx[j], std::move(v));
    }
    auto zero_tate = [&]() {
        std::vector<LaurentSeries> z(static_cast<std::size_t>(tdeg + 1),
                                     LaurentSeries::zero(f, wp));
        return TateElem(f, tdeg, std::move(z), ValBound::exact_constant(f->q(), ValBound::kInf));
    };
    // chain from the innermost layer upward; prefix[i] = sum_{i' <= i} U_layer(i')
    std::vector<TateElem> prefix;
    for (unsigned layer = d; layer >= 1; --layer) {
        std::vector<TateElem> next;
        TateElem run = zero_tate();
        const std::vector<TateElem>& dn = dmemo.at(idx[layer - 1]);
        for (unsigned i = 0; i <= plan.top; ++i) {
            TateElem u = zero_tate();
            if (layer == d || i >= 1) {
                TateElem base = dn[i].mul_bipoly(alphas[layer - 1].twist(i));
                u = layer == d ? base : base * prefix[i - 1];
            }
            run = run + u;
            next.push_back(run);
        }
        prefix = std::move(next);
        if (layer == 1) break;
    }
    TateElem result = prefix[plan.top];
    // fold the dropped tail into the certified bound and trim to the target
    ValBound tail = ValBound::affine(f->q(), plan.tail_floor, qm1 * f->q());
    std::optional<ValBound> b = result.bound()
                                    ? std::optional<ValBound>(
                                          ValBound::pointwise_min(*result.bound(), tail))
                                    : std::nullopt;
    std::vector<LaurentSeries> out;
    out.reserve(static_cast<std::size_t>(tdeg + 1));
    for (std::int64_t r = 0; r <= tdeg; ++r) {
        const LaurentSeries& c = result.coeff(r);
        if (c.prec() < prec)
            throw fail_inconclusive("polylogarithm coefficient precision fell short");
        out.push_back(c.truncated(prec));
    }
    return TateElem(f, tdeg, std::move(out), std::move(b));
}

ATPoly anderson_thakur(const FqPtr& f, unsigned n, std::int64_t cap) {
    if (n < 1) throw fail_config("interpolation polynomial needs n >= 1");
    const std::int64_t q = f->q();
    if (n <= static_cast<unsigned>(q))
        return ATPoly{BiPoly::constant(f, f->one()), n, true, 0, 0};
    const unsigned kFit = 3;
    const unsigned kCheck = q <= 3 ? 4 : 3; // power sums need q^kCheck monics
    const unsigned kTmax = 8;
    const std::int64_t qm1 = q - 1;
    // strict norm bound: deg_theta(H) < nq/(q-1)
    const unsigned U =
        static_cast<unsigned>((static_cast<std::int64_t>(n) * q + qm1 - 1) / qm1 - 1);
    FqPoly gamma = carlitz_factorial(f, n);
    const std::int64_t dgam = std::max<std::int64_t>(gamma.degree(), 0);
    // working precision: the identity at index i lives at w-valuation up to
    // nq(q^i - 1) + qn (constant-in-theta monomials sit highest), so the top
    // verification index sets the window; add room for Gamma_n and deg_t
    const std::int64_t prec_work =
        q * static_cast<std::int64_t>(n) * (qpow_big(q, kCheck) - 1) +
        q * static_cast<std::int64_t>(n) + qm1 * dgam + qm1 * kTmax + 160;
    LaurentSeries pi_inv_n =
        pi_carlitz(f, prec_work + 2 * q * static_cast<std::int64_t>(n) + 4)
            .inverse()
            .pow(static_cast<std::int64_t>(n));
    std::vector<LaurentSeries> c_i, r_i;
    for (unsigned i = 0; i <= kCheck; ++i) {
        c_i.push_back(omega_pow_frob_at_theta(f, i, n, prec_work));
        LaurentSeries s = power_sum(
            f, i, n, prec_work + q * static_cast<std::int64_t>(n) + qm1 * dgam + 2, cap);
        r_i.push_back(mul_by_exact_poly(s * pi_inv_n, gamma));
    }
    // a monomial theta^s t^u of H contributes theta^(s q^i + u) C_i at index i
    auto lhs_column = [&](unsigned i, unsigned u, unsigned s) {
        std::int64_t e = static_cast<std::int64_t>(s) * qpow_big(q, i) + u;
        return c_i[i].mul_theta_pow(e);
    };
    for (unsigned T = 0; T <= kTmax; ++T) {
        const std::size_t ncols = static_cast<std::size_t>(T + 1) * (U + 1);
        std::vector<std::vector<FqElem>> rows;
        std::vector<FqElem> rhs;
        for (unsigned i = 0; i <= kFit; ++i) {
            // shared exponent window across all columns and the right side
            std::int64_t lo = r_i[i].val(), hi = r_i[i].prec();
            std::vector<LaurentSeries> cols;
            for (unsigned u = 0; u <= T; ++u)
                for (unsigned s = 0; s <= U; ++s) {
                    cols.push_back(lhs_column(i, u, s));
                    lo = std::min(lo, cols.back().val());
                    hi = std::min(hi, cols.back().prec());
                }
            for (std::int64_t e = lo; e < hi; ++e) {
                std::vector<FqElem> row(ncols, 0);
                for (std::size_t c = 0; c < ncols; ++c) row[c] = cols[c].coeff(e);
                rows.push_back(std::move(row));
                rhs.push_back(r_i[i].coeff(e));
            }
        }
        LinearSolution sol = solve_fq(f, rows, rhs, ncols);
        if (!sol.consistent) continue;
        // assemble H = sum h_{u,s} theta^s t^u
        BiPoly h = BiPoly::zero(f);
        std::size_t c = 0;
        for (unsigned u = 0; u <= T; ++u)
            for (unsigned s = 0; s <= U; ++s, ++c)
                if (sol.particular[c] != 0)
                    h = h + BiPoly::monomial(f, sol.particular[c], s, u);
        if (h.is_zero()) continue;
        // re-check the identity on the held-out indices
        bool ok = true;
        for (unsigned i = kFit + 1; i <= kCheck && ok; ++i) {
            LaurentSeries lhs = LaurentSeries::zero(f, r_i[i].prec());
            for (int tu = 0; tu <= h.deg_t(); ++tu) {
                FqPoly cp = h.coeff(tu).twist(i);
                if (cp.is_zero()) continue;
                lhs = lhs + mul_by_exact_poly(c_i[i].mul_theta_pow(tu), cp);
            }
            AgreeReport rep = agree_to_precision(lhs, r_i[i]);
            ok = rep.equal && !rep.vacuous;
        }
        if (!ok) continue;
        return ATPoly{h, n, sol.kernel.empty(), kFit, kCheck};
    }
    throw fail_resource("search bounds exhausted: deg_t 0.." + std::to_string(kTmax) +
                        ", deg_theta 0.." + std::to_string(U));
}

ChangReport chang_eval(const FqPtr& f, const IndexTuple& idx, unsigned N, std::int64_t prec,
                       std::int64_t cap) {
    check_index_tuple(idx);
    const unsigned d = static_cast<unsigned>(idx.size());
    const std::int64_t q = f->q(), qm1 = q - 1;
    const std::int64_t qN = qpow_big(q, N);
    unsigned w = 0;
    for (unsigned n : idx) w += n;
    std::vector<BiPoly> hs;
    std::vector<FqPoly> gammas;
    for (unsigned n : idx) {
        hs.push_back(anderson_thakur(f, n, cap).h);
        gammas.push_back(carlitz_factorial(f, n));
    }
    std::int64_t degt_sum = 0;
    for (const BiPoly& h : hs) degt_sum += std::max(h.deg_t(), 0);
    McplPlan plan =
        plan_mcpl(f, hs, idx, prec, clamp_big(static_cast<__int128>(qm1) * qN * degt_sum));
    // per-factor output precision: cover the worst exact-polynomial dips
    std::int64_t dips = 16;
    for (unsigned j = 0; j < d; ++j) {
        __int128 dip =
            static_cast<__int128>(qm1) *
            (static_cast<__int128>(std::max(hs[j].deg_theta(), 0)) * qpow_big(q, plan.top) +
             static_cast<__int128>(std::max(hs[j].deg_t(), 0)) * qN);
        dips += clamp_big(dip);
    }
    const std::int64_t pout = prec + dips;
    // memoized evaluations of Omega_i^n at theta^(q^N)
    std::map<std::pair<unsigned, unsigned>, LaurentSeries> ememo;
    auto omega_eval = [&](unsigned i, unsigned n) -> const LaurentSeries& {
        auto key = std::make_pair(i, n);
        auto it = ememo.find(key);
        if (it != ememo.end()) return it->second;
        return ememo.emplace(key, omega_pow_eval(f, i, n, N, pout)).first->second;
    };
    // sum over strictly decreasing tuples (i_1, ..., i_d), i_1 <= plan.top, of
    //   prod_j (-1)^(i_j n_j) theta^(-n_j (q + ... + q^(i_j)))
    //          * Omega_{i_j}^{n_j}(theta^(q^N)) * H_j^((i_j))(theta^(q^N))
    std::vector<unsigned> tuple(d, 0);
    LaurentSeries lhs = LaurentSeries::zero(f, std::numeric_limits<std::int64_t>::max() / 8);
    auto emit = [&]() {
        // every factor carries prec <= pout + its shift, so a finite head window
        // loses nothing (series products take the min of the usable windows)
        LaurentSeries term = LaurentSeries::one(f, 2 * pout + 64);
        for (unsigned j = 0; j < d; ++j) {
            unsigned i = tuple[j];
            unsigned n = idx[j];
            term = term * omega_eval(i, n);
            std::int64_t texp = clamp_big(static_cast<__int128>(n) * qgeom_big(q, i));
            term = term.mul_theta_pow(-texp);
            if (f->minus_one_pow(static_cast<std::int64_t>(i) * n) != f->one()) term = -term;
            FqPoly aeval = hs[j].twist(i).eval_t_theta_qpow(N);
            term = mul_by_exact_poly(term, aeval);
        }
        lhs = lhs + term;
    };
    auto rec = [&](auto&& self, unsigned layer, int lo) -> void {
        if (layer == d) {
            emit();
            return;
        }
        for (int i = static_cast<int>(d - layer) - 1; i <= lo; ++i) {
            tuple[layer] = static_cast<unsigned>(i);
            self(self, layer + 1, i - 1);
        }
    };
    for (unsigned i1 = d - 1; i1 <= plan.top; ++i1) {
        tuple[0] = i1;
        rec(rec, 1, static_cast<int>(i1) - 1);
    }
    // fold in the dropped-tuple floor
    std::int64_t lhs_prec = std::min(lhs.prec(), plan.tail_floor);
    if (lhs_prec < prec)
        throw fail_inconclusive("evaluation precision fell short of the request");
    lhs = lhs.truncated(prec);
    // independent right side: (Gamma_{n_1}...Gamma_{n_d} zeta(idx) / pi^w)^(q^N)
    std::int64_t dgam_sum = 0;
    for (const FqPoly& g : gammas) dgam_sum += std::max<std::int64_t>(g.degree(), 0);
    std::int64_t base_prec =
        (prec + qN - 1) / qN + q * static_cast<std::int64_t>(w) + qm1 * dgam_sum + 2;
    LaurentSeries rhsbase = mzv(f, idx, base_prec, cap);
    for (const FqPoly& g : gammas) rhsbase = mul_by_exact_poly(rhsbase, g);
    rhsbase = rhsbase * pi_carlitz(f, base_prec + 2 * q * static_cast<std::int64_t>(w) + 4)
                            .inverse()
                            .pow(static_cast<std::int64_t>(w));
    LaurentSeries rhs = rhsbase.twist(N);
    if (rhs.prec() < prec) throw fail_inconclusive("reference side precision fell short");
    rhs = rhs.truncated(prec);
    AgreeReport rep = agree_to_precision(lhs, rhs);
    return ChangReport{lhs, rhs, rep.equal && !rep.vacuous, rep.checked_to};
}

} // namespace carlitz
