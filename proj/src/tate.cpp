#include "carlitz/tate.hpp"

#include <algorithm>
#include <limits>

#include "carlitz/errors.hpp"

namespace carlitz {

namespace {

constexpr std::int64_t kInf = ValBound::kInf;

std::int64_t sat_clamp(__int128 x) {
    if (x > kInf) return kInf;
    if (x < -kInf) return -kInf;
    return static_cast<std::int64_t>(x);
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    return sat_clamp(static_cast<__int128>(a) + b);
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
    return sat_clamp(static_cast<__int128>(a) * b);
}

std::int64_t sat_qpow(std::int64_t q, std::int64_t k) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r = sat_mul(r, q);
        if (r >= kInf) return kInf;
    }
    return r;
}

} // namespace

ValBound ValBound::exact_constant(std::int64_t q, std::int64_t val) {
    return affine(q, val, kSlopeSat);
}

ValBound ValBound::affine(std::int64_t q, std::int64_t off, std::int64_t slope) {
    ValBound b;
    b.q = q;
    b.aoff = off;
    b.aslope = slope;
    return b;
}

ValBound ValBound::with_geometric(std::int64_t q, std::int64_t aoff, std::int64_t aslope,
                                  std::int64_t goff, std::int64_t gmul, std::int64_t gdil,
                                  std::int64_t gshift) {
    if (gmul <= 0 || gdil < 1 || gshift < 0) throw fail_math("malformed geometric bound");
    ValBound b = affine(q, aoff, aslope);
    b.has_geom = true;
    b.goff = goff;
    b.gmul = gmul;
    b.gdil = gdil;
    b.gshift = gshift;
    return b;
}

std::int64_t ValBound::eval(std::int64_t r) const {
    std::int64_t best = sat_add(aoff, sat_mul(aslope, r));
    if (has_geom) {
        std::int64_t k = r <= gshift ? 0 : (r - gshift) / gdil;
        best = std::max(best, sat_add(goff, sat_mul(gmul, sat_qpow(q, k))));
    }
    return best;
}

ValBound ValBound::pointwise_min(const ValBound& a, const ValBound& b) {
    ValBound r = affine(a.q, std::min(a.aoff, b.aoff), std::min(a.aslope, b.aslope));
    if (a.has_geom && b.has_geom) {
        r.has_geom = true;
        r.goff = std::min(a.goff, b.goff);
        r.gmul = std::min(a.gmul, b.gmul);
        r.gdil = std::max(a.gdil, b.gdil);
        r.gshift = std::max(a.gshift, b.gshift);
    }
    return r;
}

namespace {

// inf over u >= from of (goff + gmul*q^floor(max(u-gshift,0)/gdil) - S*u),
// exploiting that block-to-block increments eventually turn positive and grow.
std::int64_t geom_inf_minus_slope(const ValBound& g, std::int64_t from, std::int64_t S) {
    if (from < 0) from = 0;
    std::int64_t k = from <= g.gshift ? 0 : (from - g.gshift + g.gdil - 1) / g.gdil;
    if (k > 0 && g.gshift + (k)*g.gdil - 1 >= from) --k; // block k-1 still reaches `from`
    std::int64_t best = kInf;
    for (int guard = 0; guard < 512; ++guard) {
        std::int64_t right = sat_add(g.gshift, sat_add(sat_mul(k + 1, g.gdil), -1));
        if (right < from) { ++k; continue; }
        std::int64_t pw = sat_mul(g.gmul, sat_qpow(g.q, k));
        std::int64_t cand = sat_add(sat_add(g.goff, pw), -sat_mul(S, right));
        best = std::min(best, cand);
        std::int64_t step_up = sat_mul(pw, g.q - 1);          // geometric increment
        std::int64_t step_dn = sat_mul(S, g.gdil);            // linear increment
        if (step_up >= step_dn && cand >= best) return best;  // increments only grow
        ++k;
    }
    return -kInf; // scan did not settle; certify nothing
}

} // namespace

ValBound ValBound::min_plus(const ValBound& a, const ValBound& b) {
    ValBound r = affine(a.q, sat_add(a.aoff, b.aoff), std::min(a.aslope, b.aslope));
    auto fold_affine = [&](const ValBound& geo, const ValBound& aff) {
        // min over splits u + s = r of (geo(u) + aff(s)) >= aff.aoff + aff.aslope*r
        //   + inf_u(geo(u) - aff.aslope*u), an affine bound in r.
        std::int64_t m = geom_inf_minus_slope(geo, 0, aff.aslope);
        return affine(a.q, sat_add(aff.aoff, m), aff.aslope);
    };
    std::optional<ValBound> alt;
    if (a.has_geom && b.has_geom) {
        r.has_geom = true;
        r.goff = sat_add(a.goff, b.goff);
        r.gmul = std::min(a.gmul, b.gmul);
        r.gdil = sat_add(a.gdil, b.gdil);
        r.gshift = sat_add(a.gshift, b.gshift);
    } else if (a.has_geom || b.has_geom) {
        const ValBound& geo = a.has_geom ? a : b;
        const ValBound& aff = a.has_geom ? b : a;
        if (aff.aslope >= kSlopeSat) {
            // The affine side is an exact constant: only the u = r split counts.
            r.has_geom = true;
            r.goff = sat_add(geo.goff, aff.aoff);
            r.gmul = geo.gmul;
            r.gdil = geo.gdil;
            r.gshift = geo.gshift;
        } else {
            alt = fold_affine(geo, aff);
        }
    }
    if (alt) {
        // Keep whichever affine branch is better at a representative radius.
        constexpr std::int64_t probe = 64;
        if (alt->eval(probe) > r.eval(probe) ||
            (alt->eval(probe) == r.eval(probe) && alt->aslope > r.aslope)) {
            r.aoff = alt->aoff;
            r.aslope = alt->aslope;
        }
    }
    return r;
}

ValBound ValBound::mul_exact_poly(std::int64_t v, std::int64_t e) const {
    if (aslope >= kSlopeSat && !has_geom) {
        // Exact constant: the product is an exact polynomial supported on
        // t-degrees [0, e] with coefficients >= aoff + v; beyond e the true
        // coefficients vanish, so any growing branch is sound there.
        std::int64_t off = sat_add(aoff, v);
        return with_geometric(q, off, 0, sat_add(off, -1), 1, 1, e);
    }
    ValBound r = *this;
    if (aslope >= kSlopeSat) {
        r.aoff = sat_add(aoff, v);
        r.aslope = 0;
    } else {
        r.aoff = sat_add(sat_add(aoff, v), -sat_mul(aslope, e));
    }
    if (has_geom) {
        r.goff = sat_add(goff, v);
        r.gshift = sat_add(gshift, e);
    }
    return r;
}

ValBound ValBound::twisted(unsigned n) const {
    std::int64_t s = sat_qpow(q, n);
    ValBound r = *this;
    r.aoff = sat_mul(aoff, s);
    r.aslope = sat_mul(aslope, s);
    if (has_geom) {
        r.goff = sat_mul(goff, s);
        r.gmul = sat_mul(gmul, s);
    }
    return r;
}

std::int64_t ValBound::inf_minus_slope(std::int64_t from, std::int64_t S) const {
    std::int64_t best = -kInf;
    if (aslope >= S) best = std::max(best, sat_add(aoff, sat_mul(aslope - S, from)));
    if (has_geom) best = std::max(best, geom_inf_minus_slope(*this, from, S));
    return best;
}

TateElem::TateElem(FqPtr f, std::int64_t tdeg, std::vector<LaurentSeries> coeffs,
                   std::optional<ValBound> bound)
    : f_(std::move(f)), tdeg_(tdeg), c_(std::move(coeffs)), bound_(std::move(bound)) {
    if (tdeg_ < 0) throw fail_config("negative truncation order");
    if (static_cast<std::int64_t>(c_.size()) != tdeg_ + 1)
        throw fail_math("coefficient count does not match truncation order");
}

TateElem TateElem::constant(const LaurentSeries& c, std::int64_t tdeg) {
    std::vector<LaurentSeries> v;
    v.reserve(static_cast<std::size_t>(tdeg + 1));
    v.push_back(c);
    for (std::int64_t r = 1; r <= tdeg; ++r) v.push_back(LaurentSeries::zero(c.field(), c.prec()));
    return TateElem(c.field(), tdeg, std::move(v),
                    ValBound::exact_constant(c.field()->q(), vanishes_to(c)));
}

TateElem TateElem::one(FqPtr f, std::int64_t tdeg, std::int64_t wprec) {
    return constant(LaurentSeries::one(f, wprec), tdeg);
}

const LaurentSeries& TateElem::coeff(std::int64_t r) const {
    if (r < 0 || r > tdeg_) throw fail_math("t-coefficient index beyond truncation");
    return c_[static_cast<std::size_t>(r)];
}

TateElem TateElem::with_bound(std::optional<ValBound> b) const {
    return TateElem(f_, tdeg_, c_, std::move(b));
}

TateElem TateElem::operator+(const TateElem& o) const {
    std::int64_t m = std::min(tdeg_, o.tdeg_);
    std::vector<LaurentSeries> v;
    v.reserve(static_cast<std::size_t>(m + 1));
    for (std::int64_t r = 0; r <= m; ++r) v.push_back(coeff(r) + o.coeff(r));
    std::optional<ValBound> b;
    if (bound_ && o.bound_) b = ValBound::pointwise_min(*bound_, *o.bound_);
    return TateElem(f_, m, std::move(v), std::move(b));
}

TateElem TateElem::operator-() const {
    std::vector<LaurentSeries> v;
    v.reserve(c_.size());
    for (const auto& s : c_) v.push_back(-s);
    return TateElem(f_, tdeg_, std::move(v), bound_);
}

TateElem TateElem::operator-(const TateElem& o) const { return *this + (-o); }

TateElem TateElem::operator*(const TateElem& o) const {
    std::int64_t m = std::min(tdeg_, o.tdeg_);
    std::vector<LaurentSeries> v;
    v.reserve(static_cast<std::size_t>(m + 1));
    for (std::int64_t r = 0; r <= m; ++r) {
        LaurentSeries acc = coeff(0) * o.coeff(r);
        for (std::int64_t i = 1; i <= r; ++i) acc = acc + coeff(i) * o.coeff(r - i);
        v.push_back(std::move(acc));
    }
    std::optional<ValBound> b;
    if (bound_ && o.bound_) b = ValBound::min_plus(*bound_, *o.bound_);
    return TateElem(f_, m, std::move(v), std::move(b));
}

bool TateElem::operator==(const TateElem& o) const {
    return tdeg_ == o.tdeg_ && c_ == o.c_;
}

TateElem TateElem::scaled(FqElem s) const {
    std::vector<LaurentSeries> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(c.scaled(s));
    return TateElem(f_, tdeg_, std::move(v), bound_);
}

TateElem TateElem::pow(unsigned e) const {
    if (e == 0) {
        std::int64_t prec = c_[0].prec();
        return one(f_, tdeg_, prec);
    }
    TateElem acc = *this;
    int top = 31;
    while (top > 0 && !((e >> top) & 1u)) --top;
    for (int i = top - 1; i >= 0; --i) {
        acc = acc * acc;
        if ((e >> i) & 1u) acc = acc * *this;
    }
    return acc;
}

TateElem TateElem::mul_bipoly(const BiPoly& a) const {
    if (a.is_zero()) {
        std::vector<LaurentSeries> v(c_.size(), LaurentSeries::zero(f_, c_[0].prec()));
        return TateElem(f_, tdeg_, std::move(v),
                        ValBound::exact_constant(f_->q(), ValBound::kInf));
    }
    std::vector<LaurentSeries> v;
    v.reserve(c_.size());
    for (std::int64_t r = 0; r <= tdeg_; ++r) {
        LaurentSeries acc = LaurentSeries::zero(f_, std::numeric_limits<std::int64_t>::max() / 8);
        for (int i = 0; i <= std::min<std::int64_t>(a.deg_t(), r); ++i) {
            FqPoly ai = a.coeff(i);
            if (ai.is_zero()) continue;
            acc = acc + mul_by_exact_poly(coeff(r - i), ai);
        }
        v.push_back(std::move(acc));
    }
    std::optional<ValBound> b;
    if (bound_)
        b = bound_->mul_exact_poly(
            -static_cast<std::int64_t>(f_->q() - 1) * a.deg_theta(), a.deg_t());
    return TateElem(f_, tdeg_, std::move(v), std::move(b));
}

TateElem TateElem::twist(unsigned n) const {
    std::vector<LaurentSeries> v;
    v.reserve(c_.size());
    for (const auto& s : c_) v.push_back(s.twist(n));
    std::optional<ValBound> b;
    if (bound_) b = bound_->twisted(n);
    return TateElem(f_, tdeg_, std::move(v), std::move(b));
}

LaurentSeries TateElem::eval_theta_qpow(unsigned N) const {
    std::int64_t qN = 1;
    for (unsigned i = 0; i < N; ++i) {
        qN *= f_->q();
        if (qN > (std::int64_t(1) << 40)) throw fail_resource("evaluation exponent overflow");
    }
    LaurentSeries acc = LaurentSeries::zero(f_, std::numeric_limits<std::int64_t>::max() / 8);
    for (std::int64_t r = 0; r <= tdeg_; ++r) acc = acc + coeff(r).mul_theta_pow(r * qN);
    if (!bound_)
        throw fail_inconclusive("evaluation requested on an element with no tail bound");
    std::int64_t floor = bound_->inf_minus_slope(tdeg_ + 1, (f_->q() - 1) * qN);
    std::int64_t prec = std::min(acc.prec(), floor);
    if (prec <= -kInf / 2)
        throw fail_inconclusive("tail bound too weak to certify the evaluation");
    return acc.truncated(prec);
}

TateElem TateElem::truncated_t(std::int64_t new_tdeg) const {
    if (new_tdeg > tdeg_) throw fail_math("cannot raise the truncation order");
    if (new_tdeg < 0) throw fail_config("negative truncation order");
    std::vector<LaurentSeries> v(c_.begin(), c_.begin() + new_tdeg + 1);
    return TateElem(f_, new_tdeg, std::move(v), bound_);
}

TateElem geometric_factor(const FqPtr& f, unsigned j, unsigned n, std::int64_t tdeg,
                          std::int64_t window) {
    if (j < 1) throw fail_config("geometric factor needs j >= 1 (pole inside the unit disk)");
    if (n < 1) throw fail_config("geometric factor needs a positive weight");
    std::int64_t qj = 1;
    for (unsigned i = 0; i < j; ++i) {
        qj *= f->q();
        if (qj > (std::int64_t(1) << 40)) throw fail_resource("geometric factor exponent overflow");
    }
    const std::int64_t qm1 = f->q() - 1;
    std::vector<LaurentSeries> v;
    v.reserve(static_cast<std::size_t>(tdeg + 1));
    for (std::int64_t r = 0; r <= tdeg; ++r) {
        // coefficient: (-1)^n binom(n-1+r, r) theta^(-(n+r) q^j)
        FqElem bin = f->binom_mod_p(static_cast<unsigned long long>(n - 1 + r),
                                    static_cast<unsigned long long>(r));
        std::int64_t sign_exp = n + ((f->q() % 2 == 1 || j == 0) ? (n + r) : 0);
        FqElem c = f->mul(bin, f->minus_one_pow(sign_exp));
        std::int64_t exp = (n + r) * qj * qm1;
        v.push_back(LaurentSeries::monomial(f, c, exp, exp + window));
    }
    ValBound b = ValBound::affine(f->q(), n * qm1 * qj, qm1 * qj);
    return TateElem(f, tdeg, std::move(v), b);
}

TateElem embed_bipoly(const BiPoly& a, std::int64_t tdeg, std::int64_t wprec) {
    FqPtr f = a.field();
    std::vector<LaurentSeries> v;
    v.reserve(static_cast<std::size_t>(tdeg + 1));
    for (std::int64_t r = 0; r <= tdeg; ++r)
        v.push_back(LaurentSeries::from_poly(a.coeff(static_cast<int>(r)), wprec));
    std::int64_t vmin = a.is_zero()
                            ? ValBound::kInf
                            : -static_cast<std::int64_t>(f->q() - 1) * a.deg_theta();
    ValBound b = ValBound::exact_constant(f->q(), 0).mul_exact_poly(vmin, std::max(a.deg_t(), 0));
    return TateElem(f, tdeg, std::move(v), b);
}

} // namespace carlitz
