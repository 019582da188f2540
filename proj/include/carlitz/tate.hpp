#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carlitz/bipoly.hpp"
#include "carlitz/laurent.hpp"

namespace carlitz {

/// Certified lower bound on the w-valuation of the t^r coefficient of a
/// Tate-algebra element, valid for every r >= 0.
///
/// The bound is the max of two branches:
///   affine:    aoff + aslope * r
///   geometric: goff + gmul * q^floor(max(r - gshift, 0) / gdil)
/// Both branches are monotone in r, which the combination rules rely on.
/// All arithmetic saturates at +/- kInf. An affine slope of kSlopeSat means
/// "every coefficient beyond the offset's degree vanishes" (exact constants
/// and polynomials).
struct ValBound {
    std::int64_t q = 2;
    std::int64_t aoff = 0;
    std::int64_t aslope = 0;
    bool has_geom = false;
    std::int64_t goff = 0;
    std::int64_t gmul = 0;   // > 0 when has_geom
    std::int64_t gdil = 1;   // >= 1
    std::int64_t gshift = 0; // >= 0

    static constexpr std::int64_t kInf = std::int64_t(1) << 60;
    static constexpr std::int64_t kSlopeSat = std::int64_t(1) << 50;

    static ValBound exact_constant(std::int64_t q, std::int64_t val);
    static ValBound affine(std::int64_t q, std::int64_t off, std::int64_t slope);
    static ValBound with_geometric(std::int64_t q, std::int64_t aoff, std::int64_t aslope,
                                   std::int64_t goff, std::int64_t gmul, std::int64_t gdil,
                                   std::int64_t gshift);

    std::int64_t eval(std::int64_t r) const;

    /// Bound for a sum: valid when both operands' bounds are.
    static ValBound pointwise_min(const ValBound& a, const ValBound& b);
    /// Bound for a product (min-plus convolution, conservatively folded).
    static ValBound min_plus(const ValBound& a, const ValBound& b);
    /// Bound after multiplying by an exact polynomial in t whose coefficients
    /// have w-valuation >= v and whose t-degree is <= e.
    ValBound mul_exact_poly(std::int64_t v, std::int64_t e) const;
    /// Bound after an n-fold Frobenius twist (valuations scale by q^n).
    ValBound twisted(unsigned n) const;

    /// inf over r >= from of (eval(r) - S*r); -kInf when uncertifiable.
    std::int64_t inf_minus_slope(std::int64_t from, std::int64_t S) const;
};

/// Truncated element of the Tate algebra: sum_{r=0}^{tdeg} c_r(w) t^r with
/// Laurent-series coefficients, plus an optional certified bound on the
/// untracked coefficients (r > tdeg as well as r <= tdeg).
///
/// Operations never grow tdeg; products truncate to the smaller operand's
/// budget, where every kept coefficient is fully determined.
class TateElem {
public:
    TateElem(FqPtr f, std::int64_t tdeg, std::vector<LaurentSeries> coeffs,
             std::optional<ValBound> bound);

    static TateElem constant(const LaurentSeries& c, std::int64_t tdeg);
    static TateElem one(FqPtr f, std::int64_t tdeg, std::int64_t wprec);

    const FqPtr& field() const noexcept { return f_; }
    std::int64_t tdeg() const noexcept { return tdeg_; }
    const LaurentSeries& coeff(std::int64_t r) const;
    const std::optional<ValBound>& bound() const noexcept { return bound_; }
    TateElem with_bound(std::optional<ValBound> b) const;

    TateElem operator+(const TateElem& o) const;
    TateElem operator-(const TateElem& o) const;
    TateElem operator*(const TateElem& o) const;
    TateElem operator-() const;
    bool operator==(const TateElem& o) const;

    TateElem scaled(FqElem s) const;
    TateElem pow(unsigned e) const;

    /// Exact multiplication by a polynomial in t and theta; keeps tdeg.
    TateElem mul_bipoly(const BiPoly& a) const;

    /// n-fold Frobenius twist: coefficients are twisted, tdeg is kept.
    TateElem twist(unsigned n) const;

    /// Substitution t = theta^(q^N), certified against the tail bound.
    /// Errors with Inconclusive when the tail cannot be certified.
    LaurentSeries eval_theta_qpow(unsigned N) const;

    TateElem truncated_t(std::int64_t new_tdeg) const;

private:
    FqPtr f_;
    std::int64_t tdeg_;
    std::vector<LaurentSeries> c_; // size tdeg_ + 1
    std::optional<ValBound> bound_;
};

/// The series 1/(t - theta^(q^j))^n expanded on |t| <= 1: its t^r coefficient
/// is (-1)^n * binom(n-1+r, r) * theta^(-(n+r) q^j), an exact monomial kept to
/// `window` w-units above its valuation. Requires j >= 1 (norm |t| <= 1 <
/// |theta^(q^j)|). The installed bound is exact.
TateElem geometric_factor(const FqPtr& f, unsigned j, unsigned n, std::int64_t tdeg,
                          std::int64_t window);

/// Exact polynomial viewed in the Tate algebra, coefficients embedded at
/// absolute w-precision wprec.
TateElem embed_bipoly(const BiPoly& a, std::int64_t tdeg, std::int64_t wprec);

} // namespace carlitz
