#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carlitz/fq.hpp"
#include "carlitz/fq_poly.hpp"

namespace carlitz {

/// Rational absolute value |f| = |theta|^(num/den), den > 0, reduced.
struct Norm {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Norm of_exponent(std::int64_t num, std::int64_t den);
    bool operator==(const Norm& o) const { return num == o.num && den == o.den; }
    bool operator<(const Norm& o) const;
    bool operator<=(const Norm& o) const { return *this < o || *this == o; }
};

/// Largest permitted dense coefficient window (in w-exponent units).
inline constexpr std::int64_t kMaxWindow = 1 << 22;

/// Truncated Laurent series in the uniformizer w = (-theta)^(-1/(q-1)).
///
/// Coefficients live in F_q and are tracked densely on the window
/// [val, prec): coeff(e) is exact for every e < prec, and zero for e < val.
/// theta itself is exact: theta = -w^(-(q-1)). A series that vanishes on its
/// whole window is stored with val == prec and an empty coefficient vector;
/// it is "zero to precision prec".
///
/// The sector of a series is the common residue of its nonzero exponents
/// mod (q-1), or -1 ("mixed") when the exponents disagree. Multiplying by any
/// rational function of theta preserves the sector; sector 0 is the subfield
/// F_q((1/theta)).
class LaurentSeries {
public:
    static LaurentSeries zero(FqPtr f, std::int64_t prec);
    static LaurentSeries one(FqPtr f, std::int64_t prec) { return monomial(f, 1, 0, prec); }
    static LaurentSeries monomial(FqPtr f, FqElem c, std::int64_t exp, std::int64_t prec);
    /// Exact embedding of a polynomial in theta, truncated at prec.
    static LaurentSeries from_poly(const FqPoly& a, std::int64_t prec);
    /// theta^e for any sign of e, truncated at prec.
    static LaurentSeries theta_power(FqPtr f, std::int64_t e, std::int64_t prec);

    const FqPtr& field() const noexcept { return f_; }
    std::int64_t val() const noexcept { return val_; }
    std::int64_t prec() const noexcept { return prec_; }
    bool is_zero() const noexcept { return val_ == prec_; }
    /// Valuation as data: nullopt when the series is zero to precision.
    std::optional<std::int64_t> valuation() const {
        return is_zero() ? std::nullopt : std::optional<std::int64_t>(val_);
    }

    /// Coefficient of w^e; exact for e < prec, error beyond the window.
    FqElem coeff(std::int64_t e) const;
    bool knows(std::int64_t e) const noexcept { return e < prec_; }

    /// Residue class of the nonzero exponents mod (q-1); -1 when mixed,
    /// 0 for the zero series (vacuous).
    int sector() const;

    /// |f| as a power of |theta|; error on a series that is zero to precision.
    Norm norm() const;

    std::vector<std::pair<std::int64_t, FqElem>> nonzero_terms() const;

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator-() const;

    LaurentSeries scaled(FqElem s) const;
    /// Multiplicative inverse; the leading coefficient must be visible.
    /// Result precision is prec - 2*val.
    LaurentSeries inverse() const;
    /// Integer power; negative exponents invert first.
    LaurentSeries pow(std::int64_t e) const;

    /// n-fold q-power Frobenius: exponents and precision scale by q^n.
    LaurentSeries twist(unsigned n) const;

    /// Exact multiplication by theta^e (an exponent shift plus sign).
    LaurentSeries mul_theta_pow(std::int64_t e) const;

    /// Restriction to a smaller precision (new_prec <= prec).
    LaurentSeries truncated(std::int64_t new_prec) const;

    bool operator==(const LaurentSeries& o) const {
        return val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_;
    }

private:
    LaurentSeries(FqPtr f, std::int64_t val, std::int64_t prec, std::vector<FqElem> c);

    void normalize();
    static void check_same_field(const LaurentSeries& a, const LaurentSeries& b);

    FqPtr f_;
    std::int64_t val_ = 0;
    std::int64_t prec_ = 0;
    std::vector<FqElem> c_; // c_[k] = coeff of w^(val_+k)
};

/// Result of comparing two series on their shared certified window.
struct AgreeReport {
    std::int64_t checked_to;                 // exponents below this were compared
    bool vacuous;                            // window contains no tracked coefficient
    bool equal;                              // all compared coefficients match
    std::optional<std::int64_t> mismatch;    // first differing exponent
};

AgreeReport agree_to_precision(const LaurentSeries& a, const LaurentSeries& b);

/// Certified vanishing level of a residual: its valuation if visible,
/// otherwise its precision (zero to that level).
std::int64_t vanishes_to(const LaurentSeries& r);

/// s * a(theta), exact in a; precision drops by (q-1)*deg(a) as the norm of
/// a(theta) dictates.
LaurentSeries mul_by_exact_poly(const LaurentSeries& s, const FqPoly& a);

} // namespace carlitz
