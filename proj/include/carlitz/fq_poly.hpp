#pragma once

#include <string>
#include <vector>

#include "carlitz/fq.hpp"

namespace carlitz {

/// Dense polynomial over F_q in the variable theta.
///
/// Coefficients ascend by degree and carry no trailing zeros; the zero
/// polynomial has an empty coefficient vector and degree -1.
class FqPoly {
public:
    explicit FqPoly(FqPtr f) : f_(std::move(f)) {}
    FqPoly(FqPtr f, std::vector<FqElem> coeffs);

    static FqPoly zero(FqPtr f) { return FqPoly(std::move(f)); }
    static FqPoly constant(FqPtr f, FqElem c);
    static FqPoly monomial(FqPtr f, FqElem c, std::size_t deg);
    /// theta^{q^e} - theta^{q^j} style building blocks are assembled by callers.

    const FqPtr& field() const noexcept { return f_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    FqElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    FqElem lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<FqElem>& coeffs() const noexcept { return c_; }

    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly operator-() const;
    bool operator==(const FqPoly& o) const { return c_ == o.c_; }
    bool operator!=(const FqPoly& o) const { return !(*this == o); }

    FqPoly scaled(FqElem s) const;
    FqPoly pow(unsigned long long e) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<FqPoly, FqPoly> divrem(const FqPoly& div) const;

    /// Monic gcd (zero if both inputs are zero).
    static FqPoly gcd(FqPoly a, FqPoly b);

    /// Substitution theta -> theta^{q^e}. Coefficients are F_q-rational, so
    /// this equals the e-fold q-power Frobenius applied to the polynomial.
    FqPoly twist(unsigned e) const;

    /// Monic normalization (leading coefficient scaled to 1); zero stays zero.
    FqPoly monic() const;

    std::string to_string(const std::string& var = "th") const;

private:
    void normalize();

    FqPtr f_;
    std::vector<FqElem> c_;
};

} // namespace carlitz
