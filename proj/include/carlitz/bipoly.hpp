#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carlitz/fq_poly.hpp"

namespace carlitz {

/// Polynomial in t whose coefficients are exact polynomials in theta.
class BiPoly {
public:
    explicit BiPoly(FqPtr f) : f_(std::move(f)) {}
    BiPoly(FqPtr f, std::vector<FqPoly> tcoeffs);

    static BiPoly zero(FqPtr f) { return BiPoly(std::move(f)); }
    static BiPoly constant(FqPtr f, FqElem c);
    static BiPoly from_theta_poly(const FqPoly& a);
    /// c * theta^u * t^v.
    static BiPoly monomial(FqPtr f, FqElem c, unsigned theta_exp, unsigned t_exp);
    /// The recurring building block t - theta^(q^j).
    static BiPoly t_minus_theta_qpow(FqPtr f, unsigned j);

    /// Parses "+ - * ^ ( )" expressions in the variables t and th; integer
    /// literals reduce mod p; g denotes the residue class of x in F_p[x]/(modulus).
    static BiPoly parse(FqPtr f, const std::string& text);

    const FqPtr& field() const noexcept { return f_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree in t; -1 for the zero polynomial.
    int deg_t() const noexcept { return static_cast<int>(c_.size()) - 1; }
    /// Largest theta-degree over all t-coefficients; -1 for zero.
    int deg_theta() const;
    FqPoly coeff(int i) const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator-() const;
    bool operator==(const BiPoly& o) const;

    BiPoly scaled(FqElem s) const;
    BiPoly pow(unsigned e) const;

    /// e-fold Frobenius twist theta -> theta^(q^e); t is fixed.
    BiPoly twist(unsigned e) const;

    /// Exact substitution t = theta^(q^N).
    FqPoly eval_t_theta_qpow(unsigned N) const;

    std::string to_string() const;

private:
    void normalize();

    FqPtr f_;
    std::vector<FqPoly> c_; // c_[i] multiplies t^i
};

} // namespace carlitz
