#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "carlitz/errors.hpp"

namespace carlitz {

/// An element of F_q encoded as an integer in [0, q).
///
/// For q = p^m the element sum c_i x^i (coordinates in the power basis of the
/// fixed modulus) is encoded as sum c_i p^i. For m = 1 this is the usual
/// residue in [0, p).
using FqElem = std::uint8_t;

/// Arithmetic context for F_q, q = p^m <= 64.
///
/// Extension fields are realized as F_p[x]/(modulus) with a fixed, canonical
/// modulus per (p, m); the modulus is part of the serialization contract, so
/// there is no way to override it. All binary operations are table lookups
/// (tables are at most 64x64). Instances are immutable and shared; obtain one
/// with Fq::make(q).
class Fq {
public:
    static std::shared_ptr<const Fq> make(unsigned q);

    unsigned p() const noexcept { return p_; }
    unsigned m() const noexcept { return m_; }
    unsigned q() const noexcept { return q_; }

    /// Modulus coefficients, ascending, degree m, leading coefficient 1.
    /// For m = 1 returns {0, 1} (the field is F_p itself; no modulus needed).
    const std::vector<std::uint8_t>& modulus() const noexcept { return modulus_; }

    bool is_elem(unsigned v) const noexcept { return v < q_; }

    FqElem add(FqElem a, FqElem b) const { return add_[idx(a, b)]; }
    FqElem sub(FqElem a, FqElem b) const { return add_[idx(a, neg_[b])]; }
    FqElem neg(FqElem a) const { return neg_[a]; }
    FqElem mul(FqElem a, FqElem b) const { return mul_[idx(a, b)]; }
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

    /// a^e for any integer e (negative exponents invert first; 0^0 = 1).
    FqElem pow(FqElem a, long long e) const;

    /// (-1)^e as a field element.
    FqElem minus_one_pow(long long e) const {
        if (p_ == 2 || e % 2 == 0) return 1;
        return neg_[1];
    }

    FqElem one() const noexcept { return 1; }
    FqElem from_int(unsigned v) const {
        if (!is_elem(v)) throw fail_config("field element out of range for q=" + std::to_string(q_));
        return static_cast<FqElem>(v);
    }

    /// binomial(top, bot) mod p as a prime-subfield element (Lucas reduction).
    FqElem binom_mod_p(unsigned long long top, unsigned long long bot) const;

    std::string to_string(FqElem a) const { return std::to_string(static_cast<unsigned>(a)); }

private:
    explicit Fq(unsigned q);

    static std::size_t idx(FqElem a, FqElem b) { return (static_cast<std::size_t>(a) << 6) | b; }

    unsigned p_ = 0, m_ = 0, q_ = 0;
    std::vector<std::uint8_t> modulus_;
    std::vector<FqElem> add_;  // q x q, stride 64
    std::vector<FqElem> mul_;  // q x q, stride 64
    std::vector<FqElem> neg_;  // q
    std::vector<FqElem> inv_;  // q (inv_[0] unused)
};

using FqPtr = std::shared_ptr<const Fq>;

/// Factor q into (p, m) with p prime; rejects non prime powers and q > 64.
std::pair<unsigned, unsigned> factor_prime_power(unsigned q);

} // namespace carlitz
