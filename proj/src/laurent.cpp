#include "carlitz/laurent.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "carlitz/errors.hpp"

namespace carlitz {

Norm Norm::of_exponent(std::int64_t num, std::int64_t den) {
    if (den == 0) throw fail_math("norm with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return Norm{num, den};
}

bool Norm::operator<(const Norm& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

LaurentSeries::LaurentSeries(FqPtr f, std::int64_t val, std::int64_t prec, std::vector<FqElem> c)
    : f_(std::move(f)), val_(val), prec_(prec), c_(std::move(c)) {
    if (prec_ < val_) throw fail_math("series window ends before it starts");
    if (prec_ - val_ > kMaxWindow)
        throw fail_resource("series window exceeds " + std::to_string(kMaxWindow) + " coefficients");
    if (static_cast<std::int64_t>(c_.size()) != prec_ - val_)
        throw fail_math("series coefficient count does not match window");
    normalize();
}

void LaurentSeries::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<std::int64_t>(lead);
    }
}

void LaurentSeries::check_same_field(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.f_->q() != b.f_->q()) throw fail_math("mixing series over different fields");
}

LaurentSeries LaurentSeries::zero(FqPtr f, std::int64_t prec) {
    return LaurentSeries(std::move(f), prec, prec, {});
}

LaurentSeries LaurentSeries::monomial(FqPtr f, FqElem c, std::int64_t exp, std::int64_t prec) {
    if (c == 0 || exp >= prec) return zero(std::move(f), prec);
    if (!f->is_elem(c)) throw fail_config("coefficient out of field range");
    std::vector<FqElem> v(static_cast<std::size_t>(prec - exp), 0);
    v[0] = c;
    return LaurentSeries(std::move(f), exp, prec, std::move(v));
}

LaurentSeries LaurentSeries::from_poly(const FqPoly& a, std::int64_t prec) {
    FqPtr f = a.field();
    LaurentSeries acc = zero(f, prec);
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) == 0) continue;
        acc = acc + theta_power(f, i, prec).scaled(a.coeff(i));
    }
    return acc;
}

LaurentSeries LaurentSeries::theta_power(FqPtr f, std::int64_t e, std::int64_t prec) {
    // theta = -w^(-(q-1)), so theta^e = (-1)^e w^(-e(q-1)).
    std::int64_t qm1 = f->q() - 1;
    FqElem sign = f->minus_one_pow(e);
    return monomial(std::move(f), sign, -e * qm1, prec);
}

FqElem LaurentSeries::coeff(std::int64_t e) const {
    if (e >= prec_)
        throw fail_math("coefficient of w^" + std::to_string(e) + " beyond precision " +
                        std::to_string(prec_));
    if (e < val_) return 0;
    return c_[static_cast<std::size_t>(e - val_)];
}

int LaurentSeries::sector() const {
    const std::int64_t qm1 = f_->q() - 1;
    int sec = -2;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        std::int64_t e = val_ + static_cast<std::int64_t>(k);
        int r = static_cast<int>(((e % qm1) + qm1) % qm1);
        if (sec == -2) sec = r;
        else if (sec != r) return -1;
    }
    return sec == -2 ? 0 : sec;
}

Norm LaurentSeries::norm() const {
    if (is_zero()) throw fail_math("norm of a series that is zero to precision");
    // |w| = |theta|^(-1/(q-1)); leading exponent val gives |f| = |theta|^(-val/(q-1)).
    return Norm::of_exponent(-val_, f_->q() - 1);
}

std::vector<std::pair<std::int64_t, FqElem>> LaurentSeries::nonzero_terms() const {
    std::vector<std::pair<std::int64_t, FqElem>> out;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) out.emplace_back(val_ + static_cast<std::int64_t>(k), c_[k]);
    return out;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    check_same_field(*this, o);
    std::int64_t prec = std::min(prec_, o.prec_);
    std::int64_t lo = std::min(val_, o.val_);
    if (lo >= prec) return zero(f_, prec);
    std::vector<FqElem> v(static_cast<std::size_t>(prec - lo), 0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        std::int64_t e = val_ + static_cast<std::int64_t>(k);
        if (e >= prec) break;
        v[static_cast<std::size_t>(e - lo)] = c_[k];
    }
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
        std::int64_t e = o.val_ + static_cast<std::int64_t>(k);
        if (e >= prec) break;
        std::size_t i = static_cast<std::size_t>(e - lo);
        v[i] = f_->add(v[i], o.c_[k]);
    }
    return LaurentSeries(f_, lo, prec, std::move(v));
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = f_->neg(c);
    return r;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    check_same_field(*this, o);
    // prec(fg) = min(prec_f + val_g, prec_g + val_f); val(fg) >= val_f + val_g.
    std::int64_t prec = std::min(prec_ + o.val_, o.prec_ + val_);
    std::int64_t lo = val_ + o.val_;
    if (is_zero() || o.is_zero() || lo >= prec) return zero(f_, prec);
    if (prec - lo > kMaxWindow)
        throw fail_resource("product window exceeds " + std::to_string(kMaxWindow) +
                            " coefficients");
    std::vector<FqElem> v(static_cast<std::size_t>(prec - lo), 0);
    // Iterate the sparser factor on the outside.
    auto nnz = [](const std::vector<FqElem>& c) {
        return std::count_if(c.begin(), c.end(), [](FqElem x) { return x != 0; });
    };
    const LaurentSeries& a = nnz(c_) <= nnz(o.c_) ? *this : o;
    const LaurentSeries& b = nnz(c_) <= nnz(o.c_) ? o : *this;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        std::int64_t ea = a.val_ + static_cast<std::int64_t>(i);
        std::int64_t jmax = std::min<std::int64_t>(static_cast<std::int64_t>(b.c_.size()),
                                                   prec - ea - b.val_);
        for (std::int64_t j = 0; j < jmax; ++j) {
            if (b.c_[static_cast<std::size_t>(j)] == 0) continue;
            std::size_t k = static_cast<std::size_t>(ea + b.val_ + j - lo);
            v[k] = f_->add(v[k], f_->mul(a.c_[i], b.c_[static_cast<std::size_t>(j)]));
        }
    }
    return LaurentSeries(f_, lo, prec, std::move(v));
}

LaurentSeries LaurentSeries::scaled(FqElem s) const {
    if (s == 0) return zero(f_, prec_);
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = f_->mul(c, s);
    return r;
}

LaurentSeries LaurentSeries::inverse() const {
    if (is_zero()) throw fail_math("inverse of a series that is zero to precision");
    // (sum_k c_k w^(val+k))^(-1) = w^(-val) * (sum c_k w^k)^(-1).
    std::int64_t L = prec_ - val_;
    std::vector<FqElem> b(static_cast<std::size_t>(L), 0);
    FqElem u0 = f_->inv(c_[0]);
    b[0] = u0;
    for (std::int64_t k = 1; k < L; ++k) {
        FqElem s = 0;
        for (std::int64_t j = 1; j <= k; ++j) {
            FqElem cj = c_[static_cast<std::size_t>(j)];
            if (cj == 0) continue;
            s = f_->add(s, f_->mul(cj, b[static_cast<std::size_t>(k - j)]));
        }
        b[static_cast<std::size_t>(k)] = f_->neg(f_->mul(u0, s));
    }
    // val(inv) = -val, prec(inv) = prec - 2*val.
    return LaurentSeries(f_, -val_, prec_ - 2 * val_, std::move(b));
}

LaurentSeries LaurentSeries::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return one(f_, prec_ - val_);
    LaurentSeries base = *this;
    LaurentSeries acc = base;
    // Square-and-multiply, msb first below the top bit.
    int top = 63;
    while (top > 0 && !((e >> top) & 1)) --top;
    for (int i = top - 1; i >= 0; --i) {
        acc = acc * acc;
        if ((e >> i) & 1) acc = acc * base;
    }
    return acc;
}

LaurentSeries LaurentSeries::twist(unsigned n) const {
    if (n == 0) return *this;
    std::int64_t s = 1;
    const std::int64_t q = f_->q();
    for (unsigned i = 0; i < n; ++i) {
        if (s > (std::int64_t(1) << 40)) throw fail_resource("twist exponent scale overflow");
        s *= q;
    }
    // f^(q^n): coefficients are fixed by Frobenius, exponents scale by q^n.
    std::int64_t prec = prec_ * s;
    if (is_zero()) return zero(f_, prec);
    std::int64_t lo = val_ * s;
    if (prec - lo > kMaxWindow)
        throw fail_resource("twisted window exceeds " + std::to_string(kMaxWindow) +
                            " coefficients");
    std::vector<FqElem> v(static_cast<std::size_t>(prec - lo), 0);
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0)
            v[static_cast<std::size_t>(static_cast<std::int64_t>(k) * s)] = c_[k];
    return LaurentSeries(f_, lo, prec, std::move(v));
}

LaurentSeries LaurentSeries::mul_theta_pow(std::int64_t e) const {
    // theta^e = (-1)^e w^(-e(q-1)) is exact, so only the window shifts.
    std::int64_t shift = -e * (f_->q() - 1);
    LaurentSeries r = *this;
    r.val_ += shift;
    r.prec_ += shift;
    if (f_->minus_one_pow(e) != f_->one()) return -r;
    return r;
}

LaurentSeries LaurentSeries::truncated(std::int64_t new_prec) const {
    if (new_prec > prec_) throw fail_math("cannot raise precision by truncation");
    if (new_prec <= val_) return zero(f_, new_prec);
    std::vector<FqElem> v(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(new_prec - val_));
    return LaurentSeries(f_, val_, new_prec, std::move(v));
}

AgreeReport agree_to_precision(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.field().get() != b.field().get())
        throw fail_config("cannot compare series over different fields");
    std::int64_t hi = std::min(a.prec(), b.prec());
    AgreeReport rep{hi, hi <= std::min(a.val(), b.val()), true, std::nullopt};
    std::int64_t lo = std::min(a.val(), b.val());
    for (std::int64_t e = lo; e < hi; ++e) {
        if (a.coeff(e) != b.coeff(e)) {
            rep.equal = false;
            rep.mismatch = e;
            break;
        }
    }
    return rep;
}

std::int64_t vanishes_to(const LaurentSeries& r) {
    return r.is_zero() ? r.prec() : r.val();
}

LaurentSeries mul_by_exact_poly(const LaurentSeries& s, const FqPoly& a) {
    LaurentSeries acc = LaurentSeries::zero(
        s.field(), a.is_zero() ? s.prec() : std::numeric_limits<std::int64_t>::max() / 8);
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) == 0) continue;
        acc = acc + s.mul_theta_pow(i).scaled(a.coeff(i));
    }
    return acc;
}

} // namespace carlitz
