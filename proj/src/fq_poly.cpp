#include "carlitz/fq_poly.hpp"

#include <sstream>

namespace carlitz {

FqPoly::FqPoly(FqPtr f, std::vector<FqElem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    for (FqElem c : c_)
        if (!f_->is_elem(c)) throw fail_config("polynomial coefficient out of range");
    normalize();
}

FqPoly FqPoly::constant(FqPtr f, FqElem c) {
    FqPoly r(std::move(f));
    if (c != 0) r.c_ = {c};
    return r;
}

FqPoly FqPoly::monomial(FqPtr f, FqElem c, std::size_t deg) {
    FqPoly r(std::move(f));
    if (c != 0) {
        r.c_.assign(deg + 1, 0);
        r.c_[deg] = c;
    }
    return r;
}

void FqPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
    FqPoly r(f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f_->add(coeff(i), o.coeff(i));
    r.normalize();
    return r;
}

FqPoly FqPoly::operator-(const FqPoly& o) const { return *this + (-o); }

FqPoly FqPoly::operator-() const {
    FqPoly r(f_);
    r.c_ = c_;
    for (auto& c : r.c_) c = f_->neg(c);
    return r;
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
    FqPoly r(f_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] = f_->add(r.c_[i + j], f_->mul(c_[i], o.c_[j]));
        }
    }
    r.normalize();
    return r;
}

FqPoly FqPoly::scaled(FqElem s) const {
    FqPoly r(f_);
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& c : r.c_) c = f_->mul(c, s);
    r.normalize();
    return r;
}

FqPoly FqPoly::pow(unsigned long long e) const {
    FqPoly acc = FqPoly::constant(f_, 1);
    FqPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::pair<FqPoly, FqPoly> FqPoly::divrem(const FqPoly& div) const {
    if (div.is_zero()) throw fail_math("polynomial division by zero");
    FqPoly q(f_), r = *this;
    if (degree() < div.degree()) return {q, r};
    q.c_.assign(c_.size() - div.c_.size() + 1, 0);
    FqElem linv = f_->inv(div.lead());
    while (!r.is_zero() && r.degree() >= div.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - div.degree());
        FqElem s = f_->mul(r.lead(), linv);
        q.c_[shift] = s;
        for (std::size_t i = 0; i < div.c_.size(); ++i)
            r.c_[shift + i] = f_->sub(r.c_[shift + i], f_->mul(s, div.c_[i]));
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

FqPoly FqPoly::gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = a.divrem(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FqPoly FqPoly::twist(unsigned e) const {
    if (is_zero() || e == 0) return *this;
    unsigned long long s = 1;
    for (unsigned i = 0; i < e; ++i) {
        s *= f_->q();
        if (s > (1ull << 40)) throw fail_resource("twist exponent overflow in polynomial");
    }
    FqPoly r(f_);
    r.c_.assign(static_cast<std::size_t>(degree()) * s + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * s] = c_[i];
    r.normalize();
    return r;
}

FqPoly FqPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(f_->inv(lead()));
}

std::string FqPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << static_cast<unsigned>(c_[i]);
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace carlitz
