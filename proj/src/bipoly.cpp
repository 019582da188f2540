#include "carlitz/bipoly.hpp"

#include <algorithm>
#include <cctype>

#include "carlitz/errors.hpp"

namespace carlitz {

BiPoly::BiPoly(FqPtr f, std::vector<FqPoly> tcoeffs) : f_(std::move(f)), c_(std::move(tcoeffs)) {
    normalize();
}

void BiPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::constant(FqPtr f, FqElem c) {
    if (c == 0) return zero(std::move(f));
    std::vector<FqPoly> v{FqPoly::constant(f, c)};
    return BiPoly(std::move(f), std::move(v));
}

BiPoly BiPoly::from_theta_poly(const FqPoly& a) {
    if (a.is_zero()) return zero(a.field());
    return BiPoly(a.field(), {a});
}

BiPoly BiPoly::monomial(FqPtr f, FqElem c, unsigned theta_exp, unsigned t_exp) {
    if (c == 0) return zero(std::move(f));
    std::vector<FqPoly> v(t_exp + 1, FqPoly::zero(f));
    v[t_exp] = FqPoly::monomial(f, c, theta_exp);
    return BiPoly(std::move(f), std::move(v));
}

BiPoly BiPoly::t_minus_theta_qpow(FqPtr f, unsigned j) {
    unsigned long long e = 1;
    for (unsigned i = 0; i < j; ++i) {
        e *= f->q();
        if (e > (1ull << 40)) throw fail_resource("theta exponent overflow in t - theta^(q^j)");
    }
    std::vector<FqPoly> v{FqPoly::monomial(f, f->neg(f->one()), static_cast<unsigned>(e)),
                          FqPoly::constant(f, f->one())};
    return BiPoly(std::move(f), std::move(v));
}

int BiPoly::deg_theta() const {
    int d = -1;
    for (const auto& p : c_) d = std::max(d, p.degree());
    return d;
}

FqPoly BiPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return FqPoly::zero(f_);
    return c_[static_cast<std::size_t>(i)];
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    std::vector<FqPoly> v;
    std::size_t n = std::max(c_.size(), o.c_.size());
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FqPoly s = FqPoly::zero(f_);
        if (i < c_.size()) s = s + c_[i];
        if (i < o.c_.size()) s = s + o.c_[i];
        v.push_back(std::move(s));
    }
    return BiPoly(f_, std::move(v));
}

BiPoly BiPoly::operator-() const {
    std::vector<FqPoly> v;
    v.reserve(c_.size());
    for (const auto& p : c_) v.push_back(-p);
    return BiPoly(f_, std::move(v));
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(f_);
    std::vector<FqPoly> v(c_.size() + o.c_.size() - 1, FqPoly::zero(f_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            v[i + j] = v[i + j] + c_[i] * o.c_[j];
        }
    }
    return BiPoly(f_, std::move(v));
}

bool BiPoly::operator==(const BiPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

BiPoly BiPoly::scaled(FqElem s) const {
    if (s == 0) return zero(f_);
    std::vector<FqPoly> v;
    v.reserve(c_.size());
    for (const auto& p : c_) v.push_back(p.scaled(s));
    return BiPoly(f_, std::move(v));
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly acc = constant(f_, f_->one());
    BiPoly base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

BiPoly BiPoly::twist(unsigned e) const {
    std::vector<FqPoly> v;
    v.reserve(c_.size());
    for (const auto& p : c_) v.push_back(p.twist(e));
    return BiPoly(f_, std::move(v));
}

FqPoly BiPoly::eval_t_theta_qpow(unsigned N) const {
    unsigned long long s = 1;
    for (unsigned i = 0; i < N; ++i) {
        s *= f_->q();
        if (s > (1ull << 40)) throw fail_resource("substitution exponent overflow");
    }
    FqPoly acc = FqPoly::zero(f_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        unsigned long long e = s * i;
        if (e > (1ull << 40)) throw fail_resource("substitution exponent overflow");
        acc = acc + c_[i] * FqPoly::monomial(f_, f_->one(), static_cast<unsigned>(e));
    }
    return acc;
}

std::string BiPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = deg_t(); i >= 0; --i) {
        const FqPoly& p = c_[static_cast<std::size_t>(i)];
        if (p.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += p.to_string();
            continue;
        }
        if (!(p.degree() == 0 && p.coeff(0) == f_->one())) {
            std::string coeff = p.to_string();
            bool needs_parens = coeff.find('+') != std::string::npos;
            out += needs_parens ? "(" + coeff + ")" : coeff;
            out += "*";
        }
        out += "t";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

namespace {

// Token stream for the tiny polynomial expression language.
struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

class Parser {
public:
    Parser(FqPtr f, const std::string& text) : f_(std::move(f)), lx_{text, 0} {}

    BiPoly run() {
        BiPoly r = expr();
        if (!lx_.eof())
            throw fail_config("unexpected character '" + std::string(1, lx_.peek()) +
                              "' in polynomial expression");
        return r;
    }

private:
    BiPoly expr() {
        bool neg = false;
        while (true) {
            if (lx_.accept('+')) continue;
            if (lx_.accept('-')) { neg = !neg; continue; }
            break;
        }
        BiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (lx_.accept('+')) acc = acc + term();
            else if (lx_.accept('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    BiPoly term() {
        BiPoly acc = factor();
        while (lx_.accept('*')) acc = acc * factor();
        return acc;
    }

    BiPoly factor() {
        BiPoly base = atom();
        if (lx_.accept('^')) {
            unsigned long long e = number();
            if (e > 4096) throw fail_config("exponent too large in polynomial expression");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    BiPoly atom() {
        if (lx_.accept('(')) {
            BiPoly r = expr();
            if (!lx_.accept(')')) throw fail_config("missing ')' in polynomial expression");
            return r;
        }
        if (lx_.accept('-')) return -atom();
        char c = lx_.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned long long n = number();
            return BiPoly::constant(f_, static_cast<FqElem>(n % f_->p()));
        }
        // 'th' must be tried before bare 't'.
        if (c == 't') {
            ++lx_.pos;
            if (lx_.pos < lx_.s.size() && lx_.s[lx_.pos] == 'h') {
                ++lx_.pos;
                return BiPoly::monomial(f_, f_->one(), 1, 0);
            }
            return BiPoly::monomial(f_, f_->one(), 0, 1);
        }
        if (c == 'g') {
            ++lx_.pos;
            if (f_->m() < 2)
                throw fail_config("'g' denotes a proper extension element; field is prime");
            return BiPoly::constant(f_, static_cast<FqElem>(f_->p()));
        }
        throw fail_config("cannot parse polynomial expression at '" + std::string(1, c) + "'");
    }

    unsigned long long number() {
        lx_.skip_ws();
        if (lx_.pos >= lx_.s.size() || !std::isdigit(static_cast<unsigned char>(lx_.s[lx_.pos])))
            throw fail_config("expected a number in polynomial expression");
        unsigned long long n = 0;
        while (lx_.pos < lx_.s.size() && std::isdigit(static_cast<unsigned char>(lx_.s[lx_.pos]))) {
            n = n * 10 + static_cast<unsigned long long>(lx_.s[lx_.pos] - '0');
            if (n > (1ull << 40)) throw fail_config("number too large in polynomial expression");
            ++lx_.pos;
        }
        return n;
    }

    FqPtr f_;
    Lexer lx_;
};

} // namespace

BiPoly BiPoly::parse(FqPtr f, const std::string& text) {
    return Parser(std::move(f), text).run();
}

} // namespace carlitz
