#include "carlitz/fq.hpp"

#include <array>
#include <map>
#include <mutex>

namespace carlitz {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Fixed moduli for the extension fields with p^m <= 64, m >= 2.
// Coefficients ascending; leading coefficient (degree m) is 1.
struct ModEntry {
    unsigned p, m;
    std::array<std::uint8_t, 7> c; // up to degree 6
};

constexpr ModEntry kModuli[] = {
    {2, 2, {1, 1, 1, 0, 0, 0, 0}},          // x^2 + x + 1
    {2, 3, {1, 1, 0, 1, 0, 0, 0}},          // x^3 + x + 1
    {2, 4, {1, 1, 0, 0, 1, 0, 0}},          // x^4 + x + 1
    {2, 5, {1, 0, 1, 0, 0, 1, 0}},          // x^5 + x^2 + 1
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},          // x^6 + x^4 + x^3 + x + 1
    {3, 2, {2, 2, 1, 0, 0, 0, 0}},          // x^2 + 2x + 2
    {3, 3, {1, 2, 0, 1, 0, 0, 0}},          // x^3 + 2x + 1
    {5, 2, {2, 4, 1, 0, 0, 0, 0}},          // x^2 + 4x + 2
    {7, 2, {3, 6, 1, 0, 0, 0, 0}},          // x^2 + 6x + 3
};

std::vector<std::uint8_t> decode(unsigned v, unsigned p, unsigned m) {
    std::vector<std::uint8_t> d(m, 0);
    for (unsigned i = 0; i < m; ++i) {
        d[i] = static_cast<std::uint8_t>(v % p);
        v /= p;
    }
    return d;
}

unsigned encode(const std::vector<std::uint8_t>& d, unsigned p) {
    unsigned v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

} // namespace

std::pair<unsigned, unsigned> factor_prime_power(unsigned q) {
    if (q < 2 || q > 64) throw fail_config("q must be a prime power in [2, 64], got " + std::to_string(q));
    unsigned p = 0;
    for (unsigned d = 2; d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    unsigned m = 0, t = q;
    while (t > 1) {
        if (t % p != 0) throw fail_config(std::to_string(q) + " is not a prime power");
        t /= p;
        ++m;
    }
    if (!is_prime(p)) throw fail_config(std::to_string(q) + " is not a prime power");
    return {p, m};
}

Fq::Fq(unsigned q) {
    auto [p, m] = factor_prime_power(q);
    p_ = p;
    m_ = m;
    q_ = q;

    if (m_ == 1) {
        modulus_ = {0, 1};
    } else {
        bool found = false;
        for (const auto& e : kModuli) {
            if (e.p == p_ && e.m == m_) {
                modulus_.assign(e.c.begin(), e.c.begin() + m_);
                modulus_.push_back(1);
                found = true;
                break;
            }
        }
        if (!found) throw fail_config("no modulus on record for q=" + std::to_string(q));
    }

    add_.assign(64 * 64, 0);
    mul_.assign(64 * 64, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);

    for (unsigned a = 0; a < q_; ++a) {
        auto da = decode(a, p_, m_);
        std::vector<std::uint8_t> dn(m_);
        for (unsigned i = 0; i < m_; ++i) dn[i] = static_cast<std::uint8_t>((p_ - da[i]) % p_);
        neg_[a] = static_cast<FqElem>(encode(dn, p_));
        for (unsigned b = 0; b < q_; ++b) {
            auto db = decode(b, p_, m_);
            std::vector<std::uint8_t> ds(m_);
            for (unsigned i = 0; i < m_; ++i) ds[i] = static_cast<std::uint8_t>((da[i] + db[i]) % p_);
            add_[idx(static_cast<FqElem>(a), static_cast<FqElem>(b))] =
                static_cast<FqElem>(encode(ds, p_));

            // Product in F_p[x], then reduction modulo the modulus.
            std::vector<unsigned> prod(2 * m_ - 1, 0);
            for (unsigned i = 0; i < m_; ++i)
                for (unsigned j = 0; j < m_; ++j) prod[i + j] += da[i] * db[j];
            for (std::size_t k = prod.size(); k-- > m_;) {
                unsigned c = prod[k] % p_;
                prod[k] = 0;
                if (c == 0) continue;
                for (unsigned i = 0; i < m_; ++i) {
                    unsigned sub = (c * modulus_[i]) % p_;
                    prod[k - m_ + i] = (prod[k - m_ + i] + p_ - sub) % p_;
                }
            }
            std::vector<std::uint8_t> dp(m_);
            for (unsigned i = 0; i < m_; ++i) dp[i] = static_cast<std::uint8_t>(prod[i] % p_);
            mul_[idx(static_cast<FqElem>(a), static_cast<FqElem>(b))] =
                static_cast<FqElem>(encode(dp, p_));
        }
    }

    // Inverse table doubles as an irreducibility check: the quotient ring is a
    // field iff every nonzero residue has a multiplicative inverse.
    for (unsigned a = 1; a < q_; ++a) {
        FqElem found = 0;
        for (unsigned b = 1; b < q_; ++b) {
            if (mul_[idx(static_cast<FqElem>(a), static_cast<FqElem>(b))] == 1) {
                found = static_cast<FqElem>(b);
                break;
            }
        }
        if (found == 0) throw fail_config("modulus for q=" + std::to_string(q) + " is not irreducible");
        inv_[a] = found;
    }
}

std::shared_ptr<const Fq> Fq::make(unsigned q) {
    static std::mutex mu;
    static std::map<unsigned, std::shared_ptr<const Fq>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<const Fq>(new Fq(q));
    cache.emplace(q, f);
    return f;
}

FqElem Fq::inv(FqElem a) const {
    if (a == 0) throw fail_math("division by zero in F_q");
    return inv_[a];
}

FqElem Fq::pow(FqElem a, long long e) const {
    if (e == 0) return 1;
    if (a == 0) {
        if (e < 0) throw fail_math("division by zero in F_q");
        return 0;
    }
    // The multiplicative group has order q - 1.
    long long r = e % static_cast<long long>(q_ - 1);
    if (r < 0) r += q_ - 1;
    FqElem acc = 1, base = a;
    unsigned long long k = static_cast<unsigned long long>(r);
    while (k) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

FqElem Fq::binom_mod_p(unsigned long long top, unsigned long long bot) const {
    if (bot > top) return 0;
    // Lucas: multiply binomials of base-p digits; any digit overflow gives 0.
    unsigned long long r = 1;
    unsigned long long n = top, k = bot;
    while (k > 0 || n > 0) {
        unsigned nd = static_cast<unsigned>(n % p_);
        unsigned kd = static_cast<unsigned>(k % p_);
        if (kd > nd) return 0;
        // Small binomial C(nd, kd) with nd < p <= 61.
        unsigned long long c = 1;
        for (unsigned i = 0; i < kd; ++i) c = c * (nd - i) / (i + 1);
        r = (r * (c % p_)) % p_;
        n /= p_;
        k /= p_;
    }
    return static_cast<FqElem>(r % p_);
}

} // namespace carlitz
