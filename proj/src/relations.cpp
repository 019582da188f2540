#include "carlitz/relations.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "carlitz/errors.hpp"
#include "carlitz/linalg.hpp"
#include "carlitz/tate.hpp"

namespace carlitz {
namespace {

// ---------------------------------------------------------------- targets

struct TargetFactor {
    bool is_pi = false;
    IndexTuple tuple;
    std::int64_t exp = 1;
};

void skip_ws(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

std::int64_t parse_number(const std::string& s, std::size_t& pos) {
    skip_ws(s, pos);
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw fail_config("expected a number in target expression: " + s);
    const std::string digits = s.substr(start, pos - start);
    if (digits.size() > 6) throw fail_config("number too large in target expression: " + s);
    return std::stoll(digits);
}

std::vector<TargetFactor> parse_target(const std::string& expr) {
    std::vector<TargetFactor> out;
    std::size_t pos = 0;
    while (true) {
        skip_ws(expr, pos);
        std::size_t start = pos;
        while (pos < expr.size() && std::isalpha(static_cast<unsigned char>(expr[pos]))) ++pos;
        const std::string word = expr.substr(start, pos - start);
        TargetFactor fac;
        if (word == "pi") {
            fac.is_pi = true;
        } else if (word == "zeta") {
            skip_ws(expr, pos);
            if (pos >= expr.size() || expr[pos] != '(')
                throw fail_config("zeta needs an index tuple: " + expr);
            ++pos;
            while (true) {
                const std::int64_t n = parse_number(expr, pos);
                if (n <= 0) throw fail_config("zeta indices must be positive: " + expr);
                fac.tuple.push_back(static_cast<unsigned>(n));
                skip_ws(expr, pos);
                if (pos < expr.size() && expr[pos] == ',') {
                    ++pos;
                    continue;
                }
                break;
            }
            if (pos >= expr.size() || expr[pos] != ')')
                throw fail_config("unterminated zeta tuple: " + expr);
            ++pos;
        } else {
            throw fail_config("unknown target factor '" + word + "' in: " + expr);
        }
        skip_ws(expr, pos);
        if (pos < expr.size() && expr[pos] == '^') {
            ++pos;
            fac.exp = parse_number(expr, pos);
            if (fac.exp <= 0 || fac.exp > 64)
                throw fail_config("exponent out of range in target expression: " + expr);
        }
        out.push_back(std::move(fac));
        skip_ws(expr, pos);
        if (pos < expr.size() && expr[pos] == '*') {
            ++pos;
            continue;
        }
        break;
    }
    skip_ws(expr, pos);
    if (pos != expr.size())
        throw fail_config("trailing characters in target expression: " + expr);
    if (out.empty()) throw fail_config("empty target expression");
    return out;
}

std::string poly_str(const FqPoly& a) { return a.to_string(); }

} // namespace

std::vector<std::string> split_targets(const std::string& list) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : list) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    for (std::string& s : out) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        if (s.empty()) throw fail_config("empty entry in target list: " + list);
    }
    return out;
}

LaurentSeries eval_target(const FqPtr& f, const std::string& expr, std::int64_t prec,
                          std::int64_t cap) {
    const std::vector<TargetFactor> factors = parse_target(expr);
    const std::int64_t q = static_cast<std::int64_t>(f->q());

    std::int64_t total_val = 0;
    for (const TargetFactor& fac : factors)
        total_val += fac.is_pi ? -q * fac.exp : 0;

    std::optional<LaurentSeries> acc;
    for (const TargetFactor& fac : factors) {
        const std::int64_t v = fac.is_pi ? -q * fac.exp : 0;
        const std::int64_t needed = prec - total_val + v + 2;
        LaurentSeries base = fac.is_pi
                                 ? pi_carlitz(f, needed + (fac.exp - 1) * q)
                                 : mzv(f, fac.tuple, needed, cap);
        LaurentSeries piece = base.pow(fac.exp);
        acc = acc ? *acc * piece : piece;
    }
    if (acc->prec() < prec)
        throw fail_resource("target '" + expr + "' fell short of the requested precision");
    return *acc;
}

RelationCertificate mine(const MiningProblem& prob) {
    const std::size_t m = prob.targets.size();
    if (m == 0 || prob.labels.size() != m)
        throw fail_config("mining needs a nonempty list of labeled targets");
    if (prob.degree_bound < 0) throw fail_config("degree bound must be nonnegative");

    const FqPtr& f = prob.targets[0].field();
    const std::int64_t q = static_cast<std::int64_t>(f->q());
    const std::int64_t D = prob.degree_bound;
    const std::int64_t N = prob.prec;

    std::int64_t minval = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0; j < m; ++j) {
        const LaurentSeries& t = prob.targets[j];
        if (t.field() != f) throw fail_config("targets live over different fields");
        if (t.sector() < 0)
            throw fail_config("target '" + prob.labels[j] +
                              "' mixes w-exponent classes mod q-1; split it first");
        if (t.prec() < N + D * (q - 1))
            throw fail_config("target '" + prob.labels[j] + "' is certified to " +
                              std::to_string(t.prec()) + " w-units but the window needs " +
                              std::to_string(N + D * (q - 1)));
        minval = std::min(minval, t.val());
    }
    const std::int64_t spread = minval < 0 ? -minval : minval;
    const std::int64_t required =
        (D + 2) * (q - 1) * static_cast<std::int64_t>(m) + 2 * spread;
    if (N < required)
        throw fail_config("precision window too small for the degree bound: need N >= " +
                          std::to_string(required) + ", got " + std::to_string(N));

    const std::int64_t lo = minval - D * (q - 1);
    const std::int64_t nrows = N - lo;
    const std::size_t ncols = m * static_cast<std::size_t>(D + 1);
    if (nrows <= static_cast<std::int64_t>(ncols))
        throw fail_config("equation window is under-determined; raise the precision");
    if (nrows > (std::int64_t(1) << 22)) throw fail_resource("equation window too large");

    std::vector<std::vector<FqElem>> rows;
    rows.reserve(static_cast<std::size_t>(nrows));
    for (std::int64_t x = lo; x < N; ++x) {
        std::vector<FqElem> row(ncols, 0);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::int64_t e = 0; e <= D; ++e) {
                const FqElem c = prob.targets[j].coeff(x + e * (q - 1));
                if (c == 0) continue;
                row[j * static_cast<std::size_t>(D + 1) + static_cast<std::size_t>(e)] =
                    f->mul(f->minus_one_pow(static_cast<unsigned>(e)), c);
            }
        }
        rows.push_back(std::move(row));
    }

    const std::vector<std::vector<FqElem>> basis = kernel_fq(f, rows, ncols);

    RelationCertificate cert;
    cert.degree_bound = D;
    cert.prec = N;
    cert.labels = prob.labels;
    cert.kind = basis.empty() ? "none-at-bound" : "kernel";
    for (const std::vector<FqElem>& vec : basis) {
        std::vector<FqPoly> coeffs;
        coeffs.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<FqElem> c(vec.begin() + static_cast<std::ptrdiff_t>(j * (D + 1)),
                                  vec.begin() + static_cast<std::ptrdiff_t>((j + 1) * (D + 1)));
            coeffs.emplace_back(f, std::move(c));
        }
        cert.kernel.push_back(std::move(coeffs));
    }
    for (std::size_t k = 0; k < cert.kernel.size(); ++k)
        cert.confirmations.push_back({k, verify_candidate(prob.targets, cert.kernel[k])});
    return cert;
}

std::int64_t verify_candidate(const std::vector<LaurentSeries>& targets,
                              const std::vector<FqPoly>& coeffs) {
    if (targets.empty() || coeffs.size() != targets.size())
        throw fail_config("candidate vector length does not match the target list");
    const FqPtr& f = targets[0].field();
    LaurentSeries acc = LaurentSeries::zero(f, std::numeric_limits<std::int64_t>::max() / 4);
    for (std::size_t j = 0; j < targets.size(); ++j) {
        if (coeffs[j].is_zero()) continue;
        acc = acc + mul_by_exact_poly(targets[j], coeffs[j]);
    }
    return vanishes_to(acc);
}

void confirm(RelationCertificate& cert, const std::vector<LaurentSeries>& targets_high) {
    cert.confirmations.clear();
    for (std::size_t k = 0; k < cert.kernel.size(); ++k)
        cert.confirmations.push_back({k, verify_candidate(targets_high, cert.kernel[k])});
}

bool kernel_contains(const FqPtr& f, const std::vector<std::vector<FqPoly>>& kernel,
                     const std::vector<FqPoly>& cand, std::int64_t degree_bound) {
    const std::size_t m = cand.size();
    for (const FqPoly& c : cand)
        if (c.degree() > degree_bound) return false;
    bool all_zero = true;
    for (const FqPoly& c : cand) all_zero = all_zero && c.is_zero();
    if (all_zero) return true;
    if (kernel.empty()) return false;

    const std::size_t flat = m * static_cast<std::size_t>(degree_bound + 1);
    std::vector<std::vector<FqElem>> rows(flat, std::vector<FqElem>(kernel.size(), 0));
    std::vector<FqElem> rhs(flat, 0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::int64_t e = 0; e <= degree_bound; ++e) {
            const std::size_t r = j * static_cast<std::size_t>(degree_bound + 1) +
                                  static_cast<std::size_t>(e);
            rhs[r] = cand[j].coeff(static_cast<std::size_t>(e));
            for (std::size_t k = 0; k < kernel.size(); ++k) {
                if (kernel[k].size() != m)
                    throw fail_config("kernel vector length does not match the candidate");
                rows[r][k] = kernel[k][j].coeff(static_cast<std::size_t>(e));
            }
        }
    }
    return solve_fq(f, std::move(rows), rhs, kernel.size()).consistent;
}

std::pair<FqPoly, FqPoly> reduced_ratio(const FqPoly& num, const FqPoly& den) {
    if (den.is_zero()) throw fail_config("ratio with zero denominator");
    const FqPtr& f = den.field();
    if (num.is_zero()) return {FqPoly::zero(f), FqPoly::constant(f, f->one())};
    const FqPoly g = FqPoly::gcd(num, den);
    const FqPoly n1 = num.divrem(g).first;
    const FqPoly d1 = den.divrem(g).first;
    const FqElem s = f->inv(d1.lead());
    return {n1.scaled(s), d1.scaled(s)};
}

namespace {

CheckOutcome outcome(const std::string& name, const std::string& status,
                     const std::string& detail, std::int64_t checked_to) {
    return CheckOutcome{name, status, detail, checked_to};
}

unsigned single_index(const NamedCheckParams& params, const char* what) {
    if (params.idx.size() > 1)
        throw fail_config(std::string(what) + " takes a single index");
    return params.idx.empty() ? 1u : params.idx[0];
}

/// true when value = p^e * base for some e >= 0.
bool p_power_multiple(std::int64_t p, std::int64_t value, std::int64_t base) {
    if (base <= 0 || value <= 0 || value % base != 0) return false;
    std::int64_t quot = value / base;
    while (quot % p == 0) quot /= p;
    return quot == 1;
}

CheckOutcome check_q2_identity(const FqPtr& f, const NamedCheckParams& params) {
    if (f->q() != 2)
        return outcome("q2-identity", "not-applicable", "requires q = 2", 0);
    const std::int64_t P = params.prec;
    const LaurentSeries z11 = mzv(f, IndexTuple{1, 1}, P + 4, params.cap);
    const LaurentSeries z2 = mzv(f, IndexTuple{2}, P + 1, params.cap);
    const FqPoly bracket(f, {0, 1, 1}); // theta^2 + theta
    const LaurentSeries r = mul_by_exact_poly(z11, bracket) - z2;
    if (!r.is_zero())
        return outcome("q2-identity", "fail",
                       "(th^2+th)*zeta(1,1) - zeta(2) has a term at w-exponent " +
                           std::to_string(r.val()),
                       r.val());
    return outcome("q2-identity", "pass", "(th^2+th)*zeta(1,1) = zeta(2)", r.prec());
}

CheckOutcome check_frobenius_p(const FqPtr& f, const NamedCheckParams& params) {
    const unsigned n = single_index(params, "frobenius-p");
    const unsigned p = f->p();
    const std::int64_t P = params.prec;
    const LaurentSeries a = mzv(f, IndexTuple{p * n}, P, params.cap);
    const LaurentSeries b = mzv(f, IndexTuple{n}, P + 2, params.cap).pow(p);
    const AgreeReport rep = agree_to_precision(a, b);
    if (!rep.equal)
        return outcome("frobenius-p", "fail",
                       "zeta(" + std::to_string(p * n) + ") differs from zeta(" +
                           std::to_string(n) + ")^" + std::to_string(p) +
                           " at w-exponent " + std::to_string(*rep.mismatch),
                       rep.checked_to);
    if (rep.vacuous)
        throw fail_inconclusive("empty comparison window in frobenius-p");
    return outcome("frobenius-p", "pass",
                   "zeta(" + std::to_string(p * n) + ") = zeta(" + std::to_string(n) +
                       ")^" + std::to_string(p),
                   rep.checked_to);
}

CheckOutcome check_shuffle(const FqPtr& f, const NamedCheckParams& params) {
    if (params.idx.size() != 2) throw fail_config("shuffle takes two indices");
    const unsigned n1 = params.idx[0];
    const unsigned n2 = params.idx[1];
    const std::int64_t q = static_cast<std::int64_t>(f->q());
    const std::int64_t p = static_cast<std::int64_t>(f->p());

    bool applicable = false;
    for (std::int64_t pe = 1; n1 % pe == 0 && n2 % pe == 0; pe *= p) {
        if (n1 / pe + n2 / pe <= q) {
            applicable = true;
            break;
        }
    }
    if (!applicable)
        return outcome("shuffle", "not-applicable",
                       "needs p^e | n_i with n1/p^e + n2/p^e <= q", 0);

    const std::int64_t P = params.prec;
    const LaurentSeries prod =
        mzv(f, IndexTuple{n1}, P + 2, params.cap) * mzv(f, IndexTuple{n2}, P + 2, params.cap);
    const LaurentSeries sum = mzv(f, IndexTuple{n1, n2}, P + 1, params.cap) +
                              mzv(f, IndexTuple{n2, n1}, P + 1, params.cap) +
                              mzv(f, IndexTuple{n1 + n2}, P + 1, params.cap);
    const AgreeReport rep = agree_to_precision(prod, sum);
    if (!rep.equal)
        return outcome("shuffle", "fail",
                       "zeta(" + std::to_string(n1) + ")*zeta(" + std::to_string(n2) +
                           ") mismatch at w-exponent " + std::to_string(*rep.mismatch),
                       rep.checked_to);
    if (rep.vacuous) throw fail_inconclusive("empty comparison window in shuffle");

    // Series-level version of the same rearrangement, checked on the nested
    // polylogarithms with the interpolation coefficients attached to n1, n2.
    const BiPoly a1 = anderson_thakur(f, n1, params.cap).h;
    const BiPoly a2 = anderson_thakur(f, n2, params.cap).h;
    const std::int64_t dip =
        (q - 1) * (std::max(0, a1.deg_theta()) + std::max(0, a2.deg_theta()));
    const std::int64_t PL = P + dip + 8;
    const std::int64_t T = params.tdeg;
    const TateElem lhs = mcpl(f, {a1}, IndexTuple{n1}, T, PL) *
                         mcpl(f, {a2}, IndexTuple{n2}, T, PL);
    const TateElem rhs = mcpl(f, {a1, a2}, IndexTuple{n1, n2}, T, PL) +
                         mcpl(f, {a2, a1}, IndexTuple{n2, n1}, T, PL) +
                         mcpl(f, {a1 * a2}, IndexTuple{n1 + n2}, T, PL);
    bool series_nonvacuous = false;
    std::int64_t checked = rep.checked_to;
    for (std::int64_t r = 0; r <= T; ++r) {
        const AgreeReport ar = agree_to_precision(lhs.coeff(r), rhs.coeff(r));
        checked = std::min(checked, ar.checked_to);
        if (!ar.equal)
            return outcome("shuffle", "fail",
                           "series form mismatch at t-degree " + std::to_string(r) +
                               ", w-exponent " + std::to_string(*ar.mismatch),
                           ar.checked_to);
        if (!ar.vacuous) series_nonvacuous = true;
    }
    if (!series_nonvacuous)
        throw fail_inconclusive("empty comparison window in the series-level shuffle");
    return outcome("shuffle", "pass",
                   "zeta(" + std::to_string(n1) + ")*zeta(" + std::to_string(n2) +
                       ") = zeta(" + std::to_string(n1) + "," + std::to_string(n2) +
                       ")+zeta(" + std::to_string(n2) + "," + std::to_string(n1) +
                       ")+zeta(" + std::to_string(n1 + n2) +
                       "); series form checked to t-degree " + std::to_string(T),
                   checked);
}

/// Shared tail of the two mining checks: mine {pi^w, zeta(w)}, confirm the
/// kernel at doubled precision, and report the recovered ratio.
CheckOutcome check_even_mining(const FqPtr& f, const std::string& name, unsigned w,
                               const NamedCheckParams& params, bool check_harmonic) {
    const std::int64_t q = static_cast<std::int64_t>(f->q());
    const std::int64_t D = params.degree_bound;

    std::int64_t ct_identity = std::numeric_limits<std::int64_t>::max();
    if (check_harmonic) {
        const unsigned n = w / 2;
        const std::int64_t P = params.prec;
        const LaurentSeries zn = mzv(f, IndexTuple{n}, P + 2, params.cap);
        const LaurentSeries r = zn * zn -
                                mzv(f, IndexTuple{n, n}, P + 1, params.cap)
                                    .scaled(f->from_int(2 % f->p())) -
                                mzv(f, IndexTuple{w}, P + 1, params.cap);
        if (!r.is_zero())
            return outcome(name, "fail",
                           "zeta(" + std::to_string(n) + ")^2 - 2*zeta(" + std::to_string(n) +
                               "," + std::to_string(n) + ") - zeta(" + std::to_string(w) +
                               ") has a term at w-exponent " + std::to_string(r.val()),
                           r.val());
        ct_identity = r.prec();
    }

    const std::int64_t margin =
        (D + 2) * (q - 1) * 2 + 2 * q * static_cast<std::int64_t>(w) + 8;
    const std::int64_t N = std::max(params.prec, margin);
    const std::string pi_label = "pi^" + std::to_string(w);
    const std::string zeta_label = "zeta(" + std::to_string(w) + ")";

    MiningProblem prob;
    prob.labels = {pi_label, zeta_label};
    prob.targets = {eval_target(f, pi_label, N + D * (q - 1), params.cap),
                    eval_target(f, zeta_label, N + D * (q - 1), params.cap)};
    prob.degree_bound = D;
    prob.prec = N;
    RelationCertificate cert = mine(prob);
    if (cert.kind != "kernel")
        return outcome(name, "fail",
                       "no relation of degree <= " + std::to_string(D) + " between " +
                           pi_label + " and " + zeta_label,
                       N);

    const std::int64_t N2 = 2 * N;
    confirm(cert, {eval_target(f, pi_label, N2 + D * (q - 1), params.cap),
                   eval_target(f, zeta_label, N2 + D * (q - 1), params.cap)});
    for (const Confirmation& c : cert.confirmations) {
        if (c.residual_val < N2)
            return outcome(name, "fail",
                           "kernel vector " + std::to_string(c.vector_index) +
                               " refuted at doubled precision (residual " +
                               std::to_string(c.residual_val) + " < " + std::to_string(N2) + ")",
                           c.residual_val);
    }

    const std::vector<FqPoly>& vec = cert.kernel[0];
    if (vec[1].is_zero())
        return outcome(name, "fail", "degenerate kernel vector ignores " + zeta_label, N);
    const auto ratio = reduced_ratio(-vec[0], vec[1]);
    return outcome(name, "pass",
                   zeta_label + " = (" + poly_str(ratio.first) + ")/(" +
                       poly_str(ratio.second) + ") * " + pi_label,
                   std::min(ct_identity, N2));
}

CheckOutcome check_euler_like(const FqPtr& f, const NamedCheckParams& params) {
    const unsigned n = single_index(params, "euler-like");
    const std::int64_t q = static_cast<std::int64_t>(f->q());
    if (!p_power_multiple(f->p(), 2 * static_cast<std::int64_t>(n), q - 1))
        return outcome("euler-like", "not-applicable", "needs 2n = p^e * (q-1)", 0);
    return check_even_mining(f, "euler-like", 2 * n, params, true);
}

CheckOutcome check_carlitz_even(const FqPtr& f, const NamedCheckParams& params) {
    const unsigned n = single_index(params, "carlitz-even");
    if (!is_even(f, n))
        return outcome("carlitz-even", "not-applicable", "needs (q-1) | n", 0);
    return check_even_mining(f, "carlitz-even", n, params, false);
}

CheckOutcome check_chang(const FqPtr& f, const NamedCheckParams& params) {
    IndexTuple idx = params.idx;
    if (idx.empty()) idx.push_back(1);
    const ChangReport r0 = chang_eval(f, idx, 0, params.prec, params.cap);
    const ChangReport r1 = chang_eval(f, idx, 1, params.prec, params.cap);
    const std::int64_t checked = std::min(r0.checked_to, r1.checked_to);
    if (!r0.match || !r1.match)
        return outcome("chang", "fail",
                       std::string("deformation specialization mismatch at twist level ") +
                           (r0.match ? "1" : "0"),
                       checked);
    return outcome("chang", "pass",
                   "deformation value matches the zeta side at twist levels 0 and 1",
                   checked);
}

} // namespace

CheckOutcome named_check(const FqPtr& f, const std::string& name,
                         const NamedCheckParams& params) {
    if (params.prec <= 0) throw fail_config("check precision must be positive");
    if (name == "q2-identity") return check_q2_identity(f, params);
    if (name == "frobenius-p") return check_frobenius_p(f, params);
    if (name == "shuffle") return check_shuffle(f, params);
    if (name == "euler-like") return check_euler_like(f, params);
    if (name == "carlitz-even") return check_carlitz_even(f, params);
    if (name == "chang") return check_chang(f, params);
    throw fail_config("unknown check '" + name +
                      "'; expected one of euler-like, carlitz-even, q2-identity, "
                      "frobenius-p, shuffle, chang");
}

} // namespace carlitz
