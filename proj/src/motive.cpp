#include "carlitz/motive.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "carlitz/errors.hpp"

namespace carlitz {
namespace {

void check_alpha_norms(const FqPtr& f, const std::vector<BiPoly>& alphas,
                       const std::vector<unsigned>& weights) {
    const std::int64_t q = static_cast<std::int64_t>(f->q());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const std::int64_t d = std::max(0, alphas[i].deg_theta());
        if ((q - 1) * d >= q * static_cast<std::int64_t>(weights[i]))
            throw fail_config("coefficient polynomial " + std::to_string(i + 1) +
                              " violates the norm bound (q-1)*deg_theta < q*n");
    }
}

/// Working w-precision: entries are products of omega powers (coefficient
/// valuations >= 0) with nested polylog series whose coefficient valuations
/// can dip to -(q-1)*sum deg_theta(alpha); pad by that dip plus a margin.
std::int64_t working_prec(const FqPtr& f, const std::vector<BiPoly>& alphas,
                          std::int64_t prec) {
    std::int64_t dip = 0;
    for (const BiPoly& a : alphas) dip += std::max(0, a.deg_theta());
    return prec + (static_cast<std::int64_t>(f->q()) - 1) * dip + 8;
}

BiPoly laplace_det(const FqPtr& f, const std::vector<std::vector<BiPoly>>& m,
                   std::vector<std::size_t> cols) {
    const std::size_t row = m.size() - cols.size();
    if (cols.empty()) return BiPoly::constant(f, 1);
    BiPoly acc = BiPoly::zero(f);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const BiPoly& piv = m[row][cols[c]];
        if (piv.is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (k != c) rest.push_back(cols[k]);
        BiPoly sub = piv * laplace_det(f, m, std::move(rest));
        acc = (c % 2 == 0) ? acc + sub : acc - sub;
    }
    return acc;
}

} // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "inconclusive";
    }
}

MotiveSystem::MotiveSystem(FqPtr f, std::size_t dim, std::int64_t tdeg, std::int64_t prec)
    : f_(std::move(f)), dim_(dim), tdeg_(tdeg), prec_(prec) {
    if (dim_ == 0) throw fail_config("matrix dimension must be positive");
    if (tdeg_ < 0) throw fail_config("t-truncation degree must be nonnegative");
    if (prec_ <= 0) throw fail_config("w-precision must be positive");
    phi_.assign(dim_, std::vector<std::optional<PhiEntry>>(dim_));
    psi_.assign(dim_, std::vector<std::optional<TateElem>>(dim_));
}

MotiveSystem MotiveSystem::depth_one(const FqPtr& f, const std::vector<BiPoly>& alphas,
                                     unsigned n, std::int64_t tdeg, std::int64_t prec) {
    if (n == 0) throw fail_config("weight must be positive");
    check_alpha_norms(f, alphas, std::vector<unsigned>(alphas.size(), n));

    const std::size_t r = alphas.size();
    MotiveSystem sys(f, r + 1, tdeg, prec);
    sys.idx_ = IndexTuple{n};
    sys.alphas_ = alphas;

    const std::int64_t wp = working_prec(f, alphas, prec);
    const TateElem omega_n = omega(f, tdeg, wp).pow(n);

    sys.phi_[0][0] = PhiEntry{static_cast<std::int64_t>(n), std::nullopt};
    sys.psi_[0][0] = omega_n;
    for (std::size_t i = 1; i <= r; ++i) {
        sys.phi_[i][i] = PhiEntry{0, std::nullopt};
        sys.phi_[i][0] = PhiEntry{static_cast<std::int64_t>(n), i - 1};
        sys.psi_[i][i] = TateElem::one(f, tdeg, wp);
        sys.psi_[i][0] =
            omega_n * mcpl(f, {alphas[i - 1]}, IndexTuple{n}, tdeg, wp);
    }
    return sys;
}

MotiveSystem MotiveSystem::general(const FqPtr& f, const IndexTuple& idx,
                                   const std::vector<BiPoly>& alphas, std::int64_t tdeg,
                                   std::int64_t prec) {
    check_index_tuple(idx);
    if (alphas.size() != idx.size())
        throw fail_config("need one coefficient polynomial per index entry");
    check_alpha_norms(f, alphas, idx);

    const std::size_t d = idx.size();
    MotiveSystem sys(f, d + 1, tdeg, prec);
    sys.idx_ = idx;
    sys.alphas_ = alphas;

    const std::int64_t wp = working_prec(f, alphas, prec);

    // nsum[j] = n_{j+1} + ... + n_d in 1-based terms; nsum[d] = 0.
    std::vector<std::int64_t> nsum(d + 1, 0);
    for (std::size_t j = d; j-- > 0;) nsum[j] = nsum[j + 1] + idx[j];

    const TateElem om = omega(f, tdeg, wp);
    for (std::size_t i = 0; i <= d; ++i) {
        sys.phi_[i][i] = PhiEntry{nsum[i], std::nullopt};
        if (i < d) sys.phi_[i + 1][i] = PhiEntry{nsum[i], i};
        const TateElem om_pow = om.pow(static_cast<unsigned>(nsum[i]));
        for (std::size_t j = 0; j <= i; ++j) {
            const std::vector<BiPoly> sub_alphas(alphas.begin() + static_cast<std::ptrdiff_t>(j),
                                                 alphas.begin() + static_cast<std::ptrdiff_t>(i));
            const IndexTuple sub_idx(idx.begin() + static_cast<std::ptrdiff_t>(j),
                                     idx.begin() + static_cast<std::ptrdiff_t>(i));
            const TateElem om_j = (j == i) ? om_pow : om.pow(static_cast<unsigned>(nsum[j]));
            sys.psi_[i][j] = om_j * mcpl(f, sub_alphas, sub_idx, tdeg, wp);
        }
    }
    return sys;
}

const std::optional<PhiEntry>& MotiveSystem::phi(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) throw fail_config("matrix index out of range");
    return phi_[i][j];
}

const std::optional<TateElem>& MotiveSystem::psi(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) throw fail_config("matrix index out of range");
    return psi_[i][j];
}

BiPoly MotiveSystem::phi_twist1(std::size_t i, std::size_t j) const {
    const std::optional<PhiEntry>& e = phi(i, j);
    if (!e) return BiPoly::zero(f_);
    BiPoly out = BiPoly::t_minus_theta_qpow(f_, 1).pow(static_cast<unsigned>(e->tpow));
    if (e->alpha) out = out * alphas_[*e->alpha];
    return out;
}

void MotiveSystem::corrupt_psi(std::size_t i, std::size_t j, std::int64_t r,
                               std::int64_t wexp) {
    if (i >= dim_ || j >= dim_ || !psi_[i][j])
        throw fail_config("no stored entry at the requested position");
    const TateElem& e = *psi_[i][j];
    const LaurentSeries& c = e.coeff(r);
    if (wexp >= c.prec())
        throw fail_config("corruption exponent lies outside the certified window");
    std::vector<LaurentSeries> coeffs;
    coeffs.reserve(static_cast<std::size_t>(e.tdeg() + 1));
    for (std::int64_t k = 0; k <= e.tdeg(); ++k) {
        if (k == r)
            coeffs.push_back(c + LaurentSeries::monomial(f_, 1, wexp, c.prec()));
        else
            coeffs.push_back(e.coeff(k));
    }
    psi_[i][j] = TateElem(f_, e.tdeg(), std::move(coeffs), e.bound());
}

VerificationReport MotiveSystem::verify() const {
    VerificationReport rep;
    rep.tdeg_checked = tdeg_;
    rep.prec_checked = std::numeric_limits<std::int64_t>::max();

    // Exact determinant check on the twisted matrix: det Phi^(1) must be
    // unit * (t - theta^q)^E with E the sum of the diagonal exponents.
    std::int64_t det_exp = 0;
    std::vector<std::vector<BiPoly>> tw(dim_, std::vector<BiPoly>(dim_, BiPoly::zero(f_)));
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) tw[i][j] = phi_twist1(i, j);
        if (!phi_[i][i]) throw fail_config("matrix is missing a diagonal entry");
        det_exp += phi_[i][i]->tpow;
    }
    std::vector<std::size_t> cols(dim_);
    for (std::size_t c = 0; c < dim_; ++c) cols[c] = c;
    const BiPoly det = laplace_det(f_, tw, std::move(cols));
    rep.det.exponent = det_exp;
    if (det.deg_t() == det_exp) {
        const FqPoly top = det.coeff(static_cast<int>(det_exp));
        if (top.degree() == 0) {
            const FqElem unit = top.coeff(0);
            const BiPoly expected =
                BiPoly::t_minus_theta_qpow(f_, 1).pow(static_cast<unsigned>(det_exp)).scaled(unit);
            if (unit != 0 && det == expected) {
                rep.det.ok = true;
                rep.det.unit = unit;
            }
        }
    }

    bool any_fail = !rep.det.ok;
    bool any_inconclusive = false;

    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::optional<TateElem> rhs;
            for (std::size_t k = j; k <= i; ++k) {
                if (!phi_[i][k] || !psi_[k][j]) continue;
                TateElem term = psi_[k][j]->twist(1).mul_bipoly(phi_twist1(i, k));
                rhs = rhs ? *rhs + term : std::move(term);
            }
            if (!psi_[i][j] && !rhs) continue; // structural zero on both sides

            auto zero_like = [&](const TateElem& shape) {
                std::vector<LaurentSeries> z;
                z.reserve(static_cast<std::size_t>(shape.tdeg() + 1));
                for (std::int64_t r = 0; r <= shape.tdeg(); ++r)
                    z.push_back(LaurentSeries::zero(f_, shape.coeff(r).prec()));
                return TateElem(f_, shape.tdeg(), std::move(z),
                                ValBound::exact_constant(static_cast<std::int64_t>(f_->q()),
                                                         ValBound::kInf));
            };
            const TateElem lhs = psi_[i][j] ? *psi_[i][j] : zero_like(*rhs);
            const TateElem rh = rhs ? *rhs : zero_like(lhs);

            EntryReport er;
            er.i = i;
            er.j = j;
            bool nonvacuous = false;
            bool mismatch = false;
            std::int64_t entry_prec = std::numeric_limits<std::int64_t>::max();
            const std::int64_t m = std::min(lhs.tdeg(), rh.tdeg());
            for (std::int64_t r = 0; r <= m; ++r) {
                const AgreeReport ar = agree_to_precision(lhs.coeff(r), rh.coeff(r));
                entry_prec = std::min(entry_prec, ar.checked_to);
                if (!ar.equal && !mismatch) {
                    mismatch = true;
                    er.mismatch = ar.mismatch;
                    er.mismatch_tdeg = r;
                }
                if (!ar.vacuous) nonvacuous = true;
            }
            er.prec_checked = entry_prec;
            if (mismatch)
                er.status = CheckStatus::Fail;
            else if (nonvacuous)
                er.status = CheckStatus::Pass;
            else
                er.status = CheckStatus::Inconclusive;
            any_fail = any_fail || er.status == CheckStatus::Fail;
            any_inconclusive = any_inconclusive || er.status == CheckStatus::Inconclusive;
            rep.tdeg_checked = std::min(rep.tdeg_checked, m);
            rep.prec_checked = std::min(rep.prec_checked, entry_prec);
            rep.entries.push_back(er);
        }
    }

    rep.status = any_fail          ? CheckStatus::Fail
                 : any_inconclusive ? CheckStatus::Inconclusive
                                    : CheckStatus::Pass;
    return rep;
}

} // namespace carlitz
