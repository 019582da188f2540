#pragma once

#include <cstdint>
#include <vector>

#include "carlitz/tate.hpp"

namespace carlitz {

/// Weights (n_1, ..., n_d) of a multizeta value; all >= 1, depth >= 1
/// (except where an empty tuple is explicitly allowed).
using IndexTuple = std::vector<unsigned>;

void check_index_tuple(const IndexTuple& idx);

/// "even" iff (q-1) divides n; the function-field parity.
bool is_even(const FqPtr& f, unsigned n);

/// D_i = prod_{j=0}^{i-1} (theta^(q^i) - theta^(q^j)); D_0 = 1.
FqPoly d_factor(const FqPtr& f, unsigned i);

/// Carlitz factorial Gamma_n from the base-q digits of n-1; Gamma_n = 1 for
/// 1 <= n <= q.
FqPoly carlitz_factorial(const FqPtr& f, unsigned n);

/// S_i(n) = sum of a^(-n) over the q^i monic polynomials a of degree i,
/// by direct enumeration. Errors when q^i exceeds `cap`.
LaurentSeries power_sum(const FqPtr& f, unsigned i, unsigned n, std::int64_t prec,
                        std::int64_t cap);

/// Certified lower bound (q-1)(n*i + q^i - 1) on val_w(S_i(n)), from the
/// vanishing of the moments sum_{deg b < i} b^m for m < q^i - 1.
std::int64_t power_sum_val_floor(const FqPtr& f, unsigned i, unsigned n);

/// Smallest I such that every multizeta term with leading index > I is
/// O(w^prec), per the power-sum valuation floor.
unsigned zeta_cutoff(const FqPtr& f, unsigned n1, std::int64_t prec);

/// zeta(n_1, ..., n_d) = sum over i_1 > ... > i_d >= 0 of prod_j S_{i_j}(n_j),
/// truncated at the certified cutoff.
LaurentSeries mzv(const FqPtr& f, const IndexTuple& idx, std::int64_t prec, std::int64_t cap);

/// Independent check: enumerate tuples of monics with strictly decreasing
/// degrees, deg a_1 <= maxdeg, and sum the reciprocals directly. Agrees with
/// mzv up to valuation n_1*(maxdeg+1)*(q-1).
LaurentSeries mzv_bruteforce_oracle(const FqPtr& f, const IndexTuple& idx, unsigned maxdeg,
                                    std::int64_t prec, std::int64_t cap);

/// The Carlitz period: (-theta)^(q/(q-1)) * prod_{i>=1} (1 - theta^(1-q^i))^(-1),
/// with val_w = -q.
LaurentSeries pi_carlitz(const FqPtr& f, std::int64_t prec);

/// Omega_i = (-theta)^(-q/(q-1)) * prod_{j>i} (1 - t/theta^(q^j)): the Omega
/// function with the first i product factors removed. Satisfies
/// Omega / prod_{l=1}^{i} (t - theta^(q^l)) = (-1)^i theta^(-(q+...+q^i)) Omega_i.
/// Carries the exact coefficient-valuation bound q + q^(i+r+1) - q^(i+1).
TateElem omega_shifted(const FqPtr& f, unsigned i, std::int64_t tdeg, std::int64_t prec);

/// Omega itself (the i = 0 case).
TateElem omega(const FqPtr& f, std::int64_t tdeg, std::int64_t prec);

/// Carlitz multiple polylogarithm series L_{alpha, n}(t), nested over
/// i_1 > ... > i_d >= 0 with numerators alpha_j^(i_j) and denominators
/// ((t-theta^q)...(t-theta^(q^{i_j})))^{n_j}. Enforces the convergence norm
/// condition (q-1)*deg_theta(alpha_j) < n_j*q. Empty tuples give 1.
TateElem mcpl(const FqPtr& f, const std::vector<BiPoly>& alphas, const IndexTuple& idx,
              std::int64_t tdeg, std::int64_t prec);

/// Interpolation polynomial H_{n-1} with (H_{n-1} Omega^n)^(i)(theta)
/// = Gamma_n S_i(n) / pi^n and deg_theta constrained by the strict norm bound
/// |H|_inf < |theta|^(nq/(q-1)).
struct ATPoly {
    BiPoly h;
    unsigned n;
    bool unique;          // the interpolation system had a trivial kernel
    unsigned fitted_to;   // identity imposed for i = 0..fitted_to
    unsigned verified_to; // identity re-checked for i = fitted_to+1..verified_to
};

ATPoly anderson_thakur(const FqPtr& f, unsigned n, std::int64_t cap);

/// Both sides of the evaluation identity
///   (Omega^w L_{H(n),n})(theta^(q^N)) = (Gamma_{n_1}...Gamma_{n_d}
///       zeta(n_1,...,n_d) / pi^w)^(q^N),   w = n_1 + ... + n_d,
/// computed by independent routes, plus the certified comparison.
struct ChangReport {
    LaurentSeries lhs;
    LaurentSeries rhs;
    bool match;
    std::int64_t checked_to;
};

ChangReport chang_eval(const FqPtr& f, const IndexTuple& idx, unsigned N, std::int64_t prec,
                       std::int64_t cap);

} // namespace carlitz
