#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "carlitz/fq_poly.hpp"
#include "carlitz/laurent.hpp"
#include "carlitz/special.hpp"

namespace carlitz {

/// A degree-bounded linear-relation search: does some nonzero vector
/// (p_1, ..., p_m) with p_j in F_q[theta], deg p_j <= degree_bound, satisfy
/// sum_j p_j * targets[j] = 0?
struct MiningProblem {
    std::vector<std::string> labels;
    std::vector<LaurentSeries> targets;
    std::int64_t degree_bound = 0; // max deg_theta of the coefficients
    std::int64_t prec = 0;         // top of the equation window, in w-units
};

struct Confirmation {
    std::size_t vector_index = 0;
    std::int64_t residual_val = 0; // certified vanishing level of the combination
};

/// Either a kernel basis of candidate relations (each vector re-checked via
/// its confirmation residual) or an exact "none-at-bound" certificate: any
/// true relation at this degree bound would have appeared in the kernel,
/// because truncating an exact zero gives zero rows.
struct RelationCertificate {
    std::string kind; // "kernel" | "none-at-bound"
    std::int64_t degree_bound = 0;
    std::int64_t prec = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<FqPoly>> kernel;
    std::vector<Confirmation> confirmations;
};

/// Mines the kernel of the truncated system. Requires every target to be
/// certified to prec + degree_bound*(q-1) w-units so all equation rows are
/// exact, each target to be sector-pure, and the window to clear the
/// over-determination margin.
RelationCertificate mine(const MiningProblem& prob);

/// Certified vanishing level of sum_j coeffs[j] * targets[j]: its valuation
/// when visible, otherwise the combination's precision.
std::int64_t verify_candidate(const std::vector<LaurentSeries>& targets,
                              const std::vector<FqPoly>& coeffs);

/// Recomputes each kernel vector's confirmation residual against the same
/// targets evaluated at higher precision.
void confirm(RelationCertificate& cert, const std::vector<LaurentSeries>& targets_high);

/// Whether cand lies in the F_q-span of the kernel vectors (all coefficient
/// degrees must stay <= degree_bound).
bool kernel_contains(const FqPtr& f, const std::vector<std::vector<FqPoly>>& kernel,
                     const std::vector<FqPoly>& cand, std::int64_t degree_bound);

/// num/den reduced to lowest terms with den monic.
std::pair<FqPoly, FqPoly> reduced_ratio(const FqPoly& num, const FqPoly& den);

/// Target mini-language: a product of factors `pi` and `zeta(n1,...,nd)`,
/// each with an optional positive exponent `^k`, joined by `*`. The result
/// is certified to at least `prec` w-units.
LaurentSeries eval_target(const FqPtr& f, const std::string& expr, std::int64_t prec,
                          std::int64_t cap);

/// Splits "pi^2,zeta(1)^2,zeta(1,1)" on commas outside parentheses.
std::vector<std::string> split_targets(const std::string& list);

struct NamedCheckParams {
    IndexTuple idx;                 // index arguments of the check
    std::int64_t prec = 200;        // w-precision of the identity window
    std::int64_t tdeg = 16;         // t-truncation for series-level identities
    std::int64_t degree_bound = 6;  // mining depth for checks that mine
    std::int64_t cap = 4096;        // enumeration cap
};

struct CheckOutcome {
    std::string name;
    std::string status; // "pass" | "fail" | "not-applicable"
    std::string detail;
    std::int64_t checked_to = 0;
};

/// Named identity checks: "q2-identity", "frobenius-p", "shuffle",
/// "euler-like", "carlitz-even", "chang". A violated precondition yields
/// status "not-applicable", never failure.
CheckOutcome named_check(const FqPtr& f, const std::string& name,
                         const NamedCheckParams& params);

} // namespace carlitz
