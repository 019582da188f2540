#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carlitz/bipoly.hpp"
#include "carlitz/special.hpp"
#include "carlitz/tate.hpp"

namespace carlitz {

/// One stored entry of the coefficient matrix Phi, kept pre-twist:
/// (t - theta)^tpow, optionally times the inverse-twisted alpha with the
/// given index. The inverse twist is never materialized; the verifier works
/// with the once-twisted entry, which is the exact polynomial
/// (t - theta^q)^tpow * alpha.
struct PhiEntry {
    std::int64_t tpow = 0;
    std::optional<std::size_t> alpha;
};

enum class CheckStatus { Pass, Fail, Inconclusive };

const char* to_string(CheckStatus s);

/// Outcome of comparing one matrix entry of Psi against (Phi^(1) Psi^(1)).
struct EntryReport {
    std::size_t i = 0;
    std::size_t j = 0;
    CheckStatus status = CheckStatus::Inconclusive;
    /// w-exponents below this were certified equal across all t-degrees.
    std::int64_t prec_checked = 0;
    /// First differing w-exponent and the t-degree carrying it, when failing.
    std::optional<std::int64_t> mismatch;
    std::optional<std::int64_t> mismatch_tdeg;
};

/// det Phi = unit * (t - theta)^exponent, checked exactly (via the twisted
/// matrix, whose determinant is the twist of det Phi).
struct DetReport {
    bool ok = false;
    std::int64_t exponent = 0;
    FqElem unit = 1;
};

struct VerificationReport {
    CheckStatus status = CheckStatus::Inconclusive;
    /// Entries were compared at every t-degree in [0, tdeg_checked].
    std::int64_t tdeg_checked = -1;
    /// Minimum certified w-precision over all compared coefficients.
    std::int64_t prec_checked = 0;
    DetReport det;
    std::vector<EntryReport> entries;
};

/// A coupled pair of matrices (Phi, Psi): Phi exact and lower-triangular
/// over F_q[theta, t] (stored symbolically, pre-twist), Psi lower-triangular
/// with Tate-algebra entries built from omega powers and the nested
/// polylogarithm series. verify() checks the trivialization equation in
/// forward-twisted form, Psi = Phi^(1) Psi^(1), entry by entry on the
/// certified windows.
class MotiveSystem {
public:
    /// The (r+1) x (r+1) single-index system for weight n and coefficient
    /// polynomials alphas = (a_1, ..., a_r); r = 0 gives the 1 x 1 system
    /// [(t-theta)^n] / [Omega^n].
    static MotiveSystem depth_one(const FqPtr& f, const std::vector<BiPoly>& alphas,
                                  unsigned n, std::int64_t tdeg, std::int64_t prec);

    /// The (d+1) x (d+1) system for the index tuple idx = (n_1, ..., n_d)
    /// with one coefficient polynomial per index entry.
    static MotiveSystem general(const FqPtr& f, const IndexTuple& idx,
                                const std::vector<BiPoly>& alphas, std::int64_t tdeg,
                                std::int64_t prec);

    const FqPtr& field() const noexcept { return f_; }
    std::size_t dim() const noexcept { return dim_; }
    std::int64_t tdeg() const noexcept { return tdeg_; }
    std::int64_t wprec() const noexcept { return prec_; }
    const IndexTuple& index() const noexcept { return idx_; }
    const std::vector<BiPoly>& alphas() const noexcept { return alphas_; }

    /// Stored Phi entry; nullopt marks an exact zero.
    const std::optional<PhiEntry>& phi(std::size_t i, std::size_t j) const;
    /// Stored Psi entry; nullopt marks an exact zero.
    const std::optional<TateElem>& psi(std::size_t i, std::size_t j) const;

    /// Once-twisted Phi entry as an exact polynomial; zero when absent.
    BiPoly phi_twist1(std::size_t i, std::size_t j) const;

    /// Adds w^wexp to the t^r coefficient of Psi_{ij} (soundness probes);
    /// wexp must lie inside that coefficient's certified window.
    void corrupt_psi(std::size_t i, std::size_t j, std::int64_t r, std::int64_t wexp);

    VerificationReport verify() const;

private:
    MotiveSystem(FqPtr f, std::size_t dim, std::int64_t tdeg, std::int64_t prec);

    FqPtr f_;
    std::size_t dim_;
    std::int64_t tdeg_;
    std::int64_t prec_;
    IndexTuple idx_;
    std::vector<BiPoly> alphas_;
    std::vector<std::vector<std::optional<PhiEntry>>> phi_;
    std::vector<std::vector<std::optional<TateElem>>> psi_;
};

} // namespace carlitz
