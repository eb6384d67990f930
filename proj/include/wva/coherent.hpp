#pragma once

#include <complex>
#include <vector>

#include "wva/errors.hpp"

namespace wva {

using Complex = std::complex<double>;

bool is_finite(Complex z);

/// Overlap <a|b> of two coherent states, computed as
/// exp(-|a-b|^2/2 + i Im(conj(a) b)). The difference form avoids the
/// cancellation the textbook exponent -|a|^2/2 - |b|^2/2 + conj(a) b
/// suffers at large amplitudes. |result| <= 1 always.
Complex coherent_overlap(Complex a, Complex b);

struct CoherentTerm {
    Complex coeff;
    Complex amplitude;
};

/// Truncated number-basis vector. `tail` is the probability mass the cutoff
/// discards, measured against the exact Gram-sum norm of the source state.
struct FockVector {
    int cutoff = 0;
    std::vector<Complex> amps; // size cutoff + 1
    double tail = 0.0;

    double norm_sq() const;
    double norm() const;
    Complex inner(const FockVector& other) const; // <this|other>
    Complex expect_a() const;                     // <a> via ladder elements
    double expect_n() const;
    FockVector normalized() const;
};

/// Finite superposition sum_k c_k |beta_k> of coherent states. Values are
/// immutable after construction and safe to share across threads.
class CoherentSuperposition {
public:
    // normalized=true asserts unit norm (checked to 1e-12).
    explicit CoherentSuperposition(std::vector<CoherentTerm> terms,
                                   bool normalized = false);

    static CoherentSuperposition vacuum();
    static CoherentSuperposition coherent(Complex beta);

    const std::vector<CoherentTerm>& terms() const { return terms_; }
    bool is_normalized() const { return normalized_; }

    /// sqrt of the pairwise-overlap Gram sum. The symmetric reduction keeps
    /// the imaginary part identically zero; a real part below -1e-12 is a
    /// numerical degeneracy and throws.
    double norm() const;

    /// Copy with coefficients scaled to unit norm.
    CoherentSuperposition normalized() const;

    /// <psi|a|psi>; requires a normalized state.
    Complex expect_a() const;

    /// <psi|n|psi>; requires a normalized state.
    double expect_n() const;

    /// Applies the inverse displacement: each |beta> maps to
    /// e^{i Im(beta conj(g))} |beta - g>. The phase convention is pinned by a
    /// matrix-exponential test in the number basis.
    CoherentSuperposition displaced(Complex g) const;

private:
    std::vector<CoherentTerm> terms_;
    bool normalized_ = false;

    double norm_sq() const;
};

/// Cutoff heuristic: Poisson concentration puts essentially all mass of
/// |beta> below |beta|^2 + 10 |beta| + 20.
int suggested_cutoff(const CoherentSuperposition& s);

/// Number-basis expansion with per-term amplitudes e^{-|b|^2/2} b^n/sqrt(n!).
/// Throws CutoffError (with a suggested cutoff) when the discarded tail mass
/// exceeds tail_tol, and refuses |beta| > 30 where factorial-scale recurrences
/// get unwieldy; the analytic path has no such limit.
FockVector to_fock(const CoherentSuperposition& s, int cutoff,
                   double tail_tol = 1e-12);

} // namespace wva
