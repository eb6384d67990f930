#pragma once

#include "wva/model.hpp"

namespace wva {

/// Side-by-side results of the analytic coherent-state path and the
/// truncated number-basis brute force.
struct OracleReport {
    double p_analytic = 0.0;
    double p_oracle = 0.0;
    double phase_analytic = 0.0;
    double phase_oracle = 0.0;
    double state_distance = 0.0; // 1 - |<oracle probe | analytic probe>|
    int cutoff = 0;
    double tail = 0.0;

    double p_deviation() const { return std::abs(p_oracle - p_analytic); }
    double phase_deviation() const { return std::abs(phase_oracle - phase_analytic); }
    double max_deviation() const;
};

/// Brute-force check built from first principles: the two-level system is
/// tensored with a truncated number-basis probe, the coupling multiplies the
/// Kerr-arm component by e^{i phi0 n}, and the projection onto t<b| + r<a|
/// yields probability, conditional probe, and readout phase without any
/// coherent-state identities. Restricted to |alpha| <= 5; cutoff 0 picks the
/// Poisson-concentration heuristic. Throws CutoffError when the truncation
/// tail exceeds 1e-12.
OracleReport fock_oracle(const SetupParams& params, int cutoff = 0);

} // namespace wva
