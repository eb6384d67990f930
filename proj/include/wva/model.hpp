#pragma once

#include <vector>

#include "wva/coherent.hpp"

namespace wva {

/// Knobs of the coupled-interferometer setup: a single-photon "system" in a
/// slightly imbalanced Mach-Zehnder writes a cross-Kerr phase phi0 per photon
/// onto a coherent probe |alpha>, and the probe phase is read out in a second
/// interferometer with reference phase theta.
struct SetupParams {
    double phi0 = 0.0;   // cross-phase per system photon, rad
    Complex alpha = 0.0; // probe amplitude in the Kerr arm
    double delta = 0.0;  // post-selection parameter (t - r)/sqrt(2), t > r
    bool compensate_back_phase = false;
    double theta = 1.5707963267948966; // readout phase, rad

    // |phi0| capped at 0.1 (weak-interaction regime; zero and negative values
    // are accepted so no-interaction and sign-flip cases stay expressible).
    // delta in [0, 1/sqrt2): t, r real non-negative with t >= r.
    void validate() const;

    double transmissivity() const; // t = (sqrt(2 - 2 d^2) + sqrt(2) d) / 2
    double reflectivity() const;   // r = (sqrt(2 - 2 d^2) - sqrt(2) d) / 2
};

/// Residual back-action phase: distance of |alpha|^2 phi0 from the nearest
/// multiple of 2 pi, in (-pi, pi]. Zero when the compensation shifter is on.
double epsilon_of(const SetupParams& params);

struct WeakValue {
    double exact;  // t / (sqrt(2) delta)
    double approx; // 1 / (2 delta)
};

/// Weak value of the system photon number in the Kerr arm,
/// <f|n_b|i> / <f|i>. Accepts delta in (0, 1/sqrt2]; at the top boundary the
/// post-selected state is the arm itself and the weak value is exactly 1.
WeakValue weak_value_photon_number(double delta);

struct PostSelectionResult {
    double p_exact;  // squared Gram norm of the conditional probe state
    double p_approx; // |alpha|^2 phi0^2/4 + delta^2 + epsilon^2/4
    double epsilon;
    CoherentSuperposition probe_state; // normalized two-term superposition
    bool weak_regime; // delta^2 >= 10 (epsilon^2 + |alpha|^2 phi0^2)/4
};

/// Projects the joint state onto the nearly-dark detection port. The
/// conditional probe is (t |alpha e^{i phi0}> - r |alpha>)/sqrt(2) before
/// normalization; with compensation on, the Kerr-arm coefficient carries an
/// extra e^{-i |alpha|^2 phi0} from the system-side phase shifter.
PostSelectionResult post_select(const SetupParams& params);

/// The conditional probe pulled back to the phase-space origin,
/// chi = D^dag(alpha) |psi_p>. In the weak regime its number-basis content is
/// dominated by vacuum and a single photon.
CoherentSuperposition displaced_probe(const SetupParams& params);

struct ReadoutResult {
    double m_minus;           // <n_3> - <n_2>
    double m_plus;            // <n_3> + <n_2>
    double phase_exact;       // inverted probe phase, rad
    double phase_first_order; // (delta / 2 p_exact) phi0
    double enhancement;       // phase_exact / phi0 (0 when phi0 == 0)
};

/// Readout interferometer: input sqrt(2) alpha splits 50/50, the Kerr arm
/// carries the post-selected probe superposition, the reference arm carries
/// alpha e^{i theta}; detector expectations follow from
///   <M_-> = 2 Re(conj(gamma) <a>),  <M_+> = <n> + |gamma|^2,
/// which are exact for a coherent reference. The phase inversion
///   phase = (theta - pi/2) + asin(<M_->/<M_+>)
/// is exact for a pure coherent probe and reduces to the small-angle ratio at
/// the theta = pi/2 operating point.
ReadoutResult mz_readout(const SetupParams& params);

/// Post-selection parameter that maximizes the measured phase:
/// sqrt(|alpha|^2 phi0^2 + epsilon^2) / 2.
double optimal_delta(const SetupParams& params);

/// Cross-check of optimal_delta: argmax of the exact readout enhancement over
/// a log grid (200 points per decade) spanning two decades either side.
double optimal_delta_numeric(const SetupParams& params);

enum class SweepAxis { Alpha2, Delta };

struct EnhancementPoint {
    double x;
    double enhancement;     // exact readout
    double weak_prediction; // 1 / (2 delta)
};

/// Evaluates the exact enhancement along a monotone grid of either probe
/// intensity |alpha|^2 or post-selection parameter delta. Grid points are
/// independent and evaluated concurrently.
std::vector<EnhancementPoint> enhancement_sweep(const SetupParams& base,
                                                SweepAxis axis,
                                                const std::vector<double>& grid);

} // namespace wva
