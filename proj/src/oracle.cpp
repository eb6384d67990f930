#include "wva/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wva {

namespace {

// Number-basis amplitudes of |beta| built by the e^{-|b|^2/2} b^n/sqrt(n!)
// recurrence, with the truncation tail measured directly.
std::vector<Complex> coherent_amps(Complex beta, int cutoff, double* tail) {
    std::vector<Complex> amps(size_t(cutoff) + 1);
    Complex a = std::exp(-0.5 * std::norm(beta));
    amps[0] = a;
    double mass = std::norm(a);
    for (int n = 1; n <= cutoff; ++n) {
        a *= beta / std::sqrt(double(n));
        amps[size_t(n)] = a;
        mass += std::norm(a);
    }
    if (tail) *tail = std::max(1.0 - mass, 0.0);
    return amps;
}

} // namespace

double OracleReport::max_deviation() const {
    return std::max({p_deviation(), phase_deviation(), state_distance});
}

OracleReport fock_oracle(const SetupParams& params, int cutoff) {
    params.validate();
    if (std::abs(params.alpha) > 5.0) {
        throw std::invalid_argument(
            "brute-force oracle is restricted to |alpha| <= 5");
    }
    const CoherentSuperposition probe_for_cutoff =
        CoherentSuperposition::coherent(params.alpha);
    if (cutoff <= 0) cutoff = suggested_cutoff(probe_for_cutoff);

    const double alpha2 = std::norm(params.alpha);
    const double t = params.transmissivity();
    const double r = params.reflectivity();

    OracleReport rep;
    rep.cutoff = cutoff;

    // |Psi> = (|b>|probe after Kerr> - |a>|alpha>) / sqrt(2), with the
    // Kerr-arm component multiplied termwise by e^{i phi0 n}. The
    // compensation shifter contributes a global e^{-i |alpha|^2 phi0} on the
    // |b> branch.
    std::vector<Complex> arm_a = coherent_amps(params.alpha, cutoff, &rep.tail);
    if (rep.tail > 1e-12) {
        std::ostringstream os;
        os << "cutoff " << cutoff << " leaves tail mass " << rep.tail;
        throw CutoffError(os.str(), suggested_cutoff(probe_for_cutoff));
    }
    std::vector<Complex> arm_b = arm_a;
    for (int n = 0; n <= cutoff; ++n) {
        arm_b[size_t(n)] *= std::polar(1.0, params.phi0 * n);
    }
    Complex b_branch = 1.0;
    if (params.compensate_back_phase) {
        b_branch = std::polar(1.0, -alpha2 * params.phi0);
    }

    // Projection onto <f| = t<b| + r<a|.
    FockVector conditional;
    conditional.cutoff = cutoff;
    conditional.amps.resize(size_t(cutoff) + 1);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (int n = 0; n <= cutoff; ++n) {
        conditional.amps[size_t(n)] =
            inv_sqrt2 * (t * b_branch * arm_b[size_t(n)] - r * arm_a[size_t(n)]);
    }
    rep.p_oracle = conditional.norm_sq();

    const PostSelectionResult post = post_select(params);
    rep.p_analytic = post.p_exact;

    const FockVector probe_oracle = conditional.normalized();
    const FockVector probe_analytic = to_fock(post.probe_state, cutoff);
    rep.state_distance = 1.0 - std::abs(probe_oracle.inner(probe_analytic));

    // Same readout identities as the analytic path, with <a> and <n> rebuilt
    // from ladder matrix elements in the number basis.
    const Complex gamma = params.alpha * std::polar(1.0, params.theta);
    const double m_minus = 2.0 * std::real(std::conj(gamma) * probe_oracle.expect_a());
    const double m_plus = probe_oracle.expect_n() + std::norm(gamma);
    if (m_plus <= 0.0) throw NoLightError("oracle readout sees no light");
    const double ratio = std::clamp(m_minus / m_plus, -1.0, 1.0);
    rep.phase_oracle = (params.theta - 0.5 * std::numbers::pi) + std::asin(ratio);
    rep.phase_analytic = mz_readout(params).phase_exact;

    return rep;
}

} // namespace wva
