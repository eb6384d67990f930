#include "wva/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wva/parallel.hpp"

namespace wva {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

} // namespace

void SetupParams::validate() const {
    if (!std::isfinite(phi0) || std::abs(phi0) > 0.1) {
        throw std::invalid_argument("setup.phi0 must be finite with |phi0| <= 0.1");
    }
    if (!is_finite(alpha)) {
        throw std::invalid_argument("setup.alpha must be finite");
    }
    if (!std::isfinite(delta) || delta < 0.0 || delta >= kInvSqrt2) {
        throw std::invalid_argument("setup.delta must lie in [0, 1/sqrt(2))");
    }
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("setup.theta must be finite");
    }
}

double SetupParams::transmissivity() const {
    return 0.5 * (std::sqrt(2.0 - 2.0 * delta * delta) + kSqrt2 * delta);
}

double SetupParams::reflectivity() const {
    return 0.5 * (std::sqrt(2.0 - 2.0 * delta * delta) - kSqrt2 * delta);
}

double epsilon_of(const SetupParams& params) {
    params.validate();
    if (params.compensate_back_phase) return 0.0;
    const double back_phase = std::norm(params.alpha) * params.phi0;
    double eps = std::remainder(back_phase, 2.0 * kPi);
    if (eps <= -kPi) eps = kPi; // land on (-pi, pi]
    return eps;
}

WeakValue weak_value_photon_number(double delta) {
    if (!std::isfinite(delta) || delta <= 0.0 || delta > kInvSqrt2) {
        throw std::invalid_argument(
            "weak value is modeled for delta in (0, 1/sqrt(2)]");
    }
    const double t = 0.5 * (std::sqrt(2.0 - 2.0 * delta * delta) + kSqrt2 * delta);
    return {t / (kSqrt2 * delta), 1.0 / (2.0 * delta)};
}

PostSelectionResult post_select(const SetupParams& params) {
    params.validate();
    const double alpha2 = std::norm(params.alpha);
    const double half_t = params.transmissivity() * kInvSqrt2;
    const double half_r = params.reflectivity() * kInvSqrt2;

    Complex kerr_coeff = half_t;
    if (params.compensate_back_phase) {
        kerr_coeff *= std::polar(1.0, -alpha2 * params.phi0);
    }
    const Complex kerr_amp = params.alpha * std::polar(1.0, params.phi0);

    CoherentSuperposition unnorm(
        {{kerr_coeff, kerr_amp}, {Complex(-half_r), params.alpha}});
    const double nrm = unnorm.norm();
    const double p_exact = nrm * nrm;
    if (p_exact < 1e-30) {
        throw DegeneratePostSelectionError(
            "post-selection probability vanished (perfect dark port)");
    }

    const double eps = epsilon_of(params);
    const double p_approx = 0.25 * alpha2 * params.phi0 * params.phi0 +
                            params.delta * params.delta + 0.25 * eps * eps;
    const double back = 0.25 * (eps * eps + alpha2 * params.phi0 * params.phi0);
    const bool weak = params.delta * params.delta >= 10.0 * back;

    return {p_exact, p_approx, eps, unnorm.normalized(), weak};
}

CoherentSuperposition displaced_probe(const SetupParams& params) {
    return post_select(params).probe_state.displaced(params.alpha);
}

ReadoutResult mz_readout(const SetupParams& params) {
    const PostSelectionResult post = post_select(params);
    const Complex gamma = params.alpha * std::polar(1.0, params.theta);

    const Complex mean_a = post.probe_state.expect_a();
    const double mean_n = post.probe_state.expect_n();

    ReadoutResult out{};
    out.m_minus = 2.0 * std::real(std::conj(gamma) * mean_a);
    out.m_plus = mean_n + std::norm(gamma);
    if (out.m_plus <= 0.0) {
        throw NoLightError("readout detectors see no light");
    }

    const double ratio = std::clamp(out.m_minus / out.m_plus, -1.0, 1.0);
    out.phase_exact = (params.theta - 0.5 * kPi) + std::asin(ratio);
    out.phase_first_order = params.delta / (2.0 * post.p_exact) * params.phi0;
    out.enhancement = params.phi0 != 0.0 ? out.phase_exact / params.phi0 : 0.0;
    return out;
}

double optimal_delta(const SetupParams& params) {
    const double eps = epsilon_of(params);
    const double w = std::abs(params.alpha) * params.phi0;
    return 0.5 * std::sqrt(w * w + eps * eps);
}

double optimal_delta_numeric(const SetupParams& params) {
    const double d0 = optimal_delta(params);
    if (d0 <= 0.0) {
        throw std::invalid_argument(
            "numerical argmax needs a nonzero interaction");
    }
    const double lo = std::max(d0 / 100.0, 1e-9);
    const double hi = std::min(d0 * 100.0, 0.7);
    const int points =
        std::max(2, int(std::ceil(200.0 * std::log10(hi / lo))) + 1);

    SetupParams p = params;
    const double step = std::log(hi / lo) / (points - 1);
    double best = -1.0, best_delta = lo;
    for (int i = 0; i < points; ++i) {
        p.delta = lo * std::exp(step * i);
        const double phase = std::abs(mz_readout(p).phase_exact);
        if (phase > best) {
            best = phase;
            best_delta = p.delta;
        }
    }
    return best_delta;
}

std::vector<EnhancementPoint> enhancement_sweep(const SetupParams& base,
                                                SweepAxis axis,
                                                const std::vector<double>& grid) {
    base.validate();
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
    const bool increasing = grid.size() < 2 || grid[1] > grid[0];
    for (size_t i = 1; i < grid.size(); ++i) {
        if (increasing ? grid[i] <= grid[i - 1] : grid[i] >= grid[i - 1]) {
            throw std::invalid_argument("sweep grid must be strictly monotone");
        }
    }

    const double alpha_phase = std::arg(base.alpha);
    std::vector<EnhancementPoint> out(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        SetupParams p = base;
        const double x = grid[i];
        if (axis == SweepAxis::Alpha2) {
            if (x < 0.0) throw std::invalid_argument("|alpha|^2 must be >= 0");
            p.alpha = std::polar(std::sqrt(x), alpha_phase);
        } else {
            p.delta = x;
        }
        out[i] = {x, mz_readout(p).enhancement, 1.0 / (2.0 * p.delta)};
    });
    return out;
}

} // namespace wva
