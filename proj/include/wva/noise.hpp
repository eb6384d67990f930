#pragma once

#include <cstdint>
#include <vector>

#include "wva/model.hpp"

namespace wva {

/// Per-sample phase noise: delta-correlated quantum (shot) noise of variance
/// shot_var = 1/(2 |alpha|^2), plus technical noise of amplitude eta_bar with
/// exponential correlation over time tau_c.
struct NoiseModel {
    double eta_bar = 0.0;  // rad
    double tau_c = 1.0;    // s
    double shot_var = 0.0; // rad^2

    void validate() const;
};

/// Experiment schedule: single photons arrive at rate gamma for a total time,
/// each detection triggering one phase sample; post_prob < 1 keeps samples by
/// Bernoulli thinning. The seed is combined with the realization index so
/// ensembles shard across workers deterministically.
struct RunConfig {
    double gamma = 1.0;      // Hz
    double total_time = 1.0; // s
    double post_prob = 1.0;  // (0, 1]
    std::uint64_t seed = 0;
    int realizations = 1;

    void validate() const;
};

/// Closed-form variance of the mean of n_samples phase samples whose
/// covariance is shot_var delta_ij + eta_bar^2 r^|i-j|:
///   shot_var/N + (eta^2/N^2) [N + 2 (N r/(1-r) - r (1-r^N)/(1-r)^2)].
/// n_samples may be non-integral (continuous idealization used by the SNR
/// curves, where the retained sample count P Gamma T need not be whole).
/// Requires 0 <= r < 1.
double mean_phase_variance(double n_samples, double r, const NoiseModel& noise);

/// One simulated run: round(gamma total_time) events at uniform spacing
/// 1/gamma, technical noise evolved as a stationary AR(1) chain over event
/// times, Bernoulli thinning with post_prob retaining true event times, shot
/// noise drawn per retained sample. Returns the mean retained phase. The
/// output is a bit-reproducible function of (noise, run, true_phase,
/// realization).
double simulate_run(const NoiseModel& noise, const RunConfig& run,
                    double true_phase, std::uint64_t realization = 0);

struct EnsembleStats {
    double mean = 0.0;
    double variance = 0.0;
    double mean_stderr = 0.0;
    double variance_stderr = 0.0;
    int realizations = 0;
};

/// Runs run.realizations independent runs (sharded across workers) and
/// reduces with compensated summation in index order, so the result does not
/// depend on the worker count.
EnsembleStats simulate_ensemble(const NoiseModel& noise, const RunConfig& run,
                                double true_phase);

enum class SnrVariant { NonPostSelected, PostSelected, QuantumLimited };

const char* to_string(SnrVariant v);

struct SnrPoint {
    double gamma = 0.0;
    double snr = 0.0;
    double snr_stderr = 0.0; // Monte Carlo only; NaN for analytic points
    SnrVariant variant = SnrVariant::NonPostSelected;
};

/// Analytic SNR versus photon rate.
///   non-post-selected: signal phi0,              N = Gamma T, r = e^{-1/(Gamma tau_c)}
///   post-selected:     signal (delta/2P) phi0,   N = P Gamma T, r = e^{-1/(P Gamma tau_c)}
///   quantum-limited:   technical noise off, otherwise as non-post-selected.
/// P is the exact post-selection probability of `setup`.
std::vector<SnrPoint> snr_curve(const SetupParams& setup, const NoiseModel& noise,
                                const RunConfig& run_template,
                                const std::vector<double>& gammas,
                                SnrVariant variant);

/// Knee rate of an SNR curve: intersection of the sqrt(Gamma) asymptote
/// fitted on the first fit_window points with the plateau fitted on the last
/// fit_window points. Points must be sorted by increasing gamma.
double detect_knee(const std::vector<SnrPoint>& points, int fit_window = 10);

} // namespace wva
