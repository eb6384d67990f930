#include "wva/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wva/parallel.hpp"

namespace wva {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Self-contained generator so runs are bit-reproducible regardless of the
// standard library's distribution implementations.
class PhaseRng {
public:
    PhaseRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = splitmix64(seed ^ 0x632BE59BD9B4E019ULL);
        state_ = splitmix64(state_ + stream);
        if (state_ == 0) state_ = 0x4D595DF4D0F33173ULL;
    }

    double uniform() { // (0, 1)
        return (double(next() >> 11) + 0.5) * 0x1p-53;
    }

    double gauss() { // Box-Muller with cached spare
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double m = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = m * std::sin(a);
        has_spare_ = true;
        return m * std::cos(a);
    }

private:
    std::uint64_t next() { // xorshift64*
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace

void NoiseModel::validate() const {
    if (!(eta_bar >= 0.0) || !std::isfinite(eta_bar)) {
        throw std::invalid_argument("noise.eta_bar must be >= 0");
    }
    if (!(tau_c > 0.0) || !std::isfinite(tau_c)) {
        throw std::invalid_argument("noise.tau_c must be > 0");
    }
    if (!(shot_var >= 0.0) || !std::isfinite(shot_var)) {
        throw std::invalid_argument("noise.shot_var must be >= 0");
    }
}

void RunConfig::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("run.gamma must be > 0");
    }
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw std::invalid_argument("run.total_time must be > 0");
    }
    if (!(post_prob > 0.0) || post_prob > 1.0) {
        throw std::invalid_argument("run.post_prob must lie in (0, 1]");
    }
    if (gamma * total_time < 1.0) {
        throw std::invalid_argument("run needs gamma * total_time >= 1");
    }
    if (post_prob < 1.0 && post_prob * gamma * total_time < 1.0) {
        throw std::invalid_argument(
            "post-selected run needs post_prob * gamma * total_time >= 1");
    }
    if (realizations < 1) {
        throw std::invalid_argument("run.realizations must be >= 1");
    }
}

double mean_phase_variance(double n_samples, double r, const NoiseModel& noise) {
    noise.validate();
    if (!(n_samples > 0.0) || !std::isfinite(n_samples)) {
        throw std::invalid_argument("sample count must be > 0");
    }
    if (!(r >= 0.0) || r >= 1.0) {
        throw std::invalid_argument("correlation factor must lie in [0, 1)");
    }
    const double n = n_samples;
    // Geometric double sum over the covariance kernel; verified against the
    // direct O(N^2) summation in the tests.
    const double bracket =
        n + 2.0 * (n * r / (1.0 - r) -
                   r * (1.0 - std::pow(r, n)) / ((1.0 - r) * (1.0 - r)));
    return noise.shot_var / n + noise.eta_bar * noise.eta_bar / (n * n) * bracket;
}

double simulate_run(const NoiseModel& noise, const RunConfig& run,
                    double true_phase, std::uint64_t realization) {
    noise.validate();
    run.validate();

    const long long events = std::llround(run.gamma * run.total_time);
    const double rho = std::exp(-1.0 / (run.gamma * noise.tau_c));
    const double innovation = noise.eta_bar * std::sqrt(1.0 - rho * rho);
    const double shot_sigma = std::sqrt(noise.shot_var);

    PhaseRng rng(run.seed, realization);
    // Stationary start, then AR(1) over the uniform event grid. Thinning
    // keeps true event times, so the chain advances on every event.
    double eta = noise.eta_bar * rng.gauss();
    KahanSum mean;
    long long kept = 0;
    for (long long i = 0; i < events; ++i) {
        if (i > 0) eta = rho * eta + innovation * rng.gauss();
        const bool keep = run.post_prob >= 1.0 || rng.uniform() < run.post_prob;
        if (!keep) continue;
        double sample = true_phase + eta;
        if (shot_sigma > 0.0) sample += shot_sigma * rng.gauss();
        mean.add(sample);
        ++kept;
    }
    if (kept == 0) {
        throw EmptyRunError("no samples survived post-selection");
    }
    return mean.sum / double(kept);
}

EnsembleStats simulate_ensemble(const NoiseModel& noise, const RunConfig& run,
                                double true_phase) {
    run.validate();
    const int k = run.realizations;
    const size_t count = size_t(k);
    std::vector<double> means(count);
    parallel_for(count, [&](size_t i) {
        means[i] = simulate_run(noise, run, true_phase, std::uint64_t(i));
    });

    KahanSum sum;
    for (double m : means) sum.add(m);
    const double mean = sum.sum / k;

    KahanSum sq;
    for (double m : means) sq.add((m - mean) * (m - mean));
    const double variance = k > 1 ? sq.sum / (k - 1) : 0.0;

    EnsembleStats st;
    st.mean = mean;
    st.variance = variance;
    st.realizations = k;
    st.mean_stderr = std::sqrt(variance / k);
    // Gaussian sample variance: Var(s^2) = 2 sigma^4 / (k - 1).
    st.variance_stderr = k > 1 ? variance * std::sqrt(2.0 / (k - 1)) : 0.0;
    return st;
}

const char* to_string(SnrVariant v) {
    switch (v) {
        case SnrVariant::NonPostSelected: return "non_post_selected";
        case SnrVariant::PostSelected: return "post_selected";
        case SnrVariant::QuantumLimited: return "quantum_limited";
    }
    return "unknown";
}

std::vector<SnrPoint> snr_curve(const SetupParams& setup, const NoiseModel& noise,
                                const RunConfig& run_template,
                                const std::vector<double>& gammas,
                                SnrVariant variant) {
    setup.validate();
    noise.validate();
    if (gammas.empty()) throw std::invalid_argument("gamma grid is empty");
    if (!(run_template.total_time > 0.0)) {
        throw std::invalid_argument("run.total_time must be > 0");
    }

    double signal = std::abs(setup.phi0);
    double prob = 1.0;
    if (variant == SnrVariant::PostSelected) {
        const PostSelectionResult post = post_select(setup);
        prob = post.p_exact;
        signal = std::abs(setup.delta / (2.0 * prob) * setup.phi0);
    }
    NoiseModel eff = noise;
    if (variant == SnrVariant::QuantumLimited) eff.eta_bar = 0.0;

    std::vector<SnrPoint> out(gammas.size());
    parallel_for(gammas.size(), [&](size_t i) {
        const double gamma = gammas[i];
        if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
        const double n = prob * gamma * run_template.total_time;
        const double r = std::exp(-1.0 / (prob * gamma * eff.tau_c));
        const double var = mean_phase_variance(n, r, eff);
        out[i] = {gamma, signal / std::sqrt(var),
                  std::numeric_limits<double>::quiet_NaN(), variant};
    });
    return out;
}

double detect_knee(const std::vector<SnrPoint>& points, int fit_window) {
    const int n = int(points.size());
    if (fit_window < 1 || n < 2 * fit_window) {
        throw std::invalid_argument("knee detection needs 2*fit_window points");
    }
    for (int i = 1; i < n; ++i) {
        if (points[size_t(i)].gamma <= points[size_t(i - 1)].gamma) {
            throw std::invalid_argument("points must be sorted by gamma");
        }
    }
    double c = 0.0;
    for (int i = 0; i < fit_window; ++i) {
        c += points[size_t(i)].snr / std::sqrt(points[size_t(i)].gamma);
    }
    c /= fit_window;
    double plateau = 0.0;
    for (int i = n - fit_window; i < n; ++i) plateau += points[size_t(i)].snr;
    plateau /= fit_window;
    const double root = plateau / c;
    return root * root;
}

} // namespace wva
