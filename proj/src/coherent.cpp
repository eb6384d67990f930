#include "wva/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wva {

namespace {

void require_finite(Complex z, const char* what) {
    if (!is_finite(z)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

} // namespace

bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex coherent_overlap(Complex a, Complex b) {
    require_finite(a, "coherent amplitude");
    require_finite(b, "coherent amplitude");
    const double log_mag = -0.5 * std::norm(a - b);
    const double phase = a.real() * b.imag() - a.imag() * b.real(); // Im(conj(a) b)
    return std::polar(std::exp(log_mag), phase);
}

double FockVector::norm_sq() const {
    double s = 0.0;
    for (const Complex& c : amps) s += std::norm(c);
    return s;
}

double FockVector::norm() const { return std::sqrt(norm_sq()); }

Complex FockVector::inner(const FockVector& other) const {
    const size_t n = std::min(amps.size(), other.amps.size());
    Complex s = 0.0;
    for (size_t k = 0; k < n; ++k) s += std::conj(amps[k]) * other.amps[k];
    return s;
}

Complex FockVector::expect_a() const {
    Complex s = 0.0;
    for (size_t n = 0; n + 1 < amps.size(); ++n) {
        s += std::conj(amps[n]) * amps[n + 1] * std::sqrt(double(n + 1));
    }
    return s;
}

double FockVector::expect_n() const {
    double s = 0.0;
    for (size_t n = 1; n < amps.size(); ++n) s += double(n) * std::norm(amps[n]);
    return s;
}

FockVector FockVector::normalized() const {
    const double nrm = norm();
    if (nrm <= 0.0) throw NumericalError("cannot normalize a zero Fock vector");
    FockVector out = *this;
    for (Complex& c : out.amps) c /= nrm;
    return out;
}

CoherentSuperposition::CoherentSuperposition(std::vector<CoherentTerm> terms,
                                             bool normalized)
    : terms_(std::move(terms)), normalized_(normalized) {
    if (terms_.empty()) {
        throw std::invalid_argument("superposition needs at least one term");
    }
    for (const CoherentTerm& t : terms_) {
        require_finite(t.coeff, "superposition coefficient");
        require_finite(t.amplitude, "coherent amplitude");
    }
    if (normalized_) {
        const double n = norm();
        if (std::abs(n - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "state flagged normalized has norm " << n;
            throw std::invalid_argument(os.str());
        }
    }
}

CoherentSuperposition CoherentSuperposition::vacuum() {
    return CoherentSuperposition({{1.0, 0.0}}, true);
}

CoherentSuperposition CoherentSuperposition::coherent(Complex beta) {
    return CoherentSuperposition({{1.0, beta}}, true);
}

double CoherentSuperposition::norm_sq() const {
    // Diagonal terms plus twice the real part of the upper triangle: the Gram
    // matrix is Hermitian, so the imaginary parts cancel exactly.
    double s = 0.0;
    for (const CoherentTerm& t : terms_) s += std::norm(t.coeff);
    for (size_t j = 0; j < terms_.size(); ++j) {
        for (size_t k = j + 1; k < terms_.size(); ++k) {
            const Complex o = coherent_overlap(terms_[j].amplitude, terms_[k].amplitude);
            s += 2.0 * std::real(std::conj(terms_[j].coeff) * terms_[k].coeff * o);
        }
    }
    return s;
}

double CoherentSuperposition::norm() const {
    const double s = norm_sq();
    if (s < -1e-12) {
        std::ostringstream os;
        os << "Gram sum produced squared norm " << s;
        throw NumericalError(os.str());
    }
    return std::sqrt(std::max(s, 0.0));
}

CoherentSuperposition CoherentSuperposition::normalized() const {
    const double n = norm();
    if (n < 1e-150) {
        throw NumericalError("cannot normalize a state with vanishing norm");
    }
    std::vector<CoherentTerm> scaled = terms_;
    for (CoherentTerm& t : scaled) t.coeff /= n;
    CoherentSuperposition out(std::move(scaled), false);
    out.normalized_ = true; // unit norm holds by construction
    return out;
}

Complex CoherentSuperposition::expect_a() const {
    if (!normalized_) {
        throw std::invalid_argument("expect_a requires a normalized state");
    }
    // <a> = sum_{jk} conj(c_j) c_k beta_k <beta_j|beta_k>
    Complex s = 0.0;
    for (const CoherentTerm& j : terms_) {
        for (const CoherentTerm& k : terms_) {
            s += std::conj(j.coeff) * k.coeff * k.amplitude *
                 coherent_overlap(j.amplitude, k.amplitude);
        }
    }
    return s;
}

double CoherentSuperposition::expect_n() const {
    if (!normalized_) {
        throw std::invalid_argument("expect_n requires a normalized state");
    }
    // <n> via <beta_j|n|beta_k> = conj(beta_j) beta_k <beta_j|beta_k>
    double s = 0.0;
    for (const CoherentTerm& t : terms_) {
        s += std::norm(t.coeff) * std::norm(t.amplitude);
    }
    for (size_t j = 0; j < terms_.size(); ++j) {
        for (size_t k = j + 1; k < terms_.size(); ++k) {
            const Complex o = coherent_overlap(terms_[j].amplitude, terms_[k].amplitude);
            s += 2.0 * std::real(std::conj(terms_[j].coeff) * terms_[k].coeff *
                                 std::conj(terms_[j].amplitude) * terms_[k].amplitude * o);
        }
    }
    if (s < -1e-12) {
        std::ostringstream os;
        os << "expectation of n came out " << s;
        throw NumericalError(os.str());
    }
    return std::max(s, 0.0);
}

CoherentSuperposition CoherentSuperposition::displaced(Complex g) const {
    require_finite(g, "displacement");
    std::vector<CoherentTerm> out;
    out.reserve(terms_.size());
    for (const CoherentTerm& t : terms_) {
        const double phase =
            t.amplitude.real() * (-g.imag()) + t.amplitude.imag() * g.real(); // Im(beta conj(g))
        out.push_back({t.coeff * std::polar(1.0, phase), t.amplitude - g});
    }
    CoherentSuperposition result(std::move(out), false);
    result.normalized_ = normalized_; // unitary, norm unchanged
    return result;
}

int suggested_cutoff(const CoherentSuperposition& s) {
    double c = 0.0;
    for (const CoherentTerm& t : s.terms()) {
        const double b = std::abs(t.amplitude);
        c = std::max(c, b * b + 10.0 * b + 20.0);
    }
    return int(std::ceil(c));
}

FockVector to_fock(const CoherentSuperposition& s, int cutoff, double tail_tol) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    for (const CoherentTerm& t : s.terms()) {
        if (std::abs(t.amplitude) > 30.0) {
            throw std::invalid_argument(
                "number-basis path refuses |beta| > 30; use the analytic path");
        }
    }

    FockVector f;
    f.cutoff = cutoff;
    f.amps.assign(size_t(cutoff) + 1, Complex(0.0, 0.0));
    for (const CoherentTerm& t : s.terms()) {
        // amp_n = e^{-|b|^2/2} b^n / sqrt(n!), built by recurrence; every
        // partial value is bounded by 1 in magnitude.
        Complex a = std::exp(-0.5 * std::norm(t.amplitude));
        f.amps[0] += t.coeff * a;
        for (int n = 1; n <= cutoff; ++n) {
            a *= t.amplitude / std::sqrt(double(n));
            f.amps[size_t(n)] += t.coeff * a;
        }
    }

    // The discarded mass is the exact Gram norm minus the truncated norm;
    // termwise it is a sum of |.|^2 >= 0, so clamp only rounding noise.
    const double exact_sq = s.norm() * s.norm();
    f.tail = std::max(exact_sq - f.norm_sq(), 0.0);
    // Nearly-dark superpositions have coefficients that cancel; the tail
    // measurement is then limited by the Gram rounding floor, not truncation.
    double coeff_sum = 0.0;
    for (const CoherentTerm& t : s.terms()) coeff_sum += std::abs(t.coeff);
    const double floor =
        64.0 * std::numeric_limits<double>::epsilon() * coeff_sum * coeff_sum;
    if (f.tail > std::max(tail_tol, floor)) {
        std::ostringstream os;
        os << "cutoff " << cutoff << " leaves tail mass " << f.tail
           << " above tolerance " << tail_tol;
        throw CutoffError(os.str(), suggested_cutoff(s));
    }
    return f;
}

} // namespace wva
