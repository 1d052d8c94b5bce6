#include "modsim/wrapped_gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace modsim {

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
} // namespace

double q_tail(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("q_tail: non-finite argument");
    if (x > 38.0) return 0.0;
    if (x < -38.0) return 1.0;
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double gauss_pdf(double x, double sigma) {
    const double t = x / sigma;
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * t * t);
}

WrappedGaussian::WrappedGaussian(double delta, double sigma, double tail_eps)
    : delta_(delta), sigma_(sigma), tail_eps_(tail_eps) {
    if (!(delta > 0.0)) throw std::invalid_argument("WrappedGaussian: delta must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("WrappedGaussian: sigma must be positive");
    if (!(tail_eps > 0.0 && tail_eps <= 1e-10))
        throw std::invalid_argument("WrappedGaussian: tail_eps must be in (0, 1e-10]");

    // Smallest K with 2 Q((K - 1/2) Delta / sigma) / Delta < tail_eps bounds the
    // omitted translates over the whole fundamental interval.
    int k = 1;
    while (2.0 * q_tail((k - 0.5) * delta_ / sigma_) / delta_ >= tail_eps_ && k < 20000) ++k;
    k_direct_ = k;

    // Fourier coefficients decay as exp(-2 pi^2 sigma^2 k^2 / Delta^2); stop when
    // the remaining geometric tail is below tail_eps.
    const double pi = std::numbers::pi;
    const double c = 2.0 * pi * pi * sigma_ * sigma_ / (delta_ * delta_);
    k = 1;
    while (k < 20000) {
        const double term = 2.0 / delta_ * std::exp(-c * k * k);
        const double ratio = std::exp(-c * (2.0 * k + 1.0));
        if (ratio < 1.0 && term * ratio / (1.0 - ratio) < tail_eps_ && term < tail_eps_) break;
        ++k;
    }
    k_fourier_ = k;
}

double WrappedGaussian::density_direct(double x) const {
    // The truncation order only covers one period; fold x back first.
    x -= delta_ * std::floor(x / delta_ + 0.5);
    double s = 0.0;
    // sum small-magnitude (far) terms first
    for (int k = k_direct_; k >= 1; --k)
        s += gauss_pdf(x + k * delta_, sigma_) + gauss_pdf(x - k * delta_, sigma_);
    s += gauss_pdf(x, sigma_);
    return s;
}

double WrappedGaussian::density_fourier(double x) const {
    const double pi = std::numbers::pi;
    const double c = 2.0 * pi * pi * sigma_ * sigma_ / (delta_ * delta_);
    const double w = 2.0 * pi * x / delta_;
    double s = 0.0;
    for (int k = k_fourier_; k >= 1; --k) s += std::exp(-c * k * k) * std::cos(w * k);
    return (1.0 + 2.0 * s) / delta_;
}

double WrappedGaussian::density(double x) const {
    return sigma_ / delta_ >= 0.5 ? density_fourier(x) : density_direct(x);
}

double WrappedGaussian::band_probability(double a, double b) const {
    if (a > b) throw std::invalid_argument("band_probability: a > b");
    if (b - a > delta_ * (1.0 + 1e-12))
        throw std::invalid_argument("band_probability: band wider than one period");
    if (a == b) return 0.0;
    // Pairwise differences converge in both directions; a lone Q sum would not.
    const int K = k_direct_ + 2;
    double s = 0.0;
    for (int k = K; k >= 1; --k) {
        s += q_tail((a + k * delta_) / sigma_) - q_tail((b + k * delta_) / sigma_);
        s += q_tail((a - k * delta_) / sigma_) - q_tail((b - k * delta_) / sigma_);
    }
    s += q_tail(a / sigma_) - q_tail(b / sigma_);
    if (s < 0.0) s = 0.0;
    if (s > 1.0) s = 1.0;
    return s;
}

} // namespace modsim
