#pragma once

#include <cstddef>

namespace modsim {

/// Standard normal tail probability P(Z > x). Saturates for |x| > 38.
double q_tail(double x);

/// Zero-mean Gaussian density with std sigma.
double gauss_pdf(double x, double sigma);

/// Delta-periodic wrapped zero-mean Gaussian density f(x) = sum_k phi_sigma(x + k*Delta).
/// Truncation orders are derived from tail_eps via Gaussian tail bounds, so the
/// evaluators stay accurate across the whole Delta/sigma sweep.
class WrappedGaussian {
public:
    WrappedGaussian(double delta, double sigma, double tail_eps = 1e-14);

    double delta() const { return delta_; }
    double sigma() const { return sigma_; }
    double tail_eps() const { return tail_eps_; }

    /// Direct translate sum, truncated at |k| <= direct_order().
    double density_direct(double x) const;

    /// Poisson-summation form: (1/Delta)(1 + 2 sum_k exp(-2 pi^2 sigma^2 k^2 / Delta^2) cos(2 pi k x / Delta)).
    double density_fourier(double x) const;

    /// Whichever of the two series converges faster for this Delta/sigma.
    double density(double x) const;

    /// P(wrapped offset in [a, b)), a <= b, b - a <= Delta. Computed as the
    /// convergent pairwise sum sum_k [Q((a+k*Delta)/sigma) - Q((b+k*Delta)/sigma)].
    double band_probability(double a, double b) const;

    int direct_order() const { return k_direct_; }
    int fourier_order() const { return k_fourier_; }

private:
    double delta_;
    double sigma_;
    double tail_eps_;
    int k_direct_;
    int k_fourier_;
};

} // namespace modsim
