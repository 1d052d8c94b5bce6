#pragma once

// Test-only numerical oracles, independent of the library's evaluation paths.

#include <cmath>
#include <functional>

namespace oracle {

inline double phi(double x, double sigma) {
    const double t = x / sigma;
    return 0.3989422804014326779 / sigma * std::exp(-0.5 * t * t);
}

inline double q(double x) { return 0.5 * std::erfc(x / 1.4142135623730950488); }

// direct translate sum with a fixed wide truncation
inline double wrapped_density(double x, double delta, double sigma, int K = 20) {
    double s = 0.0;
    for (int k = -K; k <= K; ++k) s += phi(x + k * delta, sigma);
    return s;
}

// pairwise Q-difference band sum
inline double band(double a, double b, double delta, double sigma, int K = 20) {
    double s = 0.0;
    for (int k = -K; k <= K; ++k)
        s += q((a + k * delta) / sigma) - q((b + k * delta) / sigma);
    return s;
}

// adaptive Simpson quadrature
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fb, double fm, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, fm, flm, eps / 2.0, depth - 1) +
           simpson(f, m, b, fm, fb, frm, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-13) {
    const double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(b), f(m), eps, 40);
}

} // namespace oracle
