#include <doctest.h>

#include <cmath>
#include <random>

#include "modsim/wrapped_gauss.hpp"
#include "oracles.hpp"

using modsim::WrappedGaussian;
using modsim::q_tail;

TEST_CASE("q_tail basics") {
    CHECK(q_tail(0.0) == 0.5);
    CHECK(q_tail(40.0) == 0.0);
    CHECK(q_tail(-40.0) == 1.0);
    // frozen from adaptive quadrature of the standard normal over [1.25, 40]
    const double expect = oracle::integrate([](double x) { return oracle::phi(x, 1.0); }, 1.25, 40.0);
    CHECK(expect == doctest::Approx(0.1056498).epsilon(1e-5));
    CHECK(std::fabs(q_tail(1.25) - expect) <= 1e-13);
    CHECK_THROWS(q_tail(std::numeric_limits<double>::quiet_NaN()));
}

TEST_CASE("construction invariants") {
    CHECK_THROWS(WrappedGaussian(0.0, 1.0));
    CHECK_THROWS(WrappedGaussian(5.0, -1.0));
    CHECK_THROWS(WrappedGaussian(5.0, 1.0, 1e-9)); // tail_eps above 1e-10
    CHECK_THROWS(WrappedGaussian(5.0, 1.0, 0.0));
}

TEST_CASE("density_direct against wide direct sum") {
    const WrappedGaussian g(5.0, 1.0);
    CHECK(g.density_direct(0.0) ==
          doctest::Approx(oracle::wrapped_density(0.0, 5.0, 1.0)).epsilon(1e-12));
    CHECK(g.density_direct(0.0) == doctest::Approx(0.3989453).epsilon(1e-6));
    CHECK(g.density_direct(2.5) ==
          doctest::Approx(oracle::wrapped_density(2.5, 5.0, 1.0)).epsilon(1e-12));
    CHECK(g.density_direct(2.5) == doctest::Approx(0.0350566).epsilon(1e-5));
}

TEST_CASE("periodicity and evenness") {
    const WrappedGaussian g(5.0, 1.3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        for (int k = -3; k <= 3; ++k)
            CHECK(std::fabs(g.density_direct(x) - g.density_direct(x + k * 5.0)) <= 1e-12);
        CHECK(std::fabs(g.density_direct(x) - g.density_direct(-x)) <= 1e-12);
    }
}

TEST_CASE("fourier path agrees with direct path") {
    for (double ratio : {0.5, 1.0, 3.0, 5.0, 10.0}) {
        const WrappedGaussian g(ratio, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double x = -ratio / 2.0 + ratio * i / 10000.0;
            worst = std::max(worst, std::fabs(g.density_direct(x) - g.density_fourier(x)));
        }
        CHECK(worst <= 1e-9);
    }
    const WrappedGaussian g(5.0, 1.0);
    CHECK(g.density_fourier(0.0) == doctest::Approx(g.density_direct(0.0)).epsilon(1e-9));
    CHECK(std::fabs(g.density_fourier(1.25) - g.density_direct(1.25)) <= 1e-10);
}

TEST_CASE("large sigma flattens to uniform") {
    const WrappedGaussian g(1.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double x = -0.5 + i / 100.0;
        CHECK(std::fabs(g.density_fourier(x) - 1.0) <= 1e-12);
        CHECK(std::fabs(g.density_direct(x) - 1.0) <= 1e-10);
    }
}

TEST_CASE("band probabilities") {
    const WrappedGaussian g(5.0, 1.0);
    CHECK(std::fabs(g.band_probability(-2.5, 2.5) - 1.0) <= 1e-12);
    CHECK(g.band_probability(1.0, 1.0) == 0.0);
    // frozen from the pairwise Q-sum oracle (|k| <= 20); the wrapped band over
    // [1.25, 3.75] picks up both the k=0 and k=-1 translates
    const double expect = oracle::band(1.25, 3.75, 5.0, 1.0);
    CHECK(expect == doctest::Approx(0.211124).epsilon(1e-5));
    CHECK(g.band_probability(1.25, 3.75) == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS(g.band_probability(1.0, 0.0));
    CHECK_THROWS(g.band_probability(0.0, 5.5));
}

TEST_CASE("normalization over arbitrary length-delta windows") {
    const WrappedGaussian g(3.0, 0.8);
    for (double a : {-1.5, -0.7, 0.0, 0.4, 1.3})
        CHECK(std::fabs(g.band_probability(a, a + 3.0) - 1.0) <= 1e-10);
}

TEST_CASE("band equals quadrature of the density") {
    const WrappedGaussian g(5.0, 1.0);
    for (auto [a, b] : {std::pair{-1.0, 2.0}, {0.3, 0.9}, {-2.5, 0.0}, {1.25, 3.75}}) {
        const double quad =
            oracle::integrate([&](double x) { return g.density_direct(x); }, a, b, 1e-12);
        CHECK(std::fabs(g.band_probability(a, b) - quad) <= 1e-10);
    }
}

TEST_CASE("level sets cross at most twice") {
    std::mt19937_64 rng(11);
    for (double ratio : {0.5, 1.0, 5.0}) {
        const WrappedGaussian g(ratio, 1.0);
        const int n = 100000;
        std::vector<double> vals(n);
        double vmin = 1e300, vmax = -1e300;
        for (int i = 0; i < n; ++i) {
            vals[i] = g.density(-ratio / 2.0 + ratio * i / n);
            vmin = std::min(vmin, vals[i]);
            vmax = std::max(vmax, vals[i]);
        }
        std::uniform_real_distribution<double> level(vmin + 1e-12, vmax - 1e-12);
        for (int t = 0; t < 50; ++t) {
            const double z = level(rng);
            int changes = 0;
            for (int i = 1; i < n; ++i)
                changes += (vals[i - 1] >= z) != (vals[i] >= z);
            CHECK(changes <= 2);
        }
    }
}

TEST_CASE("nonincreasing on [0, delta/2]") {
    const WrappedGaussian g(5.0, 1.0);
    double prev = g.density_direct(0.0);
    for (int i = 1; i <= 2000; ++i) {
        const double v = g.density_direct(2.5 * i / 2000.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}
