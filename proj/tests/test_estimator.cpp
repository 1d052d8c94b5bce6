#include <doctest.h>

#include <cmath>
#include <numeric>

#include "modsim/analysis.hpp"
#include "modsim/estimator.hpp"

using namespace modsim;

namespace {

const WrappedGaussian g5(5.0, 1.0);
const SymbolMap opt(-1.25, 1.25, 5.0);

std::vector<uint8_t> bits_with_mean(std::size_t n, double mean) {
    std::vector<uint8_t> v(n, 0);
    const auto ones = static_cast<std::size_t>(std::llround(mean * static_cast<double>(n)));
    std::fill(v.begin(), v.begin() + static_cast<long>(ones), 1);
    return v;
}

} // namespace

TEST_CASE("estimate_prior") {
    CHECK_THROWS(estimate_prior({}, 0.2));
    CHECK_THROWS(estimate_prior({0, 1}, 0.5));
    CHECK_THROWS(estimate_prior({0, 1}, 0.499999999));
    CHECK_THROWS(estimate_prior({0, 1}, -0.1));

    // algebraic fixed point: mean 0.5 maps to 0.5 for any valid pe
    for (double pe : {0.01, 0.2, 0.4})
        CHECK(estimate_prior(bits_with_mean(1000, 0.5), pe).pi0_hat ==
              doctest::Approx(0.5).epsilon(1e-12));

    // round trip of p_b = pi0 pe + (1 - pi0)(1 - pe) at pi0 = 0.2
    const auto e = estimate_prior(bits_with_mean(100000, 0.67333), 0.21112);
    CHECK(e.pi0_hat == doctest::Approx(0.2).epsilon(1e-2));
    CHECK(std::fabs(e.pi0_hat - 0.200) <= 1e-3);
    CHECK(e.n_used == 100000);
    CHECK(e.pe_ml_assumed == 0.21112);

    // clamp at the boundary
    const auto c = estimate_prior(bits_with_mean(3, 1.0), 0.2);
    CHECK(c.raw == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(c.pi0_hat == 0.0);
    const auto c2 = estimate_prior(bits_with_mean(3, 0.0), 0.2);
    CHECK(c2.pi0_hat == 1.0);
}

TEST_CASE("estimate_prior is deterministic") {
    const auto bits = bits_with_mean(977, 0.31);
    const auto a = estimate_prior(bits, 0.21);
    const auto b = estimate_prior(bits, 0.21);
    CHECK(a.pi0_hat == b.pi0_hat);
    CHECK(a.raw == b.raw);
}

TEST_CASE("two_step_decode") {
    const double pe = pe_ml(g5, opt);

    SUBCASE("uniform prior: pass-2 tracks the ML pass") {
        const std::size_t n = 100000;
        auto bits = generate_bits({0.5, 101}, n);
        auto y = transmit(map_bits(bits, opt), {5.0, 1.0, 102});
        auto ml = decide_sequence(DecisionRule::ml(), g5, opt, y);
        auto two = two_step_decode(g5, opt, y, pe);
        std::size_t e1 = 0, e2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            e1 += bits[i] != ml[i];
            e2 += bits[i] != two.decisions[i];
        }
        const double sd = std::sqrt(pe * (1 - pe) / n);
        CHECK(std::fabs(static_cast<double>(e2) - static_cast<double>(e1)) / n <= 2 * sd);
        CHECK_FALSE(two.degraded);
    }

    SUBCASE("skewed prior: pass-2 beats the blind pass on average") {
        const std::size_t n = 1000, m = 50;
        double ml_sum = 0, two_sum = 0;
        for (std::size_t t = 0; t < m; ++t) {
            auto bits = generate_bits({0.1, hash_seed(400, t)}, n);
            auto y = transmit(map_bits(bits, opt), {5.0, 1.0, hash_seed(500, t)});
            auto ml = decide_sequence(DecisionRule::ml(), g5, opt, y);
            auto two = two_step_decode(g5, opt, y, pe);
            for (std::size_t i = 0; i < n; ++i) {
                ml_sum += bits[i] != ml[i];
                two_sum += bits[i] != two.decisions[i];
            }
        }
        CHECK(two_sum < ml_sum);
    }

    SUBCASE("degenerate identical samples stay deterministic") {
        std::vector<double> y(64, 0.3);
        auto r1 = two_step_decode(g5, opt, y, pe);
        auto r2 = two_step_decode(g5, opt, y, pe);
        CHECK(r1.decisions == r2.decisions);
        CHECK(r1.estimate.pi0_hat == r2.estimate.pi0_hat);
        CHECK(r1.estimate.pi0_hat >= 0.0);
        CHECK(r1.estimate.pi0_hat <= 1.0);
    }

    SUBCASE("ill-conditioned pe falls back to the ML pass") {
        std::vector<double> y{0.3, -1.0, 2.0};
        auto r = two_step_decode(g5, opt, y, 0.4999999);
        CHECK(r.degraded);
        CHECK(r.estimate.pi0_hat == 0.5);
        CHECK(r.decisions == decide_sequence(DecisionRule::ml(), g5, opt, y));
    }

    SUBCASE("multi-iteration knob") {
        CHECK_THROWS(two_step_decode(g5, opt, {0.1}, 0.2, 0));
        auto bits = generate_bits({0.2, 11}, 5000);
        auto y = transmit(map_bits(bits, opt), {5.0, 1.0, 12});
        auto one = two_step_decode(g5, opt, y, pe, 1);
        auto three = two_step_decode(g5, opt, y, pe, 3);
        CHECK(one.decisions.size() == three.decisions.size());
    }
}

TEST_CASE("estimator is close to unbiased at scale") {
    const std::size_t n = 100000, m = 200;
    const double pe = pe_ml(g5, opt);
    for (double pi0 : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        double sum = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            auto bits = generate_bits({pi0, hash_seed(1000 + static_cast<uint64_t>(pi0 * 100), t)}, n);
            auto y = transmit(map_bits(bits, opt),
                              {5.0, 1.0, hash_seed(2000 + static_cast<uint64_t>(pi0 * 100), t)});
            auto ml = decide_sequence(DecisionRule::ml(), g5, opt, y);
            sum += estimate_prior(ml, pe).pi0_hat;
        }
        CHECK(std::fabs(sum / m - pi0) <= 0.01);
    }
}

TEST_CASE("estimate concentrates with sample size") {
    const std::size_t m = 200;
    const double pe = pe_ml(g5, opt);
    const double pi0 = 0.3;
    auto spread = [&](std::size_t n, uint64_t salt) {
        double sum = 0, sum2 = 0;
        for (std::size_t t = 0; t < m; ++t) {
            auto bits = generate_bits({pi0, hash_seed(salt, t)}, n);
            auto y = transmit(map_bits(bits, opt), {5.0, 1.0, hash_seed(salt + 1, t)});
            auto ml = decide_sequence(DecisionRule::ml(), g5, opt, y);
            const double v = estimate_prior(ml, pe).pi0_hat;
            sum += v;
            sum2 += v * v;
        }
        return std::sqrt(sum2 / m - (sum / m) * (sum / m));
    };
    const double ratio = spread(200, 7000) / spread(1000, 8000);
    CHECK(ratio >= 1.8); // theoretical sqrt(5) ~ 2.24
    CHECK(ratio <= 2.7);
}
