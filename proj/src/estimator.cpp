#include "modsim/estimator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modsim {

PriorEstimate estimate_prior(const std::vector<uint8_t>& decisions, double pe_ml) {
    if (decisions.empty()) throw std::invalid_argument("estimate_prior: empty decision sequence");
    if (!(pe_ml >= 0.0) || pe_ml >= 0.5 - 1e-6)
        throw std::invalid_argument("estimate_prior: pe_ml must be in [0, 0.5 - 1e-6)");
    const double mean =
        static_cast<double>(std::accumulate(decisions.begin(), decisions.end(), std::size_t{0})) /
        static_cast<double>(decisions.size());
    const double raw = (mean - (1.0 - pe_ml)) / (2.0 * pe_ml - 1.0);
    return {std::clamp(raw, 0.0, 1.0), raw, decisions.size(), pe_ml};
}

TwoStepResult two_step_decode(const WrappedGaussian& g, const SymbolMap& map,
                              const std::vector<double>& y_tilde, double pe_ml, int iterations) {
    if (y_tilde.empty()) throw std::invalid_argument("two_step_decode: empty input");
    if (iterations < 1) throw std::invalid_argument("two_step_decode: iterations must be >= 1");

    std::vector<uint8_t> decisions = decide_sequence(DecisionRule::ml(), g, map, y_tilde);
    if (!(pe_ml >= 0.0) || pe_ml >= 0.5 - 1e-6) {
        // ill-conditioned inversion: keep the blind pass
        return {std::move(decisions), {0.5, 0.5, y_tilde.size(), pe_ml}, true};
    }
    PriorEstimate est = estimate_prior(decisions, pe_ml);
    for (int it = 0; it < iterations; ++it) {
        if (it > 0) est = estimate_prior(decisions, pe_ml);
        decisions = decide_sequence(DecisionRule::estimated(est.pi0_hat), g, map, y_tilde);
    }
    return {std::move(decisions), est, false};
}

} // namespace modsim
