#pragma once

#include <cstdint>
#include <vector>

#include "modsim/decision.hpp"

namespace modsim {

struct PriorEstimate {
    double pi0_hat;       // clamped to [0, 1]
    double raw;           // pre-clamp value
    std::size_t n_used;
    double pe_ml_assumed;
};

/// Method-of-moments inversion of the ML-decision mean:
/// raw = (mean - (1 - pe_ml)) / (2 pe_ml - 1), clamped into [0, 1].
/// pe_ml must be in [0, 0.5 - 1e-6); the denominator vanishes at 1/2.
PriorEstimate estimate_prior(const std::vector<uint8_t>& decisions, double pe_ml);

struct TwoStepResult {
    std::vector<uint8_t> decisions;
    PriorEstimate estimate;
    bool degraded = false; // fell back to the ML pass (ill-conditioned pe_ml)
};

/// Blind ML pass, prior estimation, then MAP re-decision with the estimate.
/// iterations > 1 re-estimates from the latest decisions (default single pass).
TwoStepResult two_step_decode(const WrappedGaussian& g, const SymbolMap& map,
                              const std::vector<double>& y_tilde, double pe_ml,
                              int iterations = 1);

} // namespace modsim
