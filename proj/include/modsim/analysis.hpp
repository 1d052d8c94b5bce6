#pragma once

#include <string>
#include <vector>

#include "modsim/decision.hpp"

namespace modsim {

enum class PeRegime { AlwaysZero, UpperMid, LowerMid, AlwaysOne, Uniform, MlGeneral };

const char* to_string(PeRegime r);

struct PeReport {
    double pe;
    PeRegime regime;
    DecisionThresholds thresholds;
};

/// P_e of the ML rule at the optimal constellation: band over [Delta/4, 3*Delta/4].
double pe_uniform(const WrappedGaussian& g);

/// P_e of the ML rule for an arbitrary symbol pair (branch on the midpoint sign).
double pe_ml(const WrappedGaussian& g, const SymbolMap& map);

/// Piecewise closed form for the MAP rule at the optimal constellation.
PeReport pe_map(const WrappedGaussian& g, double pi0);

/// tau = f(Delta/2) / f(0), the degenerate-regime limit ratio.
double tau(const WrappedGaussian& g);

/// Brute-force P_e: label the rule's decisions on a dense grid, bisect every
/// sign change of the weighted-likelihood difference to 1e-12, then integrate
/// the wrapped density over the refined regions.
double pe_oracle(const WrappedGaussian& g, const SymbolMap& map, double pi0,
                 const DecisionRule& rule, std::size_t n_grid = 100000);

struct SearchResult {
    std::vector<SymbolMap> argmin;     // all grid points within 1e-9 of the minimum
    SymbolMap best_power;              // power-minimal argmin member
    double min_pe;
    double refined_spacing;            // golden-section refinement of |h1 - h0| at the best cell
    double grid_step;
};

/// Exhaustive grid search of (h0, h1) over the fundamental square with the
/// MAP(pi0) rule evaluated by the brute-force oracle.
SearchResult optimal_map_search(const WrappedGaussian& g, double pi0, double grid_step,
                                unsigned n_threads = 1);

} // namespace modsim
