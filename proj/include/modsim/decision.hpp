#pragma once

#include <optional>
#include <vector>

#include "modsim/channel.hpp"
#include "modsim/wrapped_gauss.hpp"

namespace modsim {

enum class RuleKind { Map, Ml, EstimatedMap };

struct DecisionRule {
    RuleKind kind;
    double pi0; // carried prior (ML stores 0.5)

    static DecisionRule map(double pi0) { return {RuleKind::Map, pi0}; }
    static DecisionRule ml() { return {RuleKind::Ml, 0.5}; }
    static DecisionRule estimated(double pi0_hat) { return {RuleKind::EstimatedMap, pi0_hat}; }

    double effective_pi0() const { return kind == RuleKind::Ml ? 0.5 : pi0; }
};

/// Half-open subinterval [lo, hi) of the fundamental interval.
struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x < hi; }
};

/// Degenerate: the rule never leaves one region (prior beyond the tau limits).
enum class Regime { Normal, AlwaysZero, AlwaysOne };

struct DecisionThresholds {
    Regime regime = Regime::Normal;
    double c1 = 0;
    double c2 = 0; // sorted, both in [-Delta/2, Delta/2)
    std::vector<Interval> region_for_zero; // partition complement decides 1

    bool in_zero_region(double y) const;
};

/// f_W^Delta(y_tilde - h); y_tilde must lie in the fundamental interval.
double likelihood(const WrappedGaussian& g, double y_tilde, double h);

/// MAP/ML/estimated decision; ties decide 0.
uint8_t decide(const DecisionRule& rule, const WrappedGaussian& g, const SymbolMap& map,
               double y_tilde);

std::vector<uint8_t> decide_sequence(const DecisionRule& rule, const WrappedGaussian& g,
                                     const SymbolMap& map, const std::vector<double>& y_tilde);

/// Uniform-prior crossing points: midpoint and midpoint + sgn(midpoint)*Delta/2
/// with sgn(0) = -1, reduced into the fundamental interval.
DecisionThresholds thresholds_uniform(const SymbolMap& map);

/// Nonuniform-prior thresholds {h0 - l, h0 + l} for Delta/2-spaced maps.
/// Solves pi0 f(l) = (1-pi0) f(l - Delta/2) by bisection to 1e-12; returns the
/// degenerate markers outside the tau regime limits.
DecisionThresholds thresholds_map(const WrappedGaussian& g, const SymbolMap& map, double pi0);

/// Half-width of the zero-region for thresholds_map (Delta/4 at pi0 = 0.5).
/// Only valid in the non-degenerate regime.
double map_threshold_halfwidth(const WrappedGaussian& g, double pi0);

} // namespace modsim
