#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modsim/analysis.hpp"
#include "modsim/estimator.hpp"

namespace modsim {

enum class RuleLabel { Map, Ml, Estimated };

const char* to_string(RuleLabel r);
std::optional<RuleLabel> parse_rule(const std::string& s);

struct ExperimentConfig {
    double delta = 5.0;
    double sigma = 1.0;
    std::vector<double> pi0_list;
    std::size_t n_bits = 1000;
    std::size_t repeats = 50;
    std::vector<RuleLabel> rules;
    uint64_t master_seed = 1;
    std::string output_path;
    bool emit_csv = true;
    bool emit_svg = false;
    bool emit_analytic = false;
    unsigned n_threads = 1;

    void validate() const; // throws std::invalid_argument
};

struct TrialRecord {
    double pi0;
    RuleLabel rule;
    std::size_t trial_index;
    double ber;
    std::optional<double> pi0_hat;
    uint64_t seed_used;
};

/// Seed for one trial, derived from the pi0 value and the rule identity rather
/// than list positions, so sweep subsets reproduce the same per-trial streams.
uint64_t trial_seed(uint64_t master_seed, double pi0, RuleLabel rule, std::size_t trial_index);

TrialRecord run_trial(const ExperimentConfig& cfg, double pi0, RuleLabel rule,
                      std::size_t trial_index);

/// Cartesian product pi0_list x rules x repeats; deterministic order regardless
/// of the thread count.
std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg);

struct AnalyticPoint {
    double pi0;
    double delta_over_sigma;
    double pe_map;
    double pe_ml;
};

std::vector<AnalyticPoint> analytic_curve(double delta, double sigma,
                                          const std::vector<double>& pi0_grid);

void emit_csv(const std::vector<TrialRecord>& records, const std::string& path);
void emit_analytic_csv(const std::vector<AnalyticPoint>& curve, const std::string& path);
void emit_svg(const std::vector<TrialRecord>& records, const std::vector<AnalyticPoint>& analytic,
              const std::string& path);

} // namespace modsim
