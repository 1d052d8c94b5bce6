#include "modsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace modsim {

const char* to_string(PeRegime r) {
    switch (r) {
        case PeRegime::AlwaysZero: return "always-zero";
        case PeRegime::UpperMid: return "upper-mid";
        case PeRegime::LowerMid: return "lower-mid";
        case PeRegime::AlwaysOne: return "always-one";
        case PeRegime::Uniform: return "uniform";
        case PeRegime::MlGeneral: return "ml-general";
    }
    return "?";
}

double pe_uniform(const WrappedGaussian& g) {
    const double d = g.delta();
    return g.band_probability(d / 4.0, 3.0 * d / 4.0);
}

double pe_ml(const WrappedGaussian& g, const SymbolMap& map) {
    double h0 = map.h0, h1 = map.h1;
    if (h0 == h1) throw std::invalid_argument("pe_ml: h0 == h1");
    if (h0 > h1) std::swap(h0, h1);
    const double eta = (h1 - h0) / 2.0;
    const double mid = (h0 + h1) / 2.0;
    const double half = g.delta() / 2.0;
    if (mid >= 0.0) return g.band_probability(eta, eta + half);
    return g.band_probability(eta - half, eta);
}

double tau(const WrappedGaussian& g) {
    return g.density_direct(g.delta() / 2.0) / g.density_direct(0.0);
}

PeReport pe_map(const WrappedGaussian& g, double pi0) {
    if (pi0 < 0.0 || pi0 > 1.0) throw std::invalid_argument("pe_map: pi0 must be in [0, 1]");
    const double d = g.delta();
    const double half = d / 2.0;
    const double t = tau(g);
    const SymbolMap map = optimal_symbol_map(d);

    PeReport rep{0.0, PeRegime::Uniform, {}};
    if (pi0 > 1.0 / (1.0 + t)) {
        rep.pe = 1.0 - pi0;
        rep.regime = PeRegime::AlwaysZero;
        rep.thresholds = thresholds_map(g, map, pi0);
        return rep;
    }
    if (pi0 < t / (1.0 + t)) {
        rep.pe = pi0;
        rep.regime = PeRegime::AlwaysOne;
        rep.thresholds = thresholds_map(g, map, pi0);
        return rep;
    }
    rep.thresholds = thresholds_map(g, map, pi0);
    // l is the half-width of the zero-decision region around h0. A bit 0 errs
    // when the wrapped offset leaves [-l, l]; a bit 1 errs when it lands within
    // l of the opposite symbol, half a period away. This single expression is
    // continuous through both degenerate boundaries (pe -> 1-pi0 as l -> Delta/2,
    // pe -> pi0 as l -> 0) and covers both middle prior regimes.
    const double l = map_threshold_halfwidth(g, pi0);
    const double zero_err = g.band_probability(l, d - l);
    const double one_err = g.band_probability(half - l, half + l);
    rep.pe = pi0 * zero_err + (1.0 - pi0) * one_err;
    rep.regime = pi0 > 0.5   ? PeRegime::UpperMid
                 : pi0 < 0.5 ? PeRegime::LowerMid
                             : PeRegime::Uniform;
    return rep;
}

namespace {

// Crossing points of the weighted-likelihood difference, bisected to 1e-12.
std::vector<double> decision_boundaries(const WrappedGaussian& g, const SymbolMap& map, double p,
                                        std::size_t n_grid) {
    const double d = g.delta();
    const double half = d / 2.0;
    auto diff = [&](double y) {
        return p * g.density(y - map.h0) - (1.0 - p) * g.density(y - map.h1);
    };
    std::vector<double> cross;
    double prev_y = -half;
    double prev_v = diff(prev_y);
    for (std::size_t i = 1; i <= n_grid; ++i) {
        const double y = -half + d * static_cast<double>(i) / static_cast<double>(n_grid);
        const double v = diff(y);
        if ((prev_v >= 0.0) != (v >= 0.0)) {
            double lo = prev_y, hi = y;
            double flo = prev_v;
            while (hi - lo > 1e-12) {
                const double m = 0.5 * (lo + hi);
                const double fm = diff(m);
                if ((flo >= 0.0) == (fm >= 0.0)) {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                }
            }
            cross.push_back(0.5 * (lo + hi));
        }
        prev_y = y;
        prev_v = v;
    }
    return cross;
}

} // namespace

double pe_oracle(const WrappedGaussian& g, const SymbolMap& map, double pi0,
                 const DecisionRule& rule, std::size_t n_grid) {
    const double d = g.delta();
    const double half = d / 2.0;
    const double p = rule.effective_pi0();
    auto diff = [&](double y) {
        return p * g.density(y - map.h0) - (1.0 - p) * g.density(y - map.h1);
    };
    std::vector<double> bounds = decision_boundaries(g, map, p, n_grid);
    bounds.insert(bounds.begin(), -half);
    bounds.push_back(half);

    double pe = 0.0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double a = bounds[i], b = bounds[i + 1];
        if (b - a <= 0.0) continue;
        const bool zero_region = diff(0.5 * (a + b)) >= 0.0;
        if (zero_region)
            pe += (1.0 - pi0) * g.band_probability(a - map.h1, b - map.h1); // bit 1 sent, decided 0
        else
            pe += pi0 * g.band_probability(a - map.h0, b - map.h0); // bit 0 sent, decided 1
    }
    return pe;
}

SearchResult optimal_map_search(const WrappedGaussian& g, double pi0, double grid_step,
                                unsigned n_threads) {
    const double d = g.delta();
    if (!(grid_step > 0.0) || grid_step > d / 200.0 * (1.0 + 1e-12))
        throw std::invalid_argument("optimal_map_search: grid_step must be <= delta/200");
    const std::size_t m = static_cast<std::size_t>(std::llround(d / grid_step));
    const double half = d / 2.0;
    // 512 grid points suffice for boundary bracketing: the weighted-likelihood
    // difference has at most two sign changes, and each is bisected to 1e-12.
    constexpr std::size_t kOracleGrid = 512;

    std::vector<double> pe(m * m, std::numeric_limits<double>::infinity());
    auto cell = [&](std::size_t i) { return -half + grid_step * static_cast<double>(i); };
    auto worker = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t i = row_begin; i < row_end; ++i) {
            const double h0 = cell(i);
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                const SymbolMap map(h0, cell(j), d);
                pe[i * m + j] = pe_oracle(g, map, pi0, DecisionRule::map(pi0), kOracleGrid);
            }
        }
    };
    if (n_threads <= 1) {
        worker(0, m);
    } else {
        std::vector<std::thread> threads;
        const std::size_t rows_per = (m + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::size_t b = std::min<std::size_t>(t * rows_per, m);
            const std::size_t e = std::min<std::size_t>(b + rows_per, m);
            if (b < e) threads.emplace_back(worker, b, e);
        }
        for (auto& th : threads) th.join();
    }

    const double min_pe = *std::min_element(pe.begin(), pe.end());
    SearchResult res{{}, optimal_symbol_map(d), min_pe, 0.0, grid_step};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (pe[i * m + j] <= min_pe + 1e-9) res.argmin.emplace_back(cell(i), cell(j), d);

    // Power-minimal argmin member under the unweighted symbol power
    // (h0^2 + h1^2)/2; ties break toward h0 < h1.
    auto power = [](const SymbolMap& s) { return 0.5 * (s.h0 * s.h0 + s.h1 * s.h1); };
    const SymbolMap* best = nullptr;
    for (const SymbolMap& s : res.argmin) {
        if (!best || power(s) < power(*best) - 1e-15 ||
            (std::fabs(power(s) - power(*best)) <= 1e-15 && s.h0 < best->h0))
            best = &s;
    }
    if (best) res.best_power = *best;

    // Golden-section refinement of the spacing around the best cell confirms the
    // ridge location to sub-cell accuracy.
    const double d_best = std::fabs(res.best_power.h1 - res.best_power.h0);
    auto pe_of_spacing = [&](double s) {
        const SymbolMap sm(-s / 2.0, s / 2.0, d);
        return pe_oracle(g, sm, pi0, DecisionRule::map(pi0), kOracleGrid);
    };
    double a = std::max(grid_step, d_best - grid_step);
    double b = std::min(d - grid_step, d_best + grid_step);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = pe_of_spacing(x1), f2 = pe_of_spacing(x2);
    while (b - a > 1e-10) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = pe_of_spacing(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = pe_of_spacing(x2);
        }
    }
    res.refined_spacing = 0.5 * (a + b);
    return res;
}

} // namespace modsim
