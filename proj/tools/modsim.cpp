#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modsim/harness.hpp"
#include "modsim/kernels.hpp"

using namespace modsim;

namespace {

// "a,b,c" or "start:stop:step"
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, s;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &s) != 3 || s <= 0.0)
            throw CLI::ValidationError("grid", "expected start:stop:step with step > 0");
        for (double v = a; v <= b + 1e-12; v += s) out.push_back(std::min(v, b));
    } else {
        std::string item;
        std::stringstream ss(spec);
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("grid", "empty value list");
    return out;
}

std::string analytic_path_for(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
    return stem + "_analytic.csv";
}

int run_simulate(const ExperimentConfig& cfg) {
    const std::vector<TrialRecord> records = run_sweep(cfg);
    std::vector<AnalyticPoint> curve;
    if (cfg.emit_analytic || cfg.emit_svg) curve = analytic_curve(cfg.delta, cfg.sigma, cfg.pi0_list);
    if (cfg.emit_csv) emit_csv(records, cfg.output_path);
    if (cfg.emit_analytic) emit_analytic_csv(curve, analytic_path_for(cfg.output_path));
    if (cfg.emit_svg) {
        const auto dot = cfg.output_path.rfind('.');
        const std::string stem =
            dot == std::string::npos ? cfg.output_path : cfg.output_path.substr(0, dot);
        emit_svg(records, curve, stem + ".svg");
    }
    std::cout << "wrote " << records.size() << " trial records (kernels: "
              << kernels::active().name << ", gaussian: " << gaussian_method_name() << ")\n";
    return 0;
}

struct CheckRunner {
    int failures = 0;
    void check(const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    }
};

int run_self_check() {
    CheckRunner c;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // density two-path agreement and normalization across the Delta/sigma sweep
    for (double ratio : {0.5, 1.0, 3.0, 5.0, 10.0}) {
        const WrappedGaussian g(ratio, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double x = -ratio / 2 + ratio * i / 2000.0;
            worst = std::max(worst, std::fabs(g.density_direct(x) - g.density_fourier(x)));
        }
        c.check("density direct/fourier agreement, delta/sigma=" + std::to_string(ratio),
                worst <= 1e-9);
        c.check("full-period normalization, delta/sigma=" + std::to_string(ratio),
                std::fabs(g.band_probability(-ratio / 2, ratio / 2) - 1.0) <= 1e-10);
    }

    // closed forms vs brute-force oracle
    {
        const WrappedGaussian g(5.0, 1.0);
        const SymbolMap map = optimal_symbol_map(5.0);
        c.check("pe_uniform matches oracle at pi0=0.5",
                std::fabs(pe_uniform(g) - pe_oracle(g, map, 0.5, DecisionRule::ml())) <= 1e-7);
        bool ok = true;
        for (double p : {0.1, 0.3, 0.45, 0.6, 0.8, 0.97})
            ok = ok && std::fabs(pe_map(g, p).pe - pe_oracle(g, map, p, DecisionRule::map(p))) <= 1e-7;
        c.check("pe_map matches oracle across pi0", ok);
    }

    // kernel equivalence, scalar vs active
    {
        const auto& ref = kernels::scalar();
        const auto& act = kernels::active();
        std::vector<double> x(1031), r1(x.size()), r2(x.size());
        for (auto& v : x) v = (unit(rng) - 0.5) * 40.0;
        ref.mod_reduce(x.data(), r1.data(), x.size(), 5.0);
        act.mod_reduce(x.data(), r2.data(), x.size(), 5.0);
        bool ok = true;
        for (std::size_t i = 0; i < x.size(); ++i) ok = ok && r1[i] == r2[i];
        c.check(std::string("mod_reduce kernel equivalence (") + act.name + ")", ok);
    }

    // sweep determinism, serial vs threaded
    {
        ExperimentConfig cfg;
        cfg.pi0_list = {0.2, 0.5};
        cfg.rules = {RuleLabel::Map, RuleLabel::Ml};
        cfg.n_bits = 2000;
        cfg.repeats = 4;
        auto a = run_sweep(cfg);
        cfg.n_threads = 4;
        auto b = run_sweep(cfg);
        bool ok = a.size() == b.size();
        for (std::size_t i = 0; ok && i < a.size(); ++i)
            ok = a[i].ber == b[i].ber && a[i].seed_used == b[i].seed_used;
        c.check("sweep determinism serial vs parallel", ok);
    }

    std::cout << (c.failures == 0 ? "self-check passed" : "self-check FAILED") << "\n";
    return c.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mod-delta AWGN binary signaling simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; CLI flags override");

    ExperimentConfig cfg;
    std::string pi0_spec = "0.05:0.5:0.05";
    std::string rules_spec = "map,ml,estimated";
    std::string emit_spec = "csv";
    auto* sim = app.add_subcommand("simulate", "run a seeded Monte Carlo sweep");
    sim->add_option("--delta", cfg.delta, "modulo interval length");
    sim->add_option("--sigma", cfg.sigma, "noise standard deviation");
    sim->add_option("--pi0", pi0_spec, "prior list a,b,c or range start:stop:step");
    sim->add_option("--n-bits", cfg.n_bits, "bits per trial");
    sim->add_option("--repeats", cfg.repeats, "trials per (pi0, rule) cell");
    sim->add_option("--rules", rules_spec, "subset of map,ml,estimated");
    sim->add_option("--seed", cfg.master_seed, "64-bit master seed");
    sim->add_option("--out", cfg.output_path, "output CSV path")->required();
    sim->add_option("--emit", emit_spec, "subset of csv,svg,analytic");
    sim->add_option("--threads", cfg.n_threads, "worker threads");

    double an_delta = 5.0, an_sigma = 1.0;
    std::string an_grid = "0.01:0.99:0.01", an_out;
    auto* an = app.add_subcommand("analytic", "emit closed-form error-probability curves");
    an->add_option("--delta", an_delta);
    an->add_option("--sigma", an_sigma);
    an->add_option("--pi0-grid", an_grid, "range start:stop:step or list");
    an->add_option("--out", an_out, "CSV path (stdout when omitted)");

    double so_delta = 5.0, so_sigma = 1.0, so_pi0 = 0.5, so_step = 0.0;
    auto* so = app.add_subcommand("search-optimal", "grid-search the optimal symbol pair");
    so->add_option("--delta", so_delta);
    so->add_option("--sigma", so_sigma);
    so->add_option("--pi0", so_pi0);
    so->add_option("--grid-step", so_step, "search resolution (default delta/200)");

    auto* sc = app.add_subcommand("self-check", "run the invariant suite");
    (void)sc;

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            cfg.pi0_list = parse_grid(pi0_spec);
            cfg.rules.clear();
            std::stringstream ss(rules_spec);
            for (std::string item; std::getline(ss, item, ',');) {
                const auto r = parse_rule(item);
                if (!r) throw std::invalid_argument("unknown rule: " + item);
                cfg.rules.push_back(*r);
            }
            cfg.emit_csv = emit_spec.find("csv") != std::string::npos;
            cfg.emit_svg = emit_spec.find("svg") != std::string::npos;
            cfg.emit_analytic = emit_spec.find("analytic") != std::string::npos;
            cfg.validate();
            return run_simulate(cfg);
        }
        if (an->parsed()) {
            const auto curve = analytic_curve(an_delta, an_sigma, parse_grid(an_grid));
            if (!an_out.empty()) {
                emit_analytic_csv(curve, an_out);
            } else {
                std::printf("pi0,delta_over_sigma,pe_map,pe_ml\n");
                for (const auto& p : curve)
                    std::printf("%.12g,%.12g,%.12g,%.12g\n", p.pi0, p.delta_over_sigma, p.pe_map,
                                p.pe_ml);
            }
            return 0;
        }
        if (so->parsed()) {
            const WrappedGaussian g(so_delta, so_sigma);
            if (so_step <= 0.0) so_step = so_delta / 200.0;
            const SearchResult res = optimal_map_search(g, so_pi0, so_step);
            std::printf("min_pe %.12g over %zu argmin cells (step %.6g)\n", res.min_pe,
                        res.argmin.size(), res.grid_step);
            std::printf("power-minimal argmin: h0=%.12g h1=%.12g\n", res.best_power.h0,
                        res.best_power.h1);
            std::printf("refined spacing |h1-h0| = %.12g (delta/2 = %.12g)\n", res.refined_spacing,
                        so_delta / 2.0);
            return 0;
        }
        return run_self_check();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
