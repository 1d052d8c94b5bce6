#include "modsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "modsim/kernels.hpp"

namespace modsim {

const char* to_string(RuleLabel r) {
    switch (r) {
        case RuleLabel::Map: return "map";
        case RuleLabel::Ml: return "ml";
        case RuleLabel::Estimated: return "estimated";
    }
    return "?";
}

std::optional<RuleLabel> parse_rule(const std::string& s) {
    if (s == "map") return RuleLabel::Map;
    if (s == "ml") return RuleLabel::Ml;
    if (s == "estimated") return RuleLabel::Estimated;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("config: delta must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("config: sigma must be positive");
    if (n_bits < 1) throw std::invalid_argument("config: n-bits must be >= 1");
    if (repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
    if (pi0_list.empty()) throw std::invalid_argument("config: pi0 list must be nonempty");
    for (double p : pi0_list)
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("config: pi0 values must be in [0, 1]");
    if (rules.empty()) throw std::invalid_argument("config: rule list must be nonempty");
}

uint64_t trial_seed(uint64_t master_seed, double pi0, RuleLabel rule, std::size_t trial_index) {
    uint64_t s = hash_seed(master_seed, std::bit_cast<uint64_t>(pi0));
    s = hash_seed(s, static_cast<uint64_t>(rule));
    return hash_seed(s, trial_index);
}

TrialRecord run_trial(const ExperimentConfig& cfg, double pi0, RuleLabel rule,
                      std::size_t trial_index) {
    const uint64_t seed = trial_seed(cfg.master_seed, pi0, rule, trial_index);
    const WrappedGaussian g(cfg.delta, cfg.sigma);
    const SymbolMap map = optimal_symbol_map(cfg.delta);

    const std::vector<uint8_t> bits = generate_bits({pi0, hash_seed(seed, 1)}, cfg.n_bits);
    const std::vector<double> symbols = map_bits(bits, map);
    const std::vector<double> y = transmit(symbols, {cfg.delta, cfg.sigma, hash_seed(seed, 2)});

    std::vector<uint8_t> decisions;
    std::optional<double> pi0_hat;
    switch (rule) {
        case RuleLabel::Map:
            decisions = decide_sequence(DecisionRule::map(pi0), g, map, y);
            break;
        case RuleLabel::Ml:
            decisions = decide_sequence(DecisionRule::ml(), g, map, y);
            break;
        case RuleLabel::Estimated: {
            TwoStepResult r = two_step_decode(g, map, y, pe_ml(g, map));
            decisions = std::move(r.decisions);
            pi0_hat = r.estimate.pi0_hat;
            break;
        }
    }
    const std::size_t errors =
        kernels::active().count_mismatch(bits.data(), decisions.data(), cfg.n_bits);
    return {pi0, rule, trial_index, static_cast<double>(errors) / static_cast<double>(cfg.n_bits),
            pi0_hat, seed};
}

std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.output_path.empty()) {
        // fail on an unwritable destination before spending any compute
        std::ofstream probe(cfg.output_path, std::ios::app);
        if (!probe) throw std::runtime_error("cannot write output path: " + cfg.output_path);
    }

    struct Job {
        std::size_t pi0_index, rule_index, trial_index;
    };
    std::vector<Job> jobs;
    for (std::size_t pi = 0; pi < cfg.pi0_list.size(); ++pi)
        for (std::size_t ri = 0; ri < cfg.rules.size(); ++ri)
            for (std::size_t ti = 0; ti < cfg.repeats; ++ti) jobs.push_back({pi, ri, ti});

    std::vector<TrialRecord> records(jobs.size(),
                                     TrialRecord{0, RuleLabel::Map, 0, 0, std::nullopt, 0});
    auto run_job = [&](std::size_t j) {
        const Job& job = jobs[j];
        records[j] = run_trial(cfg, cfg.pi0_list[job.pi0_index], cfg.rules[job.rule_index],
                               job.trial_index);
    };
    if (cfg.n_threads <= 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < cfg.n_threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1))
                    run_job(j);
            });
        for (auto& th : pool) th.join();
    }

    std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        if (a.pi0 != b.pi0) return a.pi0 < b.pi0;
        if (a.rule != b.rule) return static_cast<int>(a.rule) < static_cast<int>(b.rule);
        return a.trial_index < b.trial_index;
    });
    return records;
}

std::vector<AnalyticPoint> analytic_curve(double delta, double sigma,
                                          const std::vector<double>& pi0_grid) {
    const WrappedGaussian g(delta, sigma);
    const SymbolMap map = optimal_symbol_map(delta);
    const double ml = pe_ml(g, map);
    std::vector<AnalyticPoint> out;
    out.reserve(pi0_grid.size());
    for (double p : pi0_grid) out.push_back({p, delta / sigma, pe_map(g, p).pe, ml});
    return out;
}

namespace {

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

} // namespace

void emit_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_csv: no records");
    std::ofstream f = open_or_throw(path);
    f << "pi0,rule,trial,ber,pi0_hat,seed\n";
    for (const TrialRecord& r : records) {
        f << fmt12(r.pi0) << ',' << to_string(r.rule) << ',' << r.trial_index << ',' << fmt12(r.ber)
          << ',' << (r.pi0_hat ? fmt12(*r.pi0_hat) : std::string{}) << ',' << r.seed_used << '\n';
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

void emit_analytic_csv(const std::vector<AnalyticPoint>& curve, const std::string& path) {
    if (curve.empty()) throw std::invalid_argument("emit_analytic_csv: no points");
    std::ofstream f = open_or_throw(path);
    f << "pi0,delta_over_sigma,pe_map,pe_ml\n";
    for (const AnalyticPoint& p : curve)
        f << fmt12(p.pi0) << ',' << fmt12(p.delta_over_sigma) << ',' << fmt12(p.pe_map) << ','
          << fmt12(p.pe_ml) << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

struct Series {
    std::vector<double> x, mean, sd;
};

Series aggregate(const std::vector<TrialRecord>& records, RuleLabel rule, bool use_pi0_hat) {
    std::map<double, std::vector<double>> byp;
    for (const TrialRecord& r : records) {
        if (r.rule != rule) continue;
        if (use_pi0_hat) {
            if (r.pi0_hat) byp[r.pi0].push_back(*r.pi0_hat);
        } else {
            byp[r.pi0].push_back(r.ber);
        }
    }
    Series s;
    for (auto& [p, v] : byp) {
        double m = 0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double var = 0;
        for (double x : v) var += (x - m) * (x - m);
        var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
        s.x.push_back(p);
        s.mean.push_back(m);
        s.sd.push_back(std::sqrt(var));
    }
    return s;
}

class SvgPlot {
public:
    SvgPlot(double xmin, double xmax, double ymin, double ymax, double x_off)
        : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), x_off_(x_off) {}

    double px(double x) const { return x_off_ + kPad + (x - xmin_) / (xmax_ - xmin_) * kW; }
    double py(double y) const { return kPad + (1.0 - (y - ymin_) / (ymax_ - ymin_)) * kH; }

    void axes(std::ostream& o, const std::string& xlabel, const std::string& ylabel) const {
        o << "<rect x='" << x_off_ + kPad << "' y='" << kPad << "' width='" << kW << "' height='"
          << kH << "' fill='none' stroke='black'/>\n";
        for (int i = 0; i <= 5; ++i) {
            const double x = xmin_ + (xmax_ - xmin_) * i / 5.0;
            const double y = ymin_ + (ymax_ - ymin_) * i / 5.0;
            o << "<text x='" << px(x) << "' y='" << kPad + kH + 18
              << "' font-size='11' text-anchor='middle'>" << fmt12(std::round(x * 1000) / 1000)
              << "</text>\n";
            o << "<text x='" << x_off_ + kPad - 6 << "' y='" << py(y) + 4
              << "' font-size='11' text-anchor='end'>" << fmt12(std::round(y * 1000) / 1000)
              << "</text>\n";
        }
        o << "<text x='" << x_off_ + kPad + kW / 2 << "' y='" << kPad + kH + 36
          << "' font-size='13' text-anchor='middle'>" << xlabel << "</text>\n";
        o << "<text x='" << x_off_ + 14 << "' y='" << kPad + kH / 2
          << "' font-size='13' text-anchor='middle' transform='rotate(-90 " << x_off_ + 14 << " "
          << kPad + kH / 2 << ")'>" << ylabel << "</text>\n";
    }

    void polyline(std::ostream& o, const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& color, const std::string& dash = "") const {
        o << "<polyline fill='none' stroke='" << color << "'";
        if (!dash.empty()) o << " stroke-dasharray='" << dash << "'";
        o << " stroke-width='1.5' points='";
        for (std::size_t i = 0; i < x.size(); ++i) o << px(x[i]) << ',' << py(y[i]) << ' ';
        o << "'/>\n";
    }

    void band(std::ostream& o, const Series& s, const std::string& color) const {
        if (s.x.empty()) return;
        o << "<polygon fill='" << color << "' fill-opacity='0.2' stroke='none' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            o << px(s.x[i]) << ',' << py(clampy(s.mean[i] + s.sd[i])) << ' ';
        for (std::size_t i = s.x.size(); i-- > 0;)
            o << px(s.x[i]) << ',' << py(clampy(s.mean[i] - s.sd[i])) << ' ';
        o << "'/>\n";
    }

    static constexpr double kW = 420, kH = 300, kPad = 55;

private:
    double clampy(double y) const { return std::clamp(y, ymin_, ymax_); }
    double xmin_, xmax_, ymin_, ymax_, x_off_;
};

} // namespace

void emit_svg(const std::vector<TrialRecord>& records, const std::vector<AnalyticPoint>& analytic,
              const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_svg: no records");
    const Series ber_map = aggregate(records, RuleLabel::Map, false);
    const Series ber_ml = aggregate(records, RuleLabel::Ml, false);
    const Series ber_est = aggregate(records, RuleLabel::Estimated, false);
    const Series est_prior = aggregate(records, RuleLabel::Estimated, true);
    const bool with_prior_panel = !est_prior.x.empty();

    double xmin = 1e300, xmax = -1e300, ymax = 0.0;
    for (const TrialRecord& r : records) {
        xmin = std::min(xmin, r.pi0);
        xmax = std::max(xmax, r.pi0);
    }
    if (xmax <= xmin) xmax = xmin + 1e-3;
    for (const Series* s : {&ber_map, &ber_ml, &ber_est})
        for (std::size_t i = 0; i < s->x.size(); ++i) ymax = std::max(ymax, s->mean[i] + s->sd[i]);
    for (const AnalyticPoint& p : analytic) ymax = std::max(ymax, std::max(p.pe_map, p.pe_ml));
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.1;

    const double panel = SvgPlot::kW + 2 * SvgPlot::kPad;
    const double width = with_prior_panel ? 2 * panel : panel;
    std::ofstream f = open_or_throw(path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
      << SvgPlot::kH + 2 * SvgPlot::kPad << "'>\n";

    SvgPlot p1(xmin, xmax, 0.0, ymax, 0.0);
    p1.axes(f, "pi0", "error rate");
    p1.band(f, ber_map, "blue");
    p1.band(f, ber_ml, "red");
    p1.band(f, ber_est, "green");
    for (const auto& [s, c] : {std::pair{&ber_map, "blue"}, {&ber_ml, "red"}, {&ber_est, "green"}})
        if (!s->x.empty()) p1.polyline(f, s->x, s->mean, c);
    if (!analytic.empty()) {
        std::vector<double> ax, amap, aml;
        for (const AnalyticPoint& p : analytic) {
            ax.push_back(p.pi0);
            amap.push_back(p.pe_map);
            aml.push_back(p.pe_ml);
        }
        p1.polyline(f, ax, amap, "blue", "4,3");
        p1.polyline(f, ax, aml, "red", "4,3");
    }
    f << "<text x='" << SvgPlot::kPad << "' y='16' font-size='12'>"
      << "solid: empirical mean (band = +/-1 std); dashed: analytic; "
      << "blue=map red=ml green=estimated</text>\n";

    if (with_prior_panel) {
        SvgPlot p2(xmin, xmax, 0.0, 1.0, panel);
        p2.axes(f, "pi0", "estimated prior");
        p2.band(f, est_prior, "green");
        p2.polyline(f, est_prior.x, est_prior.mean, "green");
        p2.polyline(f, {xmin, xmax}, {xmin, xmax}, "black", "2,3"); // identity reference
    }
    f << "</svg>\n";
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace modsim
