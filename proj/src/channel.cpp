#include "modsim/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "modsim/kernels.hpp"

namespace modsim {

double mod_reduce(double x, double delta) {
    if (!std::isfinite(x)) throw std::invalid_argument("mod_reduce: non-finite argument");
    if (!(delta > 0.0)) throw std::invalid_argument("mod_reduce: delta must be positive");
    double r = x - delta * std::floor(x / delta + 0.5);
    if (r >= delta / 2.0) r -= delta; // x/delta + 0.5 can round down at the boundary
    if (r < -delta / 2.0) r += delta;
    return r;
}

SymbolMap::SymbolMap(double h0_, double h1_, double delta_) : h0(h0_), h1(h1_), delta(delta_) {
    if (!(delta > 0.0)) throw std::invalid_argument("SymbolMap: delta must be positive");
    const double half = delta / 2.0;
    if (h0 < -half || h0 >= half || h1 < -half || h1 >= half)
        throw std::invalid_argument("SymbolMap: symbols must lie in [-delta/2, delta/2)");
    if (h0 == h1) throw std::invalid_argument("SymbolMap: h0 == h1");
}

double average_power(const SymbolMap& map, double pi0) {
    return pi0 * map.h0 * map.h0 + (1.0 - pi0) * map.h1 * map.h1;
}

SymbolMap optimal_symbol_map(double delta) {
    return SymbolMap(-delta / 4.0, delta / 4.0, delta);
}

uint64_t hash_seed(uint64_t a, uint64_t b) {
    // splitmix64 over the combined words
    uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::vector<uint8_t> generate_bits(const BitSource& src, std::size_t n) {
    if (n < 1) throw std::invalid_argument("generate_bits: n must be >= 1");
    if (src.pi0 < 0.0 || src.pi0 > 1.0)
        throw std::invalid_argument("generate_bits: pi0 must be in [0, 1]");
    std::mt19937_64 rng(src.seed);
    std::vector<uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (rng() >> 11) * 0x1p-53;
        bits[i] = u < src.pi0 ? 0 : 1;
    }
    return bits;
}

std::vector<double> map_bits(const std::vector<uint8_t>& bits, const SymbolMap& map) {
    if (bits.empty()) throw std::invalid_argument("map_bits: empty bit sequence");
    std::vector<double> out(bits.size());
    kernels::active().map_bits(bits.data(), out.data(), bits.size(), map.h0, map.h1);
    return out;
}

std::vector<double> transmit(const std::vector<double>& symbols, const ChannelParams& ch) {
    if (!(ch.delta > 0.0) || !(ch.sigma > 0.0))
        throw std::invalid_argument("transmit: delta and sigma must be positive");
    std::mt19937_64 rng(ch.seed);
    const std::size_t n = symbols.size();
    std::vector<double> y(n);
    // Box-Muller, one pair per draw
    double cached = 0.0;
    bool have_cached = false;
    for (std::size_t i = 0; i < n; ++i) {
        double z;
        if (have_cached) {
            z = cached;
            have_cached = false;
        } else {
            const double u1 = ((rng() >> 11) + 1) * 0x1p-53; // in (0, 1]
            const double u2 = (rng() >> 11) * 0x1p-53;
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double t = 2.0 * std::numbers::pi * u2;
            z = r * std::cos(t);
            cached = r * std::sin(t);
            have_cached = true;
        }
        y[i] = symbols[i] + ch.sigma * z;
    }
    kernels::active().mod_reduce(y.data(), y.data(), n, ch.delta);
    return y;
}

const std::string& gaussian_method_name() {
    static const std::string name = "box-muller";
    return name;
}

} // namespace modsim
