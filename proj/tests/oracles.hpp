#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the code paths they check.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "psmaca/ca_core.hpp"
#include "psmaca/maca.hpp"
#include "psmaca/random.hpp"

namespace psmaca::test {

/// Cycle (rotated to its smallest string) -> member states, as '0'/'1' strings.
using BasinMap = std::map<std::vector<std::string>, std::set<std::string>>;

inline std::string to_bits(unsigned long long value, unsigned width) {
    std::string s(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if ((value >> (width - 1 - i)) & 1ULL) s[i] = '1';
    return s;
}

/// Follows the lattice-level step() from every start state: after 2^n steps
/// the trajectory is on its cycle, which is then walked once.
inline BasinMap brute_force_basins(const ca::RuleTable& rule, unsigned width, ca::Boundary boundary) {
    BasinMap out;
    const unsigned long long count = 1ULL << width;
    for (unsigned long long s = 0; s < count; ++s) {
        const auto start = ca::CaConfiguration::from_string(to_bits(s, width), boundary);
        auto x = start;
        for (unsigned long long k = 0; k < count; ++k) x = ca::step(x, rule);
        std::vector<std::string> cycle{x.to_string()};
        for (auto y = ca::step(x, rule); y != x; y = ca::step(y, rule)) cycle.push_back(y.to_string());
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        out[cycle].insert(start.to_string());
    }
    return out;
}

inline BasinMap canonical(const std::vector<ca::AttractorBasin>& basins, unsigned width) {
    BasinMap out;
    for (const auto& b : basins) {
        std::vector<std::string> cycle;
        for (auto s : b.attractor_cycle) cycle.push_back(to_bits(s, width));
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        auto& members = out[cycle];
        for (auto s : b.members) members.insert(to_bits(s, width));
    }
    return out;
}

inline BasinMap canonical(const std::vector<ca::AttractorBasin>& basins) {
    unsigned width = 0;
    std::size_t total = 0;
    for (const auto& b : basins) total += b.members.size();
    while ((std::size_t{1} << width) < total) ++width;
    return canonical(basins, width);
}

/// Parity of (dv AND pattern) computed character by character.
inline int string_parity(const std::string& dv, const std::string& pattern) {
    int p = 0;
    for (std::size_t i = 0; i < dv.size(); ++i) p ^= (dv[i] == '1' && pattern[i] == '1');
    return p;
}

/// Random patterns of `width` bits whose class is the parity of the bits
/// selected by `hidden`.
inline std::vector<maca::LabeledPattern> parity_dataset(const std::string& hidden, std::size_t count, Rng& rng) {
    std::vector<maca::LabeledPattern> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::string bits;
        for (std::size_t k = 0; k < hidden.size(); ++k) bits.push_back((rng() & 1u) ? '1' : '0');
        out.push_back({BitVector::from_string(bits), string_parity(hidden, bits)});
    }
    return out;
}

/// Direct causal convolution, written independently of signal::convolve.
inline std::vector<double> reference_convolution(const std::vector<double>& x, const std::vector<double>& f) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t t = 0; t < x.size(); ++t)
        for (std::size_t j = 0; j < f.size() && j <= t; ++j) y[t] += f[j] * x[t - j];
    return y;
}

}  // namespace psmaca::test
