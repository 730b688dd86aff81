#include "psmaca/ca_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace psmaca::ca {

Boundary parse_boundary(std::string_view name) {
    if (name == "null") return Boundary::null;
    if (name == "periodic") return Boundary::periodic;
    throw std::invalid_argument("unknown boundary '" + std::string(name) + "' (expected null|periodic)");
}

std::string_view to_string(Boundary b) {
    return b == Boundary::null ? "null" : "periodic";
}

RuleTable::RuleTable(const std::array<std::uint8_t, 8>& outputs) : outputs_(outputs) {
    for (auto v : outputs_)
        if (v > 1) throw std::invalid_argument("rule table entries must be 0 or 1");
}

RuleTable RuleTable::from_number(int rule) {
    if (rule < 0 || rule > 255)
        throw std::out_of_range("rule number " + std::to_string(rule) + " outside 0..255");
    RuleTable t;
    for (unsigned b = 0; b < 8; ++b) t.outputs_[b] = static_cast<std::uint8_t>((rule >> b) & 1);
    return t;
}

int RuleTable::number() const {
    int r = 0;
    for (unsigned b = 0; b < 8; ++b) r |= outputs_[b] << b;
    return r;
}

CaConfiguration CaConfiguration::from_string(std::string_view bits, Boundary boundary) {
    if (bits.empty()) throw std::invalid_argument("configuration must have at least one cell");
    CaConfiguration c;
    c.boundary = boundary;
    c.cells.reserve(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("invalid cell character at position " + std::to_string(i));
        c.cells.push_back(static_cast<std::uint8_t>(bits[i] - '0'));
    }
    return c;
}

CaConfiguration CaConfiguration::single_seed(std::size_t width, Boundary boundary) {
    if (width == 0) throw std::invalid_argument("configuration must have at least one cell");
    CaConfiguration c;
    c.boundary = boundary;
    c.cells.assign(width, 0);
    c.cells[(width - 1) / 2] = 1;
    return c;
}

std::string CaConfiguration::to_string() const {
    std::string s;
    s.reserve(cells.size());
    for (auto v : cells) s.push_back(static_cast<char>('0' + v));
    return s;
}

CaConfiguration step(const CaConfiguration& config, const RuleTable& rule) {
    const std::size_t n = config.cells.size();
    const bool wrap = config.boundary == Boundary::periodic;
    CaConfiguration next;
    next.boundary = config.boundary;
    next.cells.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        unsigned left = 0, right = 0;
        if (i > 0) left = config.cells[i - 1];
        else if (wrap) left = config.cells[n - 1];
        if (i + 1 < n) right = config.cells[i + 1];
        else if (wrap) right = config.cells[0];
        next.cells[i] = rule(left, config.cells[i], right);
    }
    return next;
}

std::vector<CaConfiguration> evolve(const CaConfiguration& config, const RuleTable& rule,
                                    std::size_t steps) {
    std::vector<CaConfiguration> rows;
    rows.reserve(steps + 1);
    rows.push_back(config);
    for (std::size_t t = 0; t < steps; ++t) rows.push_back(step(rows.back(), rule));
    return rows;
}

std::string space_time_text(const std::vector<CaConfiguration>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += r.to_string();
        out += '\n';
    }
    return out;
}

namespace {

State packed_step(State s, unsigned width, const RuleTable& rule, bool wrap) {
    State next = 0;
    for (unsigned i = 0; i < width; ++i) {
        // cell i lives at bit (width - 1 - i)
        const unsigned bit = width - 1 - i;
        unsigned left = 0, right = 0;
        if (i > 0) left = (s >> (bit + 1)) & 1u;
        else if (wrap) left = s & 1u;
        if (i + 1 < width) right = (s >> (bit - 1)) & 1u;
        else if (wrap) right = (s >> (width - 1)) & 1u;
        next |= static_cast<State>(rule(left, (s >> bit) & 1u, right)) << bit;
    }
    return next;
}

}  // namespace

StateTransitionGraph state_transition_graph(const RuleTable& rule, unsigned width, Boundary boundary) {
    if (width < 1 || width > kMaxGraphWidth)
        throw std::out_of_range("state transition graph width " + std::to_string(width) +
                                " outside 1.." + std::to_string(kMaxGraphWidth));
    StateTransitionGraph g;
    g.width = width;
    g.boundary = boundary;
    const State count = State{1} << width;
    g.successor.resize(count);
    const bool wrap = boundary == Boundary::periodic;
    for (State s = 0; s < count; ++s) g.successor[s] = packed_step(s, width, rule, wrap);
    return g;
}

std::string state_to_string(State s, unsigned width) {
    std::string out(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if ((s >> (width - 1 - i)) & 1u) out[i] = '1';
    return out;
}

std::vector<AttractorBasin> attractor_basins(const StateTransitionGraph& graph) {
    constexpr std::uint32_t unvisited = 0xffffffffu;
    const std::size_t count = graph.successor.size();
    // basin_of[s]: basin index once resolved; on_path[s]: walk id while being explored
    std::vector<std::uint32_t> basin_of(count, unvisited);
    std::vector<std::uint32_t> on_path(count, unvisited);
    std::vector<AttractorBasin> basins;
    std::vector<State> path;

    for (State start = 0; start < count; ++start) {
        if (basin_of[start] != unvisited) continue;
        path.clear();
        State s = start;
        while (basin_of[s] == unvisited && on_path[s] != start) {
            on_path[s] = start;
            path.push_back(s);
            s = graph.successor[s];
        }
        std::uint32_t basin;
        if (basin_of[s] != unvisited) {
            basin = basin_of[s];
        } else {
            // s closes a new cycle on the current walk
            basin = static_cast<std::uint32_t>(basins.size());
            AttractorBasin b;
            auto cycle_begin = std::find(path.begin(), path.end(), s);
            b.attractor_cycle.assign(cycle_begin, path.end());
            std::rotate(b.attractor_cycle.begin(),
                        std::min_element(b.attractor_cycle.begin(), b.attractor_cycle.end()),
                        b.attractor_cycle.end());
            basins.push_back(std::move(b));
        }
        for (State p : path) {
            basin_of[p] = basin;
            basins[basin].members.push_back(p);
        }
    }

    for (auto& b : basins) std::sort(b.members.begin(), b.members.end());
    std::sort(basins.begin(), basins.end(), [](const AttractorBasin& a, const AttractorBasin& b) {
        return a.attractor_cycle.front() < b.attractor_cycle.front();
    });
    return basins;
}

}  // namespace psmaca::ca
