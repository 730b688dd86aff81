#pragma once

// Elementary (radius-1, binary) cellular automata: Wolfram rule tables,
// lattice evolution, state-transition graphs and attractor basins.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace psmaca::ca {

enum class Boundary { null, periodic };

Boundary parse_boundary(std::string_view name);
std::string_view to_string(Boundary b);

/// Output bit for each of the eight (left, center, right) neighborhoods.
/// Index b is the neighborhood read as a 3-bit number, so 111 is index 7.
class RuleTable {
public:
    RuleTable() = default;
    explicit RuleTable(const std::array<std::uint8_t, 8>& outputs);

    /// Throws std::out_of_range unless 0 <= rule <= 255.
    static RuleTable from_number(int rule);
    int number() const;

    std::uint8_t operator()(unsigned left, unsigned center, unsigned right) const {
        return outputs_[(left << 2) | (center << 1) | right];
    }
    std::uint8_t output(unsigned neighborhood) const { return outputs_.at(neighborhood); }
    const std::array<std::uint8_t, 8>& outputs() const { return outputs_; }

    bool operator==(const RuleTable&) const = default;

private:
    std::array<std::uint8_t, 8> outputs_{};
};

inline RuleTable rule_from_number(int rule) { return RuleTable::from_number(rule); }
inline int rule_number(const RuleTable& table) { return table.number(); }

struct CaConfiguration {
    std::vector<std::uint8_t> cells;
    Boundary boundary = Boundary::null;

    /// Parses a string of '0'/'1' characters.
    static CaConfiguration from_string(std::string_view bits, Boundary boundary = Boundary::null);
    /// Width cells, all zero except the middle one (left-of-center for even widths).
    static CaConfiguration single_seed(std::size_t width, Boundary boundary = Boundary::null);

    std::size_t width() const { return cells.size(); }
    std::string to_string() const;

    bool operator==(const CaConfiguration&) const = default;
};

CaConfiguration step(const CaConfiguration& config, const RuleTable& rule);

/// Returns steps + 1 rows, starting with the input.
std::vector<CaConfiguration> evolve(const CaConfiguration& config, const RuleTable& rule,
                                    std::size_t steps);

/// One row per configuration, '0'/'1' characters, LF terminated.
std::string space_time_text(const std::vector<CaConfiguration>& rows);

inline constexpr unsigned kMaxGraphWidth = 20;

/// States are packed with cell 0 (leftmost) in the most significant bit.
using State = std::uint32_t;

struct StateTransitionGraph {
    unsigned width = 0;
    Boundary boundary = Boundary::null;
    std::vector<State> successor;

    std::size_t state_count() const { return successor.size(); }
};

/// Throws std::out_of_range unless 1 <= width <= kMaxGraphWidth.
StateTransitionGraph state_transition_graph(const RuleTable& rule, unsigned width,
                                            Boundary boundary = Boundary::null);

std::string state_to_string(State s, unsigned width);

struct AttractorBasin {
    /// Rotated to begin at its smallest state, then in successor order.
    std::vector<State> attractor_cycle;
    /// Sorted ascending; includes the cycle states.
    std::vector<State> members;

    bool operator==(const AttractorBasin&) const = default;
};

/// Basins ordered by the first state of their attractor cycle.
std::vector<AttractorBasin> attractor_basins(const StateTransitionGraph& graph);

}  // namespace psmaca::ca
