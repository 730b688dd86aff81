#pragma once

// Genetic search over MACA chromosomes. A chromosome is Classifier #1, an
// n-bit dependency string of m segments, followed by Classifier #2, an m-bit
// dependency vector.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "psmaca/maca.hpp"
#include "psmaca/random.hpp"

namespace psmaca::evolve {

using maca::DependencyString;
using maca::DependencyVector;
using maca::LabeledPattern;

struct Chromosome {
    DependencyString classifier1;
    DependencyVector classifier2;

    std::size_t width() const { return classifier1.width(); }
    std::size_t segment_count() const { return classifier1.segment_count(); }

    /// Sum of segment lengths is n, classifier2 has m bits, every DV nonzero.
    bool satisfies_invariants(std::size_t n) const;
    /// Canonical single-line JSON form.
    std::string serialize() const;

    bool operator==(const Chromosome&) const = default;
};

struct GaConfig {
    std::size_t population_size = 50;
    std::size_t generations = 100;
    double crossover_rate = 0.9;
    double mutation_rate = 0.02;
    std::size_t elitism_count = 2;
    std::uint64_t rng_seed = 1;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;

    bool operator==(const GaConfig&) const = default;
};

struct GenerationStats {
    double best = 0.0;
    double mean = 0.0;
    Chromosome best_chromosome;
};

struct FitnessHistory {
    std::vector<GenerationStats> generations;

    /// "generation\tbest\tmean" header followed by one row per generation.
    void write_tsv(std::ostream& os) const;
};

struct EvolutionResult {
    Chromosome best;
    double best_fitness = 0.0;
    FitnessHistory history;
};

/// m positive parts summing to n; every composition has positive probability.
/// Throws std::invalid_argument unless 1 <= m <= n.
std::vector<std::size_t> random_partition(std::size_t n, std::size_t m, Rng& rng);

/// Uniform over the nonzero vectors of the given length.
DependencyVector random_dependency_vector(std::size_t length, Rng& rng);

Chromosome random_chromosome(std::size_t n, std::size_t m, Rng& rng);

/// Training accuracy when every basin of classifier1 is labeled with its
/// majority class. Throws std::invalid_argument for an empty training set.
double fitness(const Chromosome& ch, std::span<const LabeledPattern> training);

/// Prefix of a's segments joined to the suffix of b's at one of a's segment
/// boundaries; a b segment straddling the cut is replaced by a fresh DV. When
/// both parents have m segments the child has m segments too.
Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

/// Per-bit flips at `rate` with zero-DV repair, plus a boundary shift of one
/// position with probability `rate`.
Chromosome mutate(const Chromosome& ch, double rate, Rng& rng);

/// Runs the GA. `seeds` replace the first members of the initial population.
EvolutionResult evolve_maca(std::span<const LabeledPattern> training, std::size_t n, std::size_t m,
                            const GaConfig& config, std::span<const Chromosome> seeds = {});

}  // namespace psmaca::evolve
