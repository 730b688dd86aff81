#include "psmaca/evolve.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace psmaca::evolve {

bool Chromosome::satisfies_invariants(std::size_t n) const {
    if (classifier1.width() != n) return false;
    if (classifier2.size() != classifier1.segment_count()) return false;
    if (!classifier2.bits().any()) return false;
    for (const auto& s : classifier1.segments())
        if (s.size() == 0 || !s.bits().any()) return false;
    return true;
}

std::string Chromosome::serialize() const {
    nlohmann::json j;
    j["classifier1"] = classifier1.to_strings();
    j["classifier2"] = classifier2.to_string();
    return j.dump();
}

void GaConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("population_size must be at least 2");
    if (generations < 1) throw std::invalid_argument("generations must be at least 1");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw std::invalid_argument("crossover_rate must lie in [0,1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw std::invalid_argument("mutation_rate must lie in [0,1]");
    if (elitism_count < 1) throw std::invalid_argument("elitism_count must be at least 1");
    if (elitism_count >= population_size)
        throw std::invalid_argument("elitism_count must be smaller than population_size");
}

void FitnessHistory::write_tsv(std::ostream& os) const {
    os << "generation\tbest\tmean\n";
    for (std::size_t g = 0; g < generations.size(); ++g)
        os << g << '\t' << generations[g].best << '\t' << generations[g].mean << '\n';
}

std::vector<std::size_t> random_partition(std::size_t n, std::size_t m, Rng& rng) {
    if (m < 1 || m > n)
        throw std::invalid_argument("cannot partition " + std::to_string(n) + " into " + std::to_string(m) +
                                    " positive parts");
    // choose m-1 distinct cut points from {1..n-1} (Floyd's sampling)
    std::vector<std::size_t> cuts;
    cuts.reserve(m - 1);
    const std::size_t pool = n - 1;
    for (std::size_t j = pool - (m - 1); j < pool; ++j) {
        const std::size_t t = 1 + static_cast<std::size_t>(uniform_below(rng, j + 1));
        if (std::find(cuts.begin(), cuts.end(), t) == cuts.end()) cuts.push_back(t);
        else cuts.push_back(j + 1);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::size_t> parts;
    parts.reserve(m);
    std::size_t prev = 0;
    for (auto c : cuts) {
        parts.push_back(c - prev);
        prev = c;
    }
    parts.push_back(n - prev);
    return parts;
}

DependencyVector random_dependency_vector(std::size_t length, Rng& rng) {
    if (length == 0) throw std::invalid_argument("dependency vector length must be positive");
    BitVector bits(length);
    do {
        for (std::size_t i = 0; i < length; ++i) bits.set(i, rng() & 1u);
    } while (!bits.any());
    return DependencyVector(std::move(bits));
}

Chromosome random_chromosome(std::size_t n, std::size_t m, Rng& rng) {
    if (m > maca::kMaxSegments) throw std::invalid_argument("too many segments");
    const auto parts = random_partition(n, m, rng);
    std::vector<DependencyVector> dvs;
    dvs.reserve(m);
    for (auto len : parts) dvs.push_back(random_dependency_vector(len, rng));
    DependencyString ds(std::move(dvs));
    auto dv2 = random_dependency_vector(m, rng);
    return Chromosome{std::move(ds), std::move(dv2)};
}

namespace {

// Number of patterns their basin's majority label gets right.
std::size_t majority_hits(std::vector<std::pair<maca::Signature, maca::ClassId>>& keyed) {
    std::sort(keyed.begin(), keyed.end());
    std::size_t hits = 0;
    std::size_t i = 0;
    while (i < keyed.size()) {
        std::size_t best = 0;
        std::size_t j = i;
        while (j < keyed.size() && keyed[j].first == keyed[i].first) {
            std::size_t k = j;
            while (k < keyed.size() && keyed[k] == keyed[j]) ++k;
            best = std::max(best, k - j);
            j = k;
        }
        hits += best;
        i = j;
    }
    return hits;
}

}  // namespace

double fitness(const Chromosome& ch, std::span<const LabeledPattern> training) {
    if (training.empty()) throw std::invalid_argument("fitness needs a non-empty training set");
    std::vector<std::pair<maca::Signature, maca::ClassId>> keyed;
    keyed.reserve(training.size());
    for (const auto& p : training) keyed.emplace_back(ch.classifier1.signature(p.bits), p.label);
    return static_cast<double>(majority_hits(keyed)) / static_cast<double>(training.size());
}

namespace {

DependencyVector matching_classifier2(std::size_t m, const Chromosome& a, const Chromosome& b, Rng& rng) {
    if (a.classifier2.size() == m) return a.classifier2;
    if (b.classifier2.size() == m) return b.classifier2;
    return random_dependency_vector(m, rng);
}

std::vector<std::size_t> prefix_offsets(const DependencyString& ds) {
    std::vector<std::size_t> off{0};
    for (const auto& s : ds.segments()) off.push_back(off.back() + s.size());
    return off;
}

// Keeps the segment count: a's segments [0, k), one bridging segment k, then
// b's segments (k, m). The bridge is b's segment k when the cut is aligned and
// a fresh DV spanning [cut, end of b's segment k) otherwise.
Chromosome crossover_same_m(const Chromosome& a, const Chromosome& b, Rng& rng) {
    const auto& sa = a.classifier1.segments();
    const auto& sb = b.classifier1.segments();
    const std::size_t m = sa.size();
    const auto pa = prefix_offsets(a.classifier1);
    const auto pb = prefix_offsets(b.classifier1);

    std::vector<std::size_t> cuts;
    for (std::size_t k = 0; k <= m; ++k)
        if (k == m || pb[k + 1] > pa[k]) cuts.push_back(k);
    const std::size_t k = cuts[static_cast<std::size_t>(uniform_below(rng, cuts.size()))];
    if (k == m) return a;

    std::vector<DependencyVector> child(sa.begin(), sa.begin() + static_cast<std::ptrdiff_t>(k));
    if (pa[k] == pb[k]) child.push_back(sb[k]);
    else child.push_back(random_dependency_vector(pb[k + 1] - pa[k], rng));
    child.insert(child.end(), sb.begin() + static_cast<std::ptrdiff_t>(k + 1), sb.end());
    return Chromosome{DependencyString(std::move(child)), a.classifier2};
}

}  // namespace

Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
    if (a.width() != b.width())
        throw std::invalid_argument("crossover of chromosomes with widths " + std::to_string(a.width()) +
                                    " and " + std::to_string(b.width()));
    const auto& sa = a.classifier1.segments();
    const auto& sb = b.classifier1.segments();
    if (sa.size() == sb.size()) return crossover_same_m(a, b, rng);

    const std::size_t k = static_cast<std::size_t>(uniform_below(rng, sa.size() + 1));
    std::vector<DependencyVector> child(sa.begin(), sa.begin() + static_cast<std::ptrdiff_t>(k));
    std::size_t cut = 0;
    for (const auto& s : child) cut += s.size();

    std::size_t start = 0;
    for (const auto& s : sb) {
        const std::size_t end = start + s.size();
        if (end > cut) {
            if (start >= cut) child.push_back(s);
            else child.push_back(random_dependency_vector(end - cut, rng));
        }
        start = end;
    }
    if (child.size() > maca::kMaxSegments) return a;

    const std::size_t m = child.size();
    DependencyString ds(std::move(child));
    auto dv2 = matching_classifier2(m, a, b, rng);
    return Chromosome{std::move(ds), std::move(dv2)};
}

namespace {

void repair(BitVector& bits, Rng& rng) {
    if (!bits.any()) bits.set(static_cast<std::size_t>(uniform_below(rng, bits.size())), true);
}

}  // namespace

Chromosome mutate(const Chromosome& ch, double rate, Rng& rng) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutation rate must lie in [0,1]");
    const auto& segs = ch.classifier1.segments();
    std::vector<std::size_t> lengths = ch.classifier1.segment_lengths();

    BitVector flat(0);
    for (const auto& s : segs) flat.append(s.bits());
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (bernoulli(rng, rate)) flat.flip(i);

    if (bernoulli(rng, rate) && lengths.size() >= 2) {
        const std::size_t boundary = static_cast<std::size_t>(uniform_below(rng, lengths.size() - 1));
        const bool right = rng() & 1u;
        if (right && lengths[boundary + 1] > 1) {
            ++lengths[boundary];
            --lengths[boundary + 1];
        } else if (!right && lengths[boundary] > 1) {
            --lengths[boundary];
            ++lengths[boundary + 1];
        }
    }

    std::vector<DependencyVector> dvs;
    dvs.reserve(lengths.size());
    std::size_t offset = 0;
    for (auto len : lengths) {
        BitVector seg = flat.slice(offset, len);
        repair(seg, rng);
        dvs.emplace_back(std::move(seg));
        offset += len;
    }

    BitVector dv2 = ch.classifier2.bits();
    for (std::size_t i = 0; i < dv2.size(); ++i)
        if (bernoulli(rng, rate)) dv2.flip(i);
    repair(dv2, rng);

    return Chromosome{DependencyString(std::move(dvs)), DependencyVector(std::move(dv2))};
}

namespace {

std::size_t tournament(const std::vector<double>& fit, Rng& rng) {
    const auto i = static_cast<std::size_t>(uniform_below(rng, fit.size()));
    const auto j = static_cast<std::size_t>(uniform_below(rng, fit.size()));
    return fit[j] > fit[i] ? j : i;
}

}  // namespace

EvolutionResult evolve_maca(std::span<const LabeledPattern> training, std::size_t n, std::size_t m,
                            const GaConfig& config, std::span<const Chromosome> seeds) {
    config.validate();
    if (training.empty()) throw std::invalid_argument("evolution needs a non-empty training set");
    for (const auto& p : training)
        if (p.bits.size() != n)
            throw std::invalid_argument("training pattern length " + std::to_string(p.bits.size()) +
                                        " does not match n = " + std::to_string(n));

    Rng rng(config.rng_seed);
    std::vector<Chromosome> population;
    population.reserve(config.population_size);
    for (const auto& s : seeds) {
        if (population.size() == config.population_size) break;
        if (s.width() != n) throw std::invalid_argument("seed chromosome width does not match n");
        population.push_back(s);
    }
    while (population.size() < config.population_size) population.push_back(random_chromosome(n, m, rng));

    std::optional<EvolutionResult> result;
    std::vector<double> fit(population.size());
    std::vector<std::size_t> order(population.size());

    for (std::size_t g = 0; g < config.generations; ++g) {
        for (std::size_t i = 0; i < population.size(); ++i) fit[i] = fitness(population[i], training);

        const auto best_it = std::max_element(fit.begin(), fit.end());
        const auto best_idx = static_cast<std::size_t>(best_it - fit.begin());
        // summation rounding can push the mean a hair above the max
        const double mean =
            std::min(*best_it, std::accumulate(fit.begin(), fit.end(), 0.0) / static_cast<double>(fit.size()));

        if (!result) result.emplace(EvolutionResult{population[best_idx], *best_it, {}});
        else if (*best_it > result->best_fitness) {
            result->best = population[best_idx];
            result->best_fitness = *best_it;
        }
        result->history.generations.push_back({*best_it, mean, population[best_idx]});

        if (g + 1 == config.generations) break;

        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return fit[x] > fit[y]; });

        std::vector<Chromosome> next;
        next.reserve(population.size());
        for (std::size_t e = 0; e < config.elitism_count; ++e) next.push_back(population[order[e]]);
        while (next.size() < population.size()) {
            const auto& p1 = population[tournament(fit, rng)];
            Chromosome child = p1;
            if (bernoulli(rng, config.crossover_rate)) {
                const auto& p2 = population[tournament(fit, rng)];
                child = crossover(p1, p2, rng);
            }
            next.push_back(mutate(child, config.mutation_rate, rng));
        }
        population = std::move(next);
    }
    return std::move(*result);
}

}  // namespace psmaca::evolve
