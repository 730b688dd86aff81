#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "psmaca/evolve.hpp"
#include "oracles.hpp"

using namespace psmaca;
using namespace psmaca::evolve;

namespace {

Chromosome make(std::vector<std::string> ds, const char* dv2) {
    return Chromosome{DependencyString::from_strings(ds), DependencyVector::from_string(dv2)};
}

GaConfig quick(std::uint64_t seed) {
    GaConfig c;
    c.population_size = 16;
    c.generations = 12;
    c.rng_seed = seed;
    return c;
}

}  // namespace

TEST_CASE("random_partition") {
    Rng rng(1);
    CHECK(random_partition(5, 5, rng) == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(random_partition(8, 1, rng) == std::vector<std::size_t>{8});
    for (int i = 0; i < 100; ++i) {
        const auto p = random_partition(8, 3, rng);
        CHECK(p.size() == 3);
        CHECK(std::accumulate(p.begin(), p.end(), std::size_t{0}) == 8);
        for (auto x : p) CHECK(x >= 1);
    }
    CHECK_THROWS_AS(random_partition(3, 4, rng), std::invalid_argument);
    CHECK_THROWS_AS(random_partition(3, 0, rng), std::invalid_argument);
}

TEST_CASE("every composition of 6 into 3 parts is reachable") {
    Rng rng(2);
    std::set<std::vector<std::size_t>> seen;
    for (int i = 0; i < 2000; ++i) seen.insert(random_partition(6, 3, rng));
    // C(5, 2) compositions
    CHECK(seen.size() == 10);
}

TEST_CASE("random_chromosome") {
    Rng rng(3);
    const auto tiny = random_chromosome(1, 1, rng);
    CHECK(tiny == make({"1"}, "1"));
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + uniform_below(rng, 40);
        const std::size_t m = 1 + uniform_below(rng, n);
        CHECK(random_chromosome(n, m, rng).satisfies_invariants(n));
    }
    Rng a(99), b(99);
    CHECK(random_chromosome(20, 4, a) == random_chromosome(20, 4, b));
}

TEST_CASE("fitness") {
    const std::vector<LabeledPattern> single = {{BitVector::from_string("0110"), 2}, {BitVector::from_string("1011"), 2}};
    Rng rng(4);
    for (int i = 0; i < 10; ++i) CHECK(fitness(random_chromosome(4, 2, rng), single) == 1.0);

    // class = parity of the first segment "11" over bits 0..1
    std::vector<LabeledPattern> separable;
    for (unsigned long long p = 0; p < 16; ++p) {
        const auto bits = test::to_bits(p, 4);
        separable.push_back({BitVector::from_string(bits), test::string_parity("1100", bits)});
    }
    CHECK(fitness(make({"11", "01"}, "11"), separable) == 1.0);
    CHECK(fitness(make({"1000"}, "1"), separable) == 0.5);

    const std::vector<LabeledPattern> clash = {{BitVector::from_string("101"), 0}, {BitVector::from_string("101"), 1}};
    CHECK(fitness(make({"111"}, "1"), clash) == 0.5);
    CHECK_THROWS_AS(fitness(make({"1"}, "1"), {}), std::invalid_argument);
}

TEST_CASE("fitness ignores training order") {
    Rng rng(5);
    auto data = test::parity_dataset("10110110", 80, rng);
    for (int i = 0; i < 20; ++i) {
        const auto ch = random_chromosome(8, 2, rng);
        const double before = fitness(ch, data);
        std::shuffle(data.begin(), data.end(), rng);
        CHECK(fitness(ch, data) == before);
    }
}

TEST_CASE("crossover") {
    Rng rng(6);
    const auto a = make({"101", "1", "0110"}, "101");
    CHECK(crossover(a, a, rng) == a);

    for (int i = 0; i < 300; ++i) {
        const auto x = random_chromosome(12, 3, rng);
        const auto y = random_chromosome(12, 3, rng);
        const auto child = crossover(x, y, rng);
        CHECK(child.satisfies_invariants(12));
        CHECK(child.segment_count() == 3);
    }
    for (int i = 0; i < 100; ++i) {
        const auto x = random_chromosome(12, 2, rng);
        const auto y = random_chromosome(12, 5, rng);
        CHECK(crossover(x, y, rng).satisfies_invariants(12));
    }

    Rng r1(42), r2(42);
    const auto b = make({"11", "11111", "1"}, "011");
    CHECK(crossover(a, b, r1) == crossover(a, b, r2));
    CHECK_THROWS_AS(crossover(a, make({"1"}, "1"), rng), std::invalid_argument);
}

TEST_CASE("mutate") {
    Rng rng(8);
    const auto a = make({"101", "1", "0110"}, "101");
    CHECK(mutate(a, 0.0, rng) == a);
    CHECK(mutate(make({"1"}, "1"), 1.0, rng) == make({"1"}, "1"));
    for (int i = 0; i < 500; ++i) {
        const auto x = random_chromosome(10, 1 + uniform_below(rng, 10), rng);
        const auto y = mutate(x, uniform_unit(rng), rng);
        CHECK(y.satisfies_invariants(10));
        CHECK(y.segment_count() == x.segment_count());
    }
    CHECK_THROWS_AS(mutate(a, 1.5, rng), std::invalid_argument);
}

TEST_CASE("GaConfig validation") {
    GaConfig c;
    CHECK_NOTHROW(c.validate());
    c.elitism_count = c.population_size;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = GaConfig{};
    c.mutation_rate = -0.1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = GaConfig{};
    c.population_size = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = GaConfig{};
    c.generations = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("evolve_maca with a perfect seed reports fitness 1 after one generation") {
    std::vector<LabeledPattern> data;
    for (unsigned long long p = 0; p < 32; ++p) {
        const auto bits = test::to_bits(p, 5);
        data.push_back({BitVector::from_string(bits), test::string_parity("01101", bits)});
    }
    auto config = quick(1);
    config.generations = 1;
    const std::vector<Chromosome> seeds = {make({"01101"}, "1")};
    const auto r = evolve_maca(data, 5, 1, config, seeds);
    REQUIRE(r.history.generations.size() == 1);
    CHECK(r.history.generations[0].best == 1.0);
    CHECK(r.best_fitness == 1.0);
    CHECK(r.best == seeds[0]);
}

TEST_CASE("evolve_maca is monotone and deterministic") {
    Rng rng(10);
    const auto data = test::parity_dataset("110010101", 120, rng);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r1 = evolve_maca(data, 9, 2, quick(seed));
        const auto r2 = evolve_maca(data, 9, 2, quick(seed));
        CHECK(r1.best.serialize() == r2.best.serialize());
        CHECK(r1.best_fitness == r2.best_fitness);
        const auto& g = r1.history.generations;
        REQUIRE(g.size() == 12);
        for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i].best >= g[i - 1].best);
        for (const auto& s : g) {
            CHECK(s.mean <= s.best);
            CHECK(s.best <= 1.0);
        }
        CHECK(r1.best_fitness == g.back().best);
        CHECK(r1.best.satisfies_invariants(9));
    }
    CHECK_THROWS_AS(evolve_maca({}, 9, 2, quick(1)), std::invalid_argument);
}

TEST_CASE("fitness history TSV") {
    Rng rng(12);
    const auto data = test::parity_dataset("1101", 30, rng);
    auto config = quick(3);
    config.generations = 3;
    std::ostringstream os;
    evolve_maca(data, 4, 1, config).history.write_tsv(os);
    const auto text = os.str();
    CHECK(text.rfind("generation\tbest\tmean\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
