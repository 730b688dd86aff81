#include "psmaca/toy_data.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>

#include "psmaca/random.hpp"

namespace psmaca::toy {

namespace {

constexpr std::string_view kHelixFormers = "AELMQKR";
constexpr std::string_view kStrandFormers = "VIYFWT";
constexpr std::string_view kLoopFormers = "GPNDS";
// impulse residues ordered by decreasing |hydropathy|
constexpr std::string_view kImpulseResidues = "RIKVNDQEHLFCYMAWGTSP";

char pick(std::string_view pool, Rng& rng) {
    return pool[static_cast<std::size_t>(uniform_below(rng, pool.size()))];
}

std::string id_for(std::string_view prefix, std::size_t i) {
    std::string n = std::to_string(i);
    return std::string(prefix) + std::string(n.size() < 3 ? 3 - n.size() : 0, '0') + n;
}

}  // namespace

char rule_label(const std::string& residues, std::size_t i) {
    const std::size_t lo = i >= 2 ? i - 2 : 0;
    const std::size_t hi = std::min(residues.size(), i + 3);
    int helix = 0, strand = 0;
    for (std::size_t k = lo; k < hi; ++k) {
        if (kHelixFormers.find(residues[k]) != std::string_view::npos) ++helix;
        if (kStrandFormers.find(residues[k]) != std::string_view::npos) ++strand;
    }
    if (helix >= 3) return 'H';
    if (strand >= 3) return 'E';
    return 'C';
}

io::Dataset make_rule_dataset(std::size_t count, std::size_t min_length, std::size_t max_length, std::uint64_t seed) {
    if (min_length < 1 || max_length < min_length) throw std::invalid_argument("invalid length range");
    Rng rng(seed);
    io::Dataset data{"toy-rule-" + std::to_string(seed), {}};
    const std::string_view pools[] = {kHelixFormers, kStrandFormers, kLoopFormers};
    for (std::size_t r = 0; r < count; ++r) {
        const std::size_t length = min_length + static_cast<std::size_t>(uniform_below(rng, max_length - min_length + 1));
        std::string residues;
        while (residues.size() < length) {
            const auto pool = pools[uniform_below(rng, 3)];
            const std::size_t seg = 4 + static_cast<std::size_t>(uniform_below(rng, 9));
            for (std::size_t k = 0; k < seg && residues.size() < length; ++k)
                residues.push_back(bernoulli(rng, 0.7) ? pick(pool, rng) : pick(seq::kResidues, rng));
        }
        std::string labels;
        for (std::size_t i = 0; i < residues.size(); ++i) labels.push_back(rule_label(residues, i));
        data.records.emplace_back(id_for("toy", r), seq::AminoAcidSeq(residues), seq::StructureSeq(labels));
    }
    return data;
}

io::ProteinRecord make_impulse_record(std::string id, char residue, const std::string& motif, std::size_t repeats) {
    if (motif.empty()) throw std::invalid_argument("impulse period must be positive");
    if (repeats == 0) throw std::invalid_argument("impulse record needs at least one repeat");
    std::string residues, labels;
    for (std::size_t r = 0; r < repeats; ++r) {
        residues.push_back(residue);
        residues.append(motif.size() - 1, 'X');
        labels += motif;
    }
    return io::ProteinRecord(std::move(id), seq::AminoAcidSeq(residues), seq::StructureSeq(labels));
}

io::Dataset make_impulse_dataset(std::size_t count, std::size_t period, std::size_t repeats, std::uint64_t seed) {
    if (count > kImpulseResidues.size()) throw std::invalid_argument("impulse dataset supports at most 20 records");
    if (period == 0) throw std::invalid_argument("impulse period must be positive");
    Rng rng(seed);
    io::Dataset data{"toy-impulse-" + std::to_string(seed), {}};
    for (std::size_t r = 0; r < count; ++r) {
        std::string motif;
        for (std::size_t k = 0; k < period; ++k) motif.push_back(pick("HEC", rng));
        data.records.push_back(make_impulse_record(id_for("imp", r), kImpulseResidues[r], motif, repeats));
    }
    return data;
}

}  // namespace psmaca::toy
