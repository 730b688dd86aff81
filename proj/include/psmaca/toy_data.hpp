#pragma once

// Seeded synthetic datasets.
//
// Rule dataset: sequences are built from segments that favour helix-forming
// (AELMQKR), strand-forming (VIYFWT) or loop-forming (GPNDS) residues. The
// structure at residue i is then fixed by its 5-residue window: H if at least
// three residues are helix formers, else E if at least three are strand
// formers, else C.
//
// Impulse dataset: each record repeats one residue followed by period-1
// unknown residues ('X', hydropathy 0), and its structure repeats a random
// motif of the same period. With filter length equal to the period, the
// record's encoded structure is an exact convolution of its hydropathy
// signal, so predicting a record from itself reproduces its structure.

#include <cstdint>
#include <string>

#include "psmaca/records.hpp"

namespace psmaca::toy {

char rule_label(const std::string& residues, std::size_t i);

io::Dataset make_rule_dataset(std::size_t count, std::size_t min_length, std::size_t max_length, std::uint64_t seed);

/// Throws std::invalid_argument for period 0 or a motif of the wrong length.
io::ProteinRecord make_impulse_record(std::string id, char residue, const std::string& motif, std::size_t repeats);

/// At most 20 records; each uses a different residue for its impulses.
io::Dataset make_impulse_dataset(std::size_t count, std::size_t period, std::size_t repeats, std::uint64_t seed);

}  // namespace psmaca::toy
