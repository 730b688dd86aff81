#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "psmaca/random.hpp"
#include "psmaca/seqcodec.hpp"

using namespace psmaca;
using namespace psmaca::seq;

namespace {

std::string random_structure(Rng& rng, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back("HEC"[uniform_below(rng, 3)]);
    return s;
}

std::string random_residues(Rng& rng, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(kResidues[uniform_below(rng, 20)]);
    return s;
}

}  // namespace

TEST_CASE("sequence types validate their alphabets") {
    CHECK(AminoAcidSeq("MFRX").size() == 4);
    CHECK_THROWS_AS(AminoAcidSeq(""), std::invalid_argument);
    CHECK_THROWS_AS(AminoAcidSeq("MF1"), std::invalid_argument);
    CHECK_THROWS_AS(AminoAcidSeq("mfr"), std::invalid_argument);
    CHECK(StructureSeq("HEC").str() == "HEC");
    CHECK_THROWS_AS(StructureSeq("HQ"), std::invalid_argument);
    CHECK_THROWS_AS(StructureSeq(""), std::invalid_argument);
}

TEST_CASE("DSSP reduction") {
    CHECK(std::string{reduce_dssp('H'), reduce_dssp('G'), reduce_dssp('I')} == "HHH");
    CHECK(std::string{reduce_dssp('E'), reduce_dssp('B')} == "EE");
    CHECK(std::string{reduce_dssp('T'), reduce_dssp('S'), reduce_dssp(' '), reduce_dssp('C')} == "CCCC");
}

TEST_CASE("hydropathy encoding") {
    const auto kd = HydropathyScale::kyte_doolittle();
    CHECK(hydropathy_encode(AminoAcidSeq("XXX"), kd) == NumericSignal{0.0, 0.0, 0.0});
    CHECK(hydropathy_encode(AminoAcidSeq("I"), kd) == NumericSignal{4.5});
    CHECK(hydropathy_encode(AminoAcidSeq("RAV"), kd) == NumericSignal{-4.5, 1.8, 4.2});
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const auto s = random_residues(rng, 1 + uniform_below(rng, 50));
        CHECK(hydropathy_encode(AminoAcidSeq(s), kd).size() == s.size());
    }
    const HydropathyScale partial("partial", {{'A', 1.0}});
    CHECK_FALSE(partial.is_complete());
    CHECK_THROWS_AS(hydropathy_encode(AminoAcidSeq("AC"), partial), std::out_of_range);
}

TEST_CASE("bundled scale file matches the built-in table") {
    const auto loaded = HydropathyScale::load_tsv_file(PSMACA_DATA_DIR "/kyte_doolittle.tsv");
    CHECK(loaded.values() == HydropathyScale::kyte_doolittle().values());
    CHECK(loaded.value('I') == 4.5);

    std::istringstream missing("A\t1.0\n");
    CHECK_THROWS_AS(HydropathyScale::load_tsv(missing, "x"), std::invalid_argument);
    std::istringstream garbage("A\tbanana\n");
    CHECK_THROWS_AS(HydropathyScale::load_tsv(garbage, "x"), std::invalid_argument);
}

TEST_CASE("structure encoding") {
    CHECK(structure_encode(StructureSeq("HEC")) == NumericSignal{200, 600, 800});
    CHECK(structure_encode(StructureSeq("HHHH")) == NumericSignal{200, 200, 200, 200});
    CHECK_THROWS_AS(structure_encode(StructureSeq("H"), StructureEncoding{1, 1, 2}), std::invalid_argument);
}

TEST_CASE("band and centroid decoding") {
    const auto bands = [](double v) { return structure_decode({v}, DecodeMode::paper_bands).str(); };
    CHECK(bands(100) == "H");
    CHECK(bands(0) == "H");
    CHECK(bands(200) == "H");
    CHECK(bands(700) == "E");
    CHECK(bands(400) == "C");
    CHECK(bands(-1) == "C");
    CHECK(bands(801) == "C");
    CHECK(bands(800) == "E");

    const auto nearest = [](double v) { return structure_decode({v}, DecodeMode::nearest_centroid).str(); };
    CHECK(nearest(800) == "C");
    CHECK(nearest(400) == "H");  // equidistant from 200 and 600
    CHECK(nearest(700) == "E");  // equidistant from 600 and 800
    CHECK(nearest(-1e9) == "H");
    CHECK(nearest(1e9) == "C");

    CHECK_THROWS_AS(structure_decode({}), std::invalid_argument);
    CHECK_THROWS_AS(structure_decode({std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    CHECK_THROWS_AS(structure_decode({std::numeric_limits<double>::infinity()}), std::invalid_argument);
    CHECK(parse_decode_mode("bands") == DecodeMode::paper_bands);
    CHECK_THROWS_AS(parse_decode_mode("fuzzy"), std::invalid_argument);
}

TEST_CASE("encode/decode round trips") {
    Rng rng(2);
    StructureEncoding shifted;
    shifted.coil = 400;
    for (int i = 0; i < 500; ++i) {
        const StructureSeq s(random_structure(rng, 1 + uniform_below(rng, 40)));
        CHECK(structure_decode(structure_encode(s), DecodeMode::nearest_centroid) == s);
        CHECK(structure_decode(structure_encode(s, shifted), DecodeMode::paper_bands, shifted) == s);
    }
    // with coil at 800 the band reading turns coil into strand
    CHECK(structure_decode(structure_encode(StructureSeq("HEC")), DecodeMode::paper_bands).str() == "HEE");
}

TEST_CASE("window patterns") {
    CHECK(window_patterns(AminoAcidSeq("A"), 1).at(0).to_string() == "00000");
    CHECK(window_patterns(AminoAcidSeq("C"), 1).at(0).to_string() == "00001");
    CHECK(window_patterns(AminoAcidSeq("Y"), 1).at(0).to_string() == "10011");
    CHECK(window_patterns(AminoAcidSeq("X"), 1).at(0).to_string() == "10100");
    // first residue of "AC" with w=3: pad, A, C
    CHECK(window_patterns(AminoAcidSeq("AC"), 3).at(0).to_string() == "101000000000001");

    const auto ps = window_patterns(AminoAcidSeq("MFRTKRSA"), 3);
    CHECK(ps.size() == 8);
    for (const auto& p : ps) CHECK(p.size() == 15);

    CHECK_THROWS_AS(window_patterns(AminoAcidSeq("A"), 2), std::invalid_argument);
    CHECK_THROWS_AS(window_patterns(AminoAcidSeq("A"), 0), std::invalid_argument);
}

TEST_CASE("window patterns depend only on residues inside the window") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const std::size_t len = 10 + uniform_below(rng, 20);
        auto s = random_residues(rng, len);
        const std::size_t w = 5;
        const auto before = window_patterns(AminoAcidSeq(s), w);
        const std::size_t pos = uniform_below(rng, len);
        s[pos] = kResidues[(residue_index(s[pos]) + 1) % 20];
        const auto after = window_patterns(AminoAcidSeq(s), w);
        for (std::size_t c = 0; c < len; ++c) {
            const bool covers = c + 2 >= pos && c <= pos + 2;
            if (!covers) CHECK(before[c] == after[c]);
            else CHECK(before[c] != after[c]);
        }
    }
}
