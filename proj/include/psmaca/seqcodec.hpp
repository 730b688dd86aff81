#pragma once

// Conversions between protein sequences, secondary structure strings,
// numeric per-residue signals and binary window patterns.

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "psmaca/bitvector.hpp"

namespace psmaca::seq {

/// The 20 canonical residues in alphabetical order; 'X' marks unknown.
inline constexpr std::string_view kResidues = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr int kUnknownIndex = 20;

/// 0..19 for canonical residues, kUnknownIndex for 'X', -1 otherwise.
int residue_index(char c);

class AminoAcidSeq {
public:
    /// Throws std::invalid_argument naming the first bad position.
    explicit AminoAcidSeq(std::string residues);

    const std::string& str() const { return residues_; }
    std::size_t size() const { return residues_.size(); }
    char operator[](std::size_t i) const { return residues_[i]; }

    bool operator==(const AminoAcidSeq&) const = default;

private:
    std::string residues_;
};

class StructureSeq {
public:
    /// Only 'H', 'E' and 'C'; throws std::invalid_argument otherwise.
    explicit StructureSeq(std::string labels);

    const std::string& str() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    char operator[](std::size_t i) const { return labels_[i]; }

    bool operator==(const StructureSeq&) const = default;

private:
    std::string labels_;
};

/// Reduces 8-state DSSP codes to H/E/C: {H,G,I} -> H, {E,B} -> E, rest -> C.
char reduce_dssp(char code);

using NumericSignal = std::vector<double>;

class HydropathyScale {
public:
    HydropathyScale(std::string name, std::map<char, double> values);

    static HydropathyScale kyte_doolittle();
    /// Tab-separated "residue<TAB>value" lines; '#' starts a comment. The
    /// result must cover all 20 residues.
    static HydropathyScale load_tsv(std::istream& in, std::string name);
    static HydropathyScale load_tsv_file(const std::string& path);

    const std::string& name() const { return name_; }
    const std::map<char, double>& values() const { return values_; }
    bool is_complete() const;
    /// 'X' is 0.0. Throws std::out_of_range for residues missing from the scale.
    double value(char residue) const;

    bool operator==(const HydropathyScale&) const = default;

private:
    std::string name_;
    std::map<char, double> values_;
};

struct StructureEncoding {
    double helix = 200.0;
    double strand = 600.0;
    double coil = 800.0;

    void validate() const;
    double encode(char label) const;
    bool operator==(const StructureEncoding&) const = default;
};

enum class DecodeMode {
    /// [0,200] -> H, [600,800] -> E, anything else -> C.
    paper_bands,
    /// Nearest encoding value; ties go to the lower value.
    nearest_centroid,
};

DecodeMode parse_decode_mode(std::string_view name);
std::string_view to_string(DecodeMode mode);

NumericSignal hydropathy_encode(const AminoAcidSeq& seq, const HydropathyScale& scale);
NumericSignal structure_encode(const StructureSeq& s, const StructureEncoding& enc = {});
/// Throws std::invalid_argument for an empty signal or non-finite values.
StructureSeq structure_decode(const NumericSignal& signal, DecodeMode mode = DecodeMode::nearest_centroid,
                              const StructureEncoding& enc = {});

inline constexpr unsigned kResidueCodeBits = 5;

/// One 5*w bit pattern per residue: the 5-bit alphabetical index of every
/// residue in the window centered on it, padding with kUnknownIndex past the
/// termini. Throws std::invalid_argument for an even or zero window.
std::vector<BitVector> window_patterns(const AminoAcidSeq& seq, std::size_t window);

}  // namespace psmaca::seq
