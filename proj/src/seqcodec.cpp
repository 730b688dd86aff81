#include "psmaca/seqcodec.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace psmaca::seq {

int residue_index(char c) {
    if (c == 'X') return kUnknownIndex;
    const auto pos = kResidues.find(c);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

AminoAcidSeq::AminoAcidSeq(std::string residues) : residues_(std::move(residues)) {
    if (residues_.empty()) throw std::invalid_argument("amino acid sequence is empty");
    for (std::size_t i = 0; i < residues_.size(); ++i)
        if (residue_index(residues_[i]) < 0)
            throw std::invalid_argument("illegal residue '" + std::string(1, residues_[i]) + "' at position " +
                                        std::to_string(i + 1));
}

StructureSeq::StructureSeq(std::string labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("structure sequence is empty");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const char c = labels_[i];
        if (c != 'H' && c != 'E' && c != 'C')
            throw std::invalid_argument("illegal structure label '" + std::string(1, c) + "' at position " +
                                        std::to_string(i + 1));
    }
}

char reduce_dssp(char code) {
    switch (code) {
        case 'H': case 'G': case 'I': return 'H';
        case 'E': case 'B': return 'E';
        default: return 'C';
    }
}

HydropathyScale::HydropathyScale(std::string name, std::map<char, double> values)
    : name_(std::move(name)), values_(std::move(values)) {}

HydropathyScale HydropathyScale::kyte_doolittle() {
    return HydropathyScale("kyte-doolittle", {
        {'A', 1.8},  {'R', -4.5}, {'N', -3.5}, {'D', -3.5}, {'C', 2.5},
        {'Q', -3.5}, {'E', -3.5}, {'G', -0.4}, {'H', -3.2}, {'I', 4.5},
        {'L', 3.8},  {'K', -3.9}, {'M', 1.9},  {'F', 2.8},  {'P', -1.6},
        {'S', -0.8}, {'T', -0.7}, {'W', -0.9}, {'Y', -1.3}, {'V', 4.2},
    });
}

HydropathyScale HydropathyScale::load_tsv(std::istream& in, std::string name) {
    std::map<char, double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string residue;
        double v;
        if (!(fields >> residue)) continue;
        if (residue.size() != 1 || residue_index(residue[0]) < 0 || residue[0] == 'X' || !(fields >> v) ||
            !std::isfinite(v))
            throw std::invalid_argument("hydropathy scale line " + std::to_string(lineno) + " is malformed");
        values[residue[0]] = v;
    }
    HydropathyScale scale(std::move(name), std::move(values));
    if (!scale.is_complete()) throw std::invalid_argument("hydropathy scale does not cover all 20 residues");
    return scale;
}

HydropathyScale HydropathyScale::load_tsv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open hydropathy scale " + path);
    return load_tsv(in, path);
}

bool HydropathyScale::is_complete() const {
    for (char c : kResidues)
        if (!values_.contains(c)) return false;
    return true;
}

double HydropathyScale::value(char residue) const {
    if (residue == 'X') return 0.0;
    auto it = values_.find(residue);
    if (it == values_.end())
        throw std::out_of_range("residue '" + std::string(1, residue) + "' missing from scale " + name_);
    return it->second;
}

void StructureEncoding::validate() const {
    if (helix == strand || helix == coil || strand == coil)
        throw std::invalid_argument("structure encoding values must be distinct");
    if (!std::isfinite(helix) || !std::isfinite(strand) || !std::isfinite(coil))
        throw std::invalid_argument("structure encoding values must be finite");
}

double StructureEncoding::encode(char label) const {
    switch (label) {
        case 'H': return helix;
        case 'E': return strand;
        case 'C': return coil;
    }
    throw std::invalid_argument("unknown structure label '" + std::string(1, label) + "'");
}

DecodeMode parse_decode_mode(std::string_view name) {
    if (name == "bands" || name == "paper_bands") return DecodeMode::paper_bands;
    if (name == "centroid" || name == "nearest_centroid") return DecodeMode::nearest_centroid;
    throw std::invalid_argument("unknown decode mode '" + std::string(name) + "' (expected bands|centroid)");
}

std::string_view to_string(DecodeMode mode) {
    return mode == DecodeMode::paper_bands ? "bands" : "centroid";
}

NumericSignal hydropathy_encode(const AminoAcidSeq& seq, const HydropathyScale& scale) {
    NumericSignal out;
    out.reserve(seq.size());
    for (char c : seq.str()) out.push_back(scale.value(c));
    return out;
}

NumericSignal structure_encode(const StructureSeq& s, const StructureEncoding& enc) {
    enc.validate();
    NumericSignal out;
    out.reserve(s.size());
    for (char c : s.str()) out.push_back(enc.encode(c));
    return out;
}

namespace {

char decode_bands(double v) {
    if (v >= 0.0 && v <= 200.0) return 'H';
    if (v >= 600.0 && v <= 800.0) return 'E';
    return 'C';
}

char decode_nearest(double v, const StructureEncoding& enc) {
    struct Centroid {
        double value;
        char label;
    };
    const Centroid cs[] = {{enc.helix, 'H'}, {enc.strand, 'E'}, {enc.coil, 'C'}};
    const Centroid* best = &cs[0];
    for (const auto& c : cs) {
        const double d = std::abs(v - c.value), bd = std::abs(v - best->value);
        if (d < bd || (d == bd && c.value < best->value)) best = &c;
    }
    return best->label;
}

}  // namespace

StructureSeq structure_decode(const NumericSignal& signal, DecodeMode mode, const StructureEncoding& enc) {
    if (signal.empty()) throw std::invalid_argument("cannot decode an empty signal");
    enc.validate();
    std::string labels;
    labels.reserve(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
        const double v = signal[i];
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite signal value at position " + std::to_string(i + 1));
        labels.push_back(mode == DecodeMode::paper_bands ? decode_bands(v) : decode_nearest(v, enc));
    }
    return StructureSeq(std::move(labels));
}

std::vector<BitVector> window_patterns(const AminoAcidSeq& seq, std::size_t window) {
    if (window == 0 || window % 2 == 0)
        throw std::invalid_argument("window size must be odd, got " + std::to_string(window));
    const auto half = static_cast<std::ptrdiff_t>(window / 2);
    const auto len = static_cast<std::ptrdiff_t>(seq.size());
    std::vector<BitVector> out;
    out.reserve(seq.size());
    for (std::ptrdiff_t center = 0; center < len; ++center) {
        BitVector p(0);
        for (std::ptrdiff_t k = center - half; k <= center + half; ++k) {
            const int code = (k < 0 || k >= len) ? kUnknownIndex : residue_index(seq[static_cast<std::size_t>(k)]);
            p.append_uint(static_cast<std::uint64_t>(code), kResidueCodeBits);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace psmaca::seq
