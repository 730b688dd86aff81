#pragma once

// Template-based structure prediction by system identification: pick the
// most similar training protein, fit an FIR response mapping its hydropathy
// signal onto its encoded structure, then run the target's hydropathy signal
// through that response and decode.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "psmaca/records.hpp"
#include "psmaca/seqcodec.hpp"

namespace psmaca::signal {

using seq::NumericSignal;

struct ResponseFilter {
    std::vector<double> taps;

    bool operator==(const ResponseFilter&) const = default;
};

struct PipelineConfig {
    std::size_t filter_length = 9;
    double ridge = 1e-6;
    seq::DecodeMode decode_mode = seq::DecodeMode::nearest_centroid;
    seq::HydropathyScale scale = seq::HydropathyScale::kyte_doolittle();
    seq::StructureEncoding encoding;
    std::size_t kmer = 3;

    void validate() const;
    bool operator==(const PipelineConfig&) const = default;
};

struct PredictionResult {
    seq::StructureSeq predicted;
    NumericSignal trace;
    std::string base_id;
    double similarity_score = 0.0;
};

/// Raised when the normal equations are not positive definite.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cosine similarity of k-mer count vectors. Throws std::invalid_argument if
/// either sequence is shorter than k or k is zero.
double similarity(const seq::AminoAcidSeq& a, const seq::AminoAcidSeq& b, std::size_t k);

struct BaseSelection {
    const io::ProteinRecord* record = nullptr;
    double score = 0.0;
};

/// Most similar record that carries a structure; ties go to the smallest id.
/// Records shorter than k are skipped. Throws std::invalid_argument when no
/// record qualifies.
BaseSelection select_base(const seq::AminoAcidSeq& target, std::span<const io::ProteinRecord> training,
                          std::size_t k);

/// Causal least-squares FIR fit with ridge penalty:
///   argmin_f sum_t (output[t] - sum_j f[j] input[t-j])^2 + ridge * |f|^2
/// with zero input before t = 0.
ResponseFilter deconvolve(const NumericSignal& output, const NumericSignal& input, std::size_t length,
                          double ridge);

/// Causal convolution, same length as the input, zero prehistory.
NumericSignal convolve(const NumericSignal& input, const ResponseFilter& filter);

PredictionResult predict_structure(const seq::AminoAcidSeq& target, std::span<const io::ProteinRecord> training,
                                   const PipelineConfig& config);

}  // namespace psmaca::signal
