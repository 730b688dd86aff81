#include "psmaca/signalpred.hpp"

#include <cmath>
#include <limits>
#include <string_view>
#include <unordered_map>

namespace psmaca::signal {

void PipelineConfig::validate() const {
    if (filter_length < 1) throw std::invalid_argument("filter length must be at least 1");
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw std::invalid_argument("ridge must be finite and >= 0");
    if (kmer < 1) throw std::invalid_argument("k-mer size must be at least 1");
    if (!scale.is_complete()) throw std::invalid_argument("hydropathy scale does not cover all 20 residues");
    encoding.validate();
}

namespace {

std::unordered_map<std::string_view, std::uint64_t> kmer_counts(const std::string& s, std::size_t k) {
    std::unordered_map<std::string_view, std::uint64_t> counts;
    const std::string_view v(s);
    for (std::size_t i = 0; i + k <= v.size(); ++i) ++counts[v.substr(i, k)];
    return counts;
}

}  // namespace

double similarity(const seq::AminoAcidSeq& a, const seq::AminoAcidSeq& b, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k-mer size must be at least 1");
    if (a.size() < k || b.size() < k)
        throw std::invalid_argument("sequence shorter than k-mer size " + std::to_string(k));
    const auto ca = kmer_counts(a.str(), k);
    const auto cb = kmer_counts(b.str(), k);
    std::uint64_t dot = 0, na = 0, nb = 0;
    for (const auto& [kmer, c] : ca) {
        na += c * c;
        if (auto it = cb.find(kmer); it != cb.end()) dot += c * it->second;
    }
    for (const auto& [kmer, c] : cb) nb += c * c;
    // integer sums keep sqrt(na * na) exact, so self-similarity is exactly 1
    const double score = static_cast<double>(dot) / std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
    return std::min(1.0, score);
}

BaseSelection select_base(const seq::AminoAcidSeq& target, std::span<const io::ProteinRecord> training,
                          std::size_t k) {
    if (training.empty()) throw std::invalid_argument("training set is empty");
    if (target.size() < k) throw std::invalid_argument("target shorter than k-mer size " + std::to_string(k));
    BaseSelection best;
    for (const auto& r : training) {
        if (!r.structure || r.sequence.size() < k) continue;
        const double s = similarity(target, r.sequence, k);
        if (!best.record || s > best.score || (s == best.score && r.id < best.record->id)) {
            best.record = &r;
            best.score = s;
        }
    }
    if (!best.record)
        throw std::invalid_argument("no training record with a structure is at least " + std::to_string(k) +
                                    " residues long");
    return best;
}

namespace {

// In-place Cholesky solve of the symmetric system a x = b (row-major, n x n).
std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i * n + i]));
    const double tiny = scale * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t p = 0; p < j; ++p) d -= a[j * n + p] * a[j * n + p];
        if (!(d > tiny))
            throw SingularSystemError("normal equations are singular or ill-conditioned; increase the ridge penalty");
        const double l = std::sqrt(d);
        a[j * n + j] = l;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t p = 0; p < j; ++p) s -= a[i * n + p] * a[j * n + p];
            a[i * n + j] = s / l;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t p = 0; p < i; ++p) s -= a[i * n + p] * b[p];
        b[i] = s / a[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t p = i + 1; p < n; ++p) s -= a[p * n + i] * b[p];
        b[i] = s / a[i * n + i];
    }
    return b;
}

}  // namespace

ResponseFilter deconvolve(const NumericSignal& output, const NumericSignal& input, std::size_t length,
                          double ridge) {
    if (length < 1) throw std::invalid_argument("filter length must be at least 1");
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw std::invalid_argument("ridge must be finite and >= 0");
    if (output.size() != input.size())
        throw std::invalid_argument("output and input lengths differ (" + std::to_string(output.size()) + " vs " +
                                    std::to_string(input.size()) + ")");
    if (input.size() < length)
        throw std::invalid_argument("signals shorter than the filter length " + std::to_string(length));

    const std::size_t n = input.size();
    const std::size_t L = length;
    // gram[i][j] = sum_t x[t-i] x[t-j] over t in [max(i,j), n)
    std::vector<double> gram(L * L, 0.0);
    std::vector<double> rhs(L, 0.0);
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = i; j < L; ++j) {
            double s = 0.0;
            for (std::size_t t = j; t < n; ++t) s += input[t - i] * input[t - j];
            gram[i * L + j] = s;
            gram[j * L + i] = s;
        }
        gram[i * L + i] += ridge;
        double s = 0.0;
        for (std::size_t t = i; t < n; ++t) s += output[t] * input[t - i];
        rhs[i] = s;
    }
    return ResponseFilter{cholesky_solve(std::move(gram), std::move(rhs), L)};
}

NumericSignal convolve(const NumericSignal& input, const ResponseFilter& filter) {
    NumericSignal out(input.size(), 0.0);
    for (std::size_t t = 0; t < input.size(); ++t) {
        double s = 0.0;
        const std::size_t taps = std::min(filter.taps.size(), t + 1);
        for (std::size_t j = 0; j < taps; ++j) s += filter.taps[j] * input[t - j];
        out[t] = s;
    }
    return out;
}

PredictionResult predict_structure(const seq::AminoAcidSeq& target, std::span<const io::ProteinRecord> training,
                                   const PipelineConfig& config) {
    config.validate();
    const auto base = select_base(target, training, config.kmer);
    const auto input_base = seq::hydropathy_encode(base.record->sequence, config.scale);
    const auto output_base = seq::structure_encode(*base.record->structure, config.encoding);
    const auto length = std::min(config.filter_length, input_base.size());
    const auto filter = deconvolve(output_base, input_base, length, config.ridge);
    auto trace = convolve(seq::hydropathy_encode(target, config.scale), filter);
    auto predicted = seq::structure_decode(trace, config.decode_mode, config.encoding);
    return PredictionResult{std::move(predicted), std::move(trace), base.record->id, base.score};
}

}  // namespace psmaca::signal
