#include "psmaca/maca.hpp"

#include <stdexcept>

namespace psmaca::maca {

bool dv_is_valid(const BitVector& bits) {
    if (bits.empty()) throw std::invalid_argument("dependency vector must have at least one bit");
    return bits.any();
}

DependencyVector::DependencyVector(BitVector bits) : bits_(std::move(bits)) {
    if (!dv_is_valid(bits_))
        throw std::invalid_argument("dependency vector " + bits_.to_string() + " is all zero");
}

DependencyString::DependencyString(std::vector<DependencyVector> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("dependency string needs at least one segment");
    if (segments_.size() > kMaxSegments)
        throw std::invalid_argument("dependency string has more than " + std::to_string(kMaxSegments) +
                                    " segments");
    for (const auto& s : segments_) width_ += s.size();
    std::size_t offset = 0;
    masks_.reserve(segments_.size());
    for (const auto& s : segments_) {
        BitVector mask(width_);
        mask.assign_at(offset, s.bits());
        masks_.push_back(std::move(mask));
        offset += s.size();
    }
}

DependencyString DependencyString::from_strings(const std::vector<std::string>& segments) {
    std::vector<DependencyVector> dvs;
    dvs.reserve(segments.size());
    for (const auto& s : segments) dvs.push_back(DependencyVector::from_string(s));
    return DependencyString(std::move(dvs));
}

std::vector<std::size_t> DependencyString::segment_lengths() const {
    std::vector<std::size_t> out;
    out.reserve(segments_.size());
    for (const auto& s : segments_) out.push_back(s.size());
    return out;
}

std::vector<std::string> DependencyString::to_strings() const {
    std::vector<std::string> out;
    out.reserve(segments_.size());
    for (const auto& s : segments_) out.push_back(s.to_string());
    return out;
}

Signature DependencyString::signature(const BitVector& pattern) const {
    if (pattern.size() != width_)
        throw std::invalid_argument("pattern length " + std::to_string(pattern.size()) +
                                    " does not match dependency string width " + std::to_string(width_));
    Signature sig = 0;
    for (const auto& mask : masks_) sig = (sig << 1) | static_cast<Signature>(pattern.and_parity(mask));
    return sig;
}

std::string signature_to_string(Signature sig, std::size_t segments) {
    std::string out(segments, '0');
    for (std::size_t j = 0; j < segments; ++j)
        if ((sig >> (segments - 1 - j)) & 1u) out[j] = '1';
    return out;
}

Signature signature_from_string(std::string_view bits) {
    if (bits.empty() || bits.size() > kMaxSegments)
        throw std::invalid_argument("invalid signature '" + std::string(bits) + "'");
    Signature sig = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("invalid signature '" + std::string(bits) + "'");
        sig = (sig << 1) | static_cast<Signature>(c - '0');
    }
    return sig;
}

Distribution distribute(const DependencyString& ds, std::span<const LabeledPattern> patterns) {
    Distribution out;
    for (const auto& p : patterns) out[ds.signature(p.bits)].push_back(p);
    return out;
}

ClassId majority_label(const std::map<ClassId, std::size_t>& counts) {
    if (counts.empty()) throw std::invalid_argument("majority of an empty set");
    // std::map iterates ascending, so strict '>' keeps the smallest id on ties
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
        if (it->second > best->second) best = it;
    return best->first;
}

ClassId majority_label(std::span<const LabeledPattern> patterns) {
    std::map<ClassId, std::size_t> counts;
    for (const auto& p : patterns) ++counts[p.label];
    return majority_label(counts);
}

std::map<Signature, ClassId> label_basins(const Distribution& distribution) {
    std::map<Signature, ClassId> labels;
    for (const auto& [sig, bucket] : distribution) {
        if (bucket.empty())
            throw std::invalid_argument("basin " + std::to_string(sig) + " has no patterns to label");
        labels.emplace(sig, majority_label(bucket));
    }
    return labels;
}

std::optional<ClassId> Maca::classify(const BitVector& pattern) const {
    auto it = basin_labels.find(ds.signature(pattern));
    if (it == basin_labels.end()) return std::nullopt;
    return it->second;
}

}  // namespace psmaca::maca
