#pragma once

// Multiple Attractor CA classifier primitives. A dependency string of m
// dependency vectors assigns every n-bit pattern one of 2^m basins: bit j of
// the basin signature is the parity of (DV_j AND pattern slice j).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psmaca/bitvector.hpp"

namespace psmaca::maca {

using ClassId = int;
/// Segment 0 occupies the most significant of the m signature bits.
using Signature = std::uint64_t;

inline constexpr std::size_t kMaxSegments = 63;

struct LabeledPattern {
    BitVector bits;
    ClassId label = 0;

    bool operator==(const LabeledPattern&) const = default;
};

/// True iff any bit is set. Throws std::invalid_argument for an empty vector.
bool dv_is_valid(const BitVector& bits);

class DependencyVector {
public:
    /// Throws std::invalid_argument unless dv_is_valid(bits).
    explicit DependencyVector(BitVector bits);
    static DependencyVector from_string(std::string_view bits) {
        return DependencyVector(BitVector::from_string(bits));
    }

    const BitVector& bits() const { return bits_; }
    std::size_t size() const { return bits_.size(); }
    std::string to_string() const { return bits_.to_string(); }

    bool operator==(const DependencyVector&) const = default;

private:
    BitVector bits_;
};

class DependencyString {
public:
    /// Throws std::invalid_argument for zero segments or more than kMaxSegments.
    explicit DependencyString(std::vector<DependencyVector> segments);
    static DependencyString from_strings(const std::vector<std::string>& segments);

    std::size_t width() const { return width_; }
    std::size_t segment_count() const { return segments_.size(); }
    std::size_t basin_count() const { return std::size_t{1} << segments_.size(); }
    const std::vector<DependencyVector>& segments() const { return segments_; }
    std::vector<std::size_t> segment_lengths() const;
    std::vector<std::string> to_strings() const;

    /// Throws std::invalid_argument when pattern.size() != width().
    Signature signature(const BitVector& pattern) const;

    bool operator==(const DependencyString& other) const { return segments_ == other.segments_; }

private:
    std::vector<DependencyVector> segments_;
    std::size_t width_ = 0;
    // each segment's DV placed at its offset inside an n-bit vector
    std::vector<BitVector> masks_;
};

inline Signature basin_signature(const DependencyString& ds, const BitVector& pattern) {
    return ds.signature(pattern);
}

std::string signature_to_string(Signature sig, std::size_t segments);
Signature signature_from_string(std::string_view bits);

using Distribution = std::map<Signature, std::vector<LabeledPattern>>;

/// Buckets every pattern under its basin signature, preserving input order
/// inside each bucket.
Distribution distribute(const DependencyString& ds, std::span<const LabeledPattern> patterns);

/// Majority class of a non-empty label multiset; ties go to the smallest id.
ClassId majority_label(const std::map<ClassId, std::size_t>& counts);
ClassId majority_label(std::span<const LabeledPattern> patterns);

/// Majority label per bucket (ties to the smallest class id). Throws
/// std::invalid_argument if any bucket is empty.
std::map<Signature, ClassId> label_basins(const Distribution& distribution);

struct Maca {
    DependencyString ds;
    std::map<Signature, ClassId> basin_labels;

    /// Label of the pattern's basin, if that basin was labeled.
    std::optional<ClassId> classify(const BitVector& pattern) const;

    bool operator==(const Maca&) const = default;
};

}  // namespace psmaca::maca
