#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace psmaca {

/// Fixed-length packed bit vector. Bit i is position i of the textual form
/// ("1011" has bit 0 set), so string round trips preserve reading order.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    /// Parses '0'/'1' characters; throws std::invalid_argument otherwise.
    static BitVector from_string(std::string_view bits);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask;
        else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bool any() const;
    std::size_t count() const;

    /// Bits [offset, offset + length) as a new vector.
    BitVector slice(std::size_t offset, std::size_t length) const;
    /// Writes other into this vector starting at offset.
    void assign_at(std::size_t offset, const BitVector& other);
    void append(const BitVector& other);
    /// Appends the low `width` bits of value, most significant first.
    void append_uint(std::uint64_t value, unsigned width);

    /// Parity of popcount(this AND other); sizes must match.
    bool and_parity(const BitVector& other) const {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    std::string to_string() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const BitVector&) const = default;
    auto operator<=>(const BitVector& other) const {
        if (auto c = size_ <=> other.size_; c != 0) return c;
        return to_string() <=> other.to_string();
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace psmaca
