#include "psmaca/bitvector.hpp"

#include <stdexcept>

namespace psmaca {

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("invalid bit character at position " + std::to_string(i));
    }
    return v;
}

bool BitVector::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

std::size_t BitVector::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

BitVector BitVector::slice(std::size_t offset, std::size_t length) const {
    if (offset + length > size_) throw std::out_of_range("bit slice out of range");
    BitVector out(length);
    for (std::size_t i = 0; i < length; ++i)
        if (get(offset + i)) out.set(i, true);
    return out;
}

void BitVector::assign_at(std::size_t offset, const BitVector& other) {
    if (offset + other.size_ > size_) throw std::out_of_range("bit assignment out of range");
    for (std::size_t i = 0; i < other.size_; ++i) set(offset + i, other.get(i));
}

void BitVector::append(const BitVector& other) {
    const std::size_t base = size_;
    size_ += other.size_;
    words_.resize((size_ + 63) / 64, 0);
    for (std::size_t i = 0; i < other.size_; ++i)
        if (other.get(i)) set(base + i, true);
}

void BitVector::append_uint(std::uint64_t value, unsigned width) {
    const std::size_t base = size_;
    size_ += width;
    words_.resize((size_ + 63) / 64, 0);
    for (unsigned i = 0; i < width; ++i)
        if ((value >> (width - 1 - i)) & 1u) set(base + i, true);
}

std::string BitVector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

}  // namespace psmaca
