#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqadd {

/// Fixed-length vector over F_2, packed 64 bits per word.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector from_index(std::uint64_t bits, std::size_t size)
    {
        if (size < 64 && (bits >> size) != 0)
            throw std::out_of_range("BitVector::from_index: value does not fit in " + std::to_string(size) + " bits");
        BitVector v(size);
        if (size > 0)
            v.words_[0] = bits;
        return v;
    }

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool value = true) noexcept
    {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }
    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    std::size_t weight() const noexcept
    {
        std::size_t w = 0;
        for (auto word : words_)
            w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }
    bool none() const noexcept
    {
        for (auto word : words_)
            if (word)
                return false;
        return true;
    }

    /// Coordinates as an integer, bit i = coordinate i; only valid for size <= 64.
    std::uint64_t to_index() const
    {
        if (size_ > 64)
            throw std::out_of_range("BitVector::to_index: more than 64 coordinates");
        return words_.empty() ? 0 : words_[0];
    }

    BitVector& operator^=(const BitVector& other)
    {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] ^= other.words_[i];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    /// Inner product over F_2.
    bool dot(const BitVector& other) const
    {
        check_same(other);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            acc ^= words_[i] & other.words_[i];
        return std::popcount(acc) & 1;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }
    std::vector<std::uint64_t>& words() noexcept { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector& a, const BitVector& b)
    {
        if (auto c = a.size_ <=> b.size_; c != 0)
            return c;
        for (std::size_t i = a.words_.size(); i-- > 0;) {
            if (auto c = a.words_[i] <=> b.words_[i]; c != 0)
                return c;
        }
        return std::strong_ordering::equal;
    }

private:
    void check_same(const BitVector& other) const
    {
        if (size_ != other.size_)
            throw std::invalid_argument("BitVector: length mismatch");
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace sqadd
