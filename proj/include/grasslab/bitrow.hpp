#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace grasslab {

/// Fixed-length bit vector; one row of a relation matrix.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    [[nodiscard]] std::size_t size() const noexcept { return size_; }

    void set(std::size_t i) noexcept { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    [[nodiscard]] bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }

    [[nodiscard]] std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    [[nodiscard]] bool any() const noexcept
    {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    [[nodiscard]] bool none() const noexcept { return !any(); }

    BitRow& operator&=(const BitRow& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    BitRow& operator|=(const BitRow& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    /// this &= ~o
    BitRow& subtract(const BitRow& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    /// Complement within [0, size).
    [[nodiscard]] BitRow complement() const
    {
        BitRow r(size_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.clear_tail();
        return r;
    }

    friend BitRow operator&(BitRow a, const BitRow& b) noexcept { return a &= b; }
    friend BitRow operator|(BitRow a, const BitRow& b) noexcept { return a |= b; }
    friend bool operator==(const BitRow&, const BitRow&) = default;

    [[nodiscard]] bool intersects(const BitRow& o) const noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    [[nodiscard]] bool is_subset_of(const BitRow& o) const noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    /// Index of the lowest set bit, or size() if none.
    [[nodiscard]] std::size_t first() const noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return size_;
    }

    template <class Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    [[nodiscard]] std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    [[nodiscard]] const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    void clear_tail() noexcept
    {
        if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace grasslab
