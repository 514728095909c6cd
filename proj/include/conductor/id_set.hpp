#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace conductor {

// Fixed-width bit vector over the id universe [0, size).
// Used for passenger sets and for the point sets of rectangle sides.
class IdSet {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    IdSet() = default;
    explicit IdSet(std::size_t universe)
        : universe_(universe), words_((universe + word_bits - 1) / word_bits, 0) {}
    IdSet(std::size_t universe, std::initializer_list<std::size_t> ids) : IdSet(universe) {
        for (auto id : ids) insert(id);
    }
    IdSet(std::size_t universe, const std::vector<std::size_t>& ids) : IdSet(universe) {
        for (auto id : ids) insert(id);
    }

    std::size_t universe() const { return universe_; }

    // Ids outside the universe are silently ignored by insert; callers validate first.
    void insert(std::size_t id) {
        if (id < universe_) words_[id / word_bits] |= word_type{1} << (id % word_bits);
    }
    void erase(std::size_t id) {
        if (id < universe_) words_[id / word_bits] &= ~(word_type{1} << (id % word_bits));
    }
    bool contains(std::size_t id) const {
        return id < universe_ && (words_[id / word_bits] >> (id % word_bits)) & 1u;
    }

    std::size_t size() const {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool intersects(const IdSet& other) const {
        const auto common = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < common; ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    // Smallest common id, or universe() when disjoint.
    std::size_t first_common(const IdSet& other) const {
        const auto common = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < common; ++i)
            if (auto w = words_[i] & other.words_[i])
                return i * word_bits + static_cast<std::size_t>(std::countr_zero(w));
        return universe_;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto w = words_[i];
            while (w) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(i * word_bits + bit);
                w &= w - 1;
            }
        }
    }

    // Sorted id list (the serialized form).
    std::vector<std::size_t> ids() const {
        std::vector<std::size_t> out;
        out.reserve(size());
        for_each([&](std::size_t id) { out.push_back(id); });
        return out;
    }

    friend bool operator==(const IdSet&, const IdSet&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<word_type> words_;
};

}  // namespace conductor
