#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ssdl {

// Fixed-size bitset over row indices. Covers and usages are stored this way
// so intersections during candidate scoring run word-at-a-time.
class RowSet {
public:
    RowSet() = default;
    explicit RowSet(std::size_t n_rows)
        : n_rows_(n_rows), words_((n_rows + 63) / 64, 0) {}

    static RowSet all(std::size_t n_rows) {
        RowSet s(n_rows);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t size() const { return n_rows_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    RowSet& operator&=(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    RowSet& operator|=(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    // this \ o
    RowSet& subtract(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend RowSet operator&(RowSet a, const RowSet& b) { return a &= b; }
    friend RowSet operator|(RowSet a, const RowSet& b) { return a |= b; }

    friend bool operator==(const RowSet& a, const RowSet& b) {
        return a.n_rows_ == b.n_rows_ && a.words_ == b.words_;
    }

    std::size_t intersection_count(const RowSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(__builtin_popcountll(words_[i] & o.words_[i]));
        return c;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = __builtin_ctzll(w);
                fn(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

private:
    void trim() {
        const std::size_t rem = n_rows_ & 63;
        if (rem && !words_.empty())
            words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t n_rows_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace ssdl
