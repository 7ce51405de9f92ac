#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace qmlat {

/// Fixed-universe dynamic bitset. Used for element subsets of a lattice and
/// for vector subsets of a quasimodule carrier alike.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}
    Bitset(std::size_t nbits, std::initializer_list<std::size_t> bits) : Bitset(nbits) {
        for (auto b : bits) set(b);
    }

    static Bitset full(std::size_t nbits) {
        Bitset b(nbits);
        for (auto& w : b.words_) w = ~std::uint64_t{0};
        b.trim();
        return b;
    }

    std::size_t universe() const noexcept { return nbits_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void set(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }
    /// Sets bit i and reports whether it was previously clear.
    bool insert(std::size_t i) noexcept {
        auto& w = words_[i >> 6];
        const auto m = std::uint64_t{1} << (i & 63);
        if (w & m) return false;
        w |= m;
        return true;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    bool any() const noexcept { return !none(); }

    std::size_t first() const noexcept { return next(0); }
    /// Smallest set index >= from, or npos.
    std::size_t next(std::size_t from) const noexcept {
        if (from >= nbits_) return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi >= words_.size()) return npos;
            w = words_[wi];
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
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

    bool is_subset_of(const Bitset& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const Bitset& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    Bitset& operator&=(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    /// Set difference.
    Bitset& operator-=(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }
    Bitset complement() const {
        Bitset b = *this;
        for (auto& w : b.words_) w = ~w;
        b.trim();
        return b;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

    /// Canonical order: by cardinality, then lexicographically by the sorted
    /// index lists. For equal cardinality the set holding the smallest element
    /// of the symmetric difference comes first.
    friend bool canonical_less(const Bitset& a, const Bitset& b) noexcept {
        const auto ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            const auto d = a.words_[i] ^ b.words_[i];
            if (d) return (a.words_[i] & (d & (~d + 1))) != 0;
        }
        return false;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull ^ nbits_;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    void trim() noexcept {
        if (nbits_ & 63) words_.back() &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

} // namespace qmlat
