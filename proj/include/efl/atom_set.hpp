#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace efl {

/// Dense subset of the atoms of a fixed finite space, packed into 64-bit
/// words.  All binary operations require both operands to share a universe.
class atom_set {
  public:
    atom_set() : size_(0) {}
    explicit atom_set(std::size_t universe) : size_(universe), bits_((universe + 63) / 64, 0) {}

    static atom_set of(std::size_t universe, std::initializer_list<int> members) {
        atom_set s(universe);
        for (int m : members) s.insert(m);
        return s;
    }

    static atom_set full(std::size_t universe) {
        atom_set s(universe);
        for (std::size_t w = 0; w < s.bits_.size(); ++w) s.bits_[w] = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe() const { return size_; }

    bool contains(int i) const {
        return bits_[static_cast<std::size_t>(i) >> 6] >> (i & 63) & 1u;
    }
    void insert(int i) { bits_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
    void erase(int i) { bits_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const {
        for (auto w : bits_)
            if (w) return false;
        return true;
    }

    atom_set& operator|=(const atom_set& o) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] |= o.bits_[w];
        return *this;
    }
    atom_set& operator&=(const atom_set& o) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] &= o.bits_[w];
        return *this;
    }
    atom_set& operator-=(const atom_set& o) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] &= ~o.bits_[w];
        return *this;
    }

    friend atom_set operator|(atom_set a, const atom_set& b) { return a |= b; }
    friend atom_set operator&(atom_set a, const atom_set& b) { return a &= b; }
    friend atom_set operator-(atom_set a, const atom_set& b) { return a -= b; }

    atom_set complement() const {
        atom_set r(size_);
        for (std::size_t w = 0; w < bits_.size(); ++w) r.bits_[w] = ~bits_[w];
        r.trim();
        return r;
    }

    bool operator==(const atom_set& o) const { return bits_ == o.bits_; }
    bool operator!=(const atom_set& o) const { return bits_ != o.bits_; }

    bool subset_of(const atom_set& o) const {
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w] & ~o.bits_[w]) return false;
        return true;
    }
    bool intersects(const atom_set& o) const {
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w] & o.bits_[w]) return true;
        return false;
    }

    /// Least member, or -1 when empty.
    int least() const {
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w]) return static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits_[w])));
        return -1;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word) {
                int b = std::countr_zero(word);
                out.push_back(static_cast<int>(w * 64) + b);
                word &= word - 1;
            }
        }
        return out;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word) {
                int b = std::countr_zero(word);
                fn(static_cast<int>(w * 64) + b);
                word &= word - 1;
            }
        }
    }

  private:
    void trim() {
        if (size_ % 64 && !bits_.empty()) bits_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace efl
