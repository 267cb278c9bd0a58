#ifndef PBWT_BITVECTOR_HPP
#define PBWT_BITVECTOR_HPP

#include <cstdint>
#include <cstddef>
#include <vector>

#include "pbwt/errors.hpp"

namespace pbwt {

class Serializer;
class Deserializer;

// Plain bit-vector with a two-level rank directory (superblock of 16 words,
// 16-bit relative counts per 2-word group) and select by binary search on rank.
class RankSelectBits {
public:
    RankSelectBits() = default;
    explicit RankSelectBits(std::vector<bool> const& bits);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const {  // 1-based
        return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
    }

    // rank(i, b) = #positions j <= i with bit b; rank(0, b) = 0.
    std::size_t rank1(std::size_t i) const;
    std::size_t rank0(std::size_t i) const { return i - rank1(i); }
    std::size_t rank(std::size_t i, bool b) const { return b ? rank1(i) : rank0(i); }

    // select(k, b) = position of the k-th b-bit (1-based); throws when k is out
    // of range.
    std::size_t select1(std::size_t k) const;
    std::size_t select0(std::size_t k) const;

    std::size_t ones() const { return ones_; }
    std::size_t size_in_bits() const;

    void save(Serializer& out) const;
    static RankSelectBits load(Deserializer& in);

private:
    void build_directory();

    std::size_t n_ = 0, ones_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> super_;  // absolute rank at each 1024-bit superblock
    std::vector<std::uint16_t> rel_;    // rank within superblock at each 128-bit group
};

// c_1..c_m encoded as 0 1^{c_1} 0 1^{c_2} ... 0 with rank/select on top;
// get(k) and prefix_sum(k) are O(1)-ish.
class UnaryCounts {
public:
    UnaryCounts() = default;
    explicit UnaryCounts(const std::vector<std::uint64_t>& counts);

    std::size_t count() const { return m_; }
    std::uint64_t get(std::size_t k) const;         // 1-based
    std::uint64_t prefix_sum(std::size_t k) const;  // c_1 + ... + c_k, k in [0, m]
    std::uint64_t total() const { return bits_.ones(); }

    std::size_t size_in_bits() const { return bits_.size_in_bits() + 64; }

    void save(Serializer& out) const;
    static UnaryCounts load(Deserializer& in);

private:
    std::size_t m_ = 0;
    RankSelectBits bits_;
};

}  // namespace pbwt

#endif
