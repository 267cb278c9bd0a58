#ifndef PBWT_WAVELET_TREE_HPP
#define PBWT_WAVELET_TREE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pbwt/bitvector.hpp"

namespace pbwt {

// Balanced wavelet tree over values in [min_value, max_value]. Positions are
// 1-based, ranges inclusive. Supports the access/rank/select/predecessor/
// rangeCount/rangeNextVal/rangePrevVal query set.
class WaveletTree {
public:
    WaveletTree() = default;
    WaveletTree(const std::vector<std::uint32_t>& data, std::uint32_t max_value,
                std::uint32_t min_value = 0);

    std::size_t size() const { return n_; }
    std::uint32_t max_value() const { return maxv_; }
    std::uint32_t min_value() const { return minv_; }

    std::uint32_t access(std::size_t i) const;
    std::size_t rank(std::size_t i, std::uint32_t v) const;    // i in [0, n]
    std::size_t select(std::size_t k, std::uint32_t v) const;  // throws NotEnoughOccurrences

    // Rightmost j < i with data[j] < v, or nullopt. i in [1, n+1].
    std::optional<std::size_t> predecessor(std::size_t i, std::uint32_t v) const;

    // |{k in [i,j] : x <= data[k] <= y}|; 0 for empty/inverted ranges.
    std::size_t range_count(std::size_t i, std::size_t j, std::int64_t x, std::int64_t y) const;

    // k-th smallest value in data[i..j] (1-based k); throws NotEnoughValues.
    std::uint32_t quantile(std::size_t i, std::size_t j, std::size_t k) const;

    // k-th smallest value > x / k-th largest value < x in data[i..j].
    std::uint32_t range_next_val(std::size_t i, std::size_t j, std::int64_t x,
                                 std::size_t k) const;
    std::uint32_t range_prev_val(std::size_t i, std::size_t j, std::int64_t x,
                                 std::size_t k) const;

    std::size_t size_in_bits() const;

    void save(Serializer& out) const;
    static WaveletTree load(Deserializer& in);

private:
    struct Node {
        std::uint32_t lo = 0, hi = 0;   // value range
        std::int32_t left = -1, right = -1;
        RankSelectBits bits;            // 0 = went left
    };

    void build(int node, std::vector<std::uint32_t>& vals, std::uint32_t lo, std::uint32_t hi);
    std::size_t count_leq(std::size_t i, std::size_t j, std::int64_t y) const;

    std::size_t n_ = 0;
    std::uint32_t maxv_ = 0, minv_ = 0;
    std::vector<Node> nodes_;
};

}  // namespace pbwt

#endif
