#include "pbwt/wavelet_tree.hpp"

#include <algorithm>

#include "pbwt/serialize.hpp"

namespace pbwt {

WaveletTree::WaveletTree(const std::vector<std::uint32_t>& data, std::uint32_t max_value,
                         std::uint32_t min_value)
    : n_(data.size()), maxv_(max_value), minv_(min_value) {
    for (auto v : data)
        if (v > maxv_ || v < minv_)
            throw IndexOutOfRange("wavelet tree value outside declared alphabet");
    nodes_.reserve(2 * std::size_t(maxv_ - minv_ + 1));
    nodes_.emplace_back();
    std::vector<std::uint32_t> vals(data);
    build(0, vals, minv_, maxv_);
}

void WaveletTree::build(int node, std::vector<std::uint32_t>& vals, std::uint32_t lo,
                        std::uint32_t hi) {
    nodes_[node].lo = lo;
    nodes_[node].hi = hi;
    if (lo == hi) return;
    std::uint32_t mid = lo + (hi - lo) / 2;
    std::vector<bool> bits(vals.size());
    std::vector<std::uint32_t> lv, rv;
    lv.reserve(vals.size());
    rv.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        bool right = vals[i] > mid;
        bits[i] = right;
        (right ? rv : lv).push_back(vals[i]);
    }
    nodes_[node].bits = RankSelectBits(bits);
    vals.clear();
    vals.shrink_to_fit();

    int left = int(nodes_.size());
    nodes_.emplace_back();
    nodes_[node].left = left;
    build(left, lv, lo, mid);
    int right = int(nodes_.size());
    nodes_.emplace_back();
    nodes_[node].right = right;
    build(right, rv, mid + 1, hi);
}

std::uint32_t WaveletTree::access(std::size_t i) const {
    if (i < 1 || i > n_) throw IndexOutOfRange("wavelet tree access out of range");
    int node = 0;
    while (nodes_[node].lo != nodes_[node].hi) {
        const Node& nd = nodes_[node];
        if (nd.bits.get(i)) {
            i = nd.bits.rank1(i);
            node = nd.right;
        } else {
            i = nd.bits.rank0(i);
            node = nd.left;
        }
    }
    return nodes_[node].lo;
}

std::size_t WaveletTree::rank(std::size_t i, std::uint32_t v) const {
    if (i > n_) throw IndexOutOfRange("wavelet tree rank out of range");
    if (v > maxv_ || v < minv_ || i == 0) return 0;
    int node = 0;
    while (nodes_[node].lo != nodes_[node].hi) {
        const Node& nd = nodes_[node];
        std::uint32_t mid = nd.lo + (nd.hi - nd.lo) / 2;
        if (v > mid) {
            i = nd.bits.rank1(i);
            node = nd.right;
        } else {
            i = nd.bits.rank0(i);
            node = nd.left;
        }
        if (i == 0) return 0;
    }
    return i;
}

std::size_t WaveletTree::select(std::size_t k, std::uint32_t v) const {
    if (k == 0 || v > maxv_ || v < minv_ || rank(n_, v) < k) throw NotEnoughOccurrences();
    // collect root-to-leaf path, then map the position back up
    std::vector<int> path;
    int node = 0;
    while (nodes_[node].lo != nodes_[node].hi) {
        path.push_back(node);
        const Node& nd = nodes_[node];
        std::uint32_t mid = nd.lo + (nd.hi - nd.lo) / 2;
        node = v > mid ? nd.right : nd.left;
    }
    std::size_t pos = k;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const Node& nd = nodes_[*it];
        std::uint32_t mid = nd.lo + (nd.hi - nd.lo) / 2;
        pos = v > mid ? nd.bits.select1(pos) : nd.bits.select0(pos);
    }
    return pos;
}

namespace {
// local result of a predecessor search inside one wavelet node
using MaybePos = std::optional<std::size_t>;
}  // namespace

std::optional<std::size_t> WaveletTree::predecessor(std::size_t i, std::uint32_t v) const {
    if (i < 1 || i > n_ + 1) throw IndexOutOfRange("wavelet tree predecessor out of range");
    if (i == 1 || n_ == 0) return std::nullopt;
    // rightmost position in [1, i-1] with value < v, walked recursively
    struct Impl {
        const std::vector<Node>& nodes;
        std::uint32_t v;
        MaybePos run(int node, std::size_t l, std::size_t r) const {
            if (l > r) return std::nullopt;
            const Node& nd = nodes[std::size_t(node)];
            if (nd.lo >= v) return std::nullopt;
            if (nd.hi < v) return r;
            std::size_t l0 = nd.bits.rank0(l - 1) + 1, r0 = nd.bits.rank0(r);
            std::size_t l1 = nd.bits.rank1(l - 1) + 1, r1 = nd.bits.rank1(r);
            MaybePos best;
            if (MaybePos p = run(nd.right, l1, r1)) best = nd.bits.select1(*p);
            if (MaybePos p = run(nd.left, l0, r0)) {
                std::size_t g = nd.bits.select0(*p);
                if (!best || g > *best) best = g;
            }
            return best;
        }
    };
    return Impl{nodes_, v}.run(0, 1, i - 1);
}

std::size_t WaveletTree::count_leq(std::size_t i, std::size_t j, std::int64_t y) const {
    struct Impl {
        const std::vector<Node>& nodes;
        std::int64_t y;
        std::size_t run(int node, std::size_t l, std::size_t r) const {
            if (l > r) return 0;
            const Node& nd = nodes[std::size_t(node)];
            if (std::int64_t(nd.lo) > y) return 0;
            if (std::int64_t(nd.hi) <= y) return r - l + 1;
            std::size_t l0 = nd.bits.rank0(l - 1) + 1, r0 = nd.bits.rank0(r);
            std::size_t l1 = nd.bits.rank1(l - 1) + 1, r1 = nd.bits.rank1(r);
            return run(nd.left, l0, r0) + run(nd.right, l1, r1);
        }
    };
    return Impl{nodes_, y}.run(0, i, j);
}

std::size_t WaveletTree::range_count(std::size_t i, std::size_t j, std::int64_t x,
                                     std::int64_t y) const {
    if (i < 1) i = 1;
    if (j > n_) j = n_;
    if (i > j || x > y) return 0;
    std::size_t le_y = count_leq(i, j, y);
    std::size_t le_x = x <= 0 ? 0 : count_leq(i, j, x - 1);
    return le_y - le_x;
}

std::uint32_t WaveletTree::quantile(std::size_t i, std::size_t j, std::size_t k) const {
    if (i < 1 || j > n_ || i > j || k < 1 || k > j - i + 1) throw NotEnoughValues();
    int node = 0;
    while (nodes_[node].lo != nodes_[node].hi) {
        const Node& nd = nodes_[node];
        std::size_t cnt0 = nd.bits.rank0(j) - nd.bits.rank0(i - 1);
        if (k <= cnt0) {
            std::size_t ni = nd.bits.rank0(i - 1) + 1, nj = nd.bits.rank0(j);
            i = ni, j = nj;
            node = nd.left;
        } else {
            k -= cnt0;
            std::size_t ni = nd.bits.rank1(i - 1) + 1, nj = nd.bits.rank1(j);
            i = ni, j = nj;
            node = nd.right;
        }
    }
    return nodes_[node].lo;
}

std::uint32_t WaveletTree::range_next_val(std::size_t i, std::size_t j, std::int64_t x,
                                          std::size_t k) const {
    if (i < 1 || j > n_ || i > j || k < 1) throw NotEnoughValues();
    std::size_t skip = count_leq(i, j, x);
    return quantile(i, j, skip + k);
}

std::uint32_t WaveletTree::range_prev_val(std::size_t i, std::size_t j, std::int64_t x,
                                          std::size_t k) const {
    if (i < 1 || j > n_ || i > j || k < 1) throw NotEnoughValues();
    std::size_t below = count_leq(i, j, x - 1);
    if (k > below) throw NotEnoughValues();
    return quantile(i, j, below - k + 1);
}

std::size_t WaveletTree::size_in_bits() const {
    std::size_t bits = 128;
    for (const Node& nd : nodes_) {
        bits += 128;
        if (nd.lo != nd.hi) bits += nd.bits.size_in_bits();
    }
    return bits;
}

void WaveletTree::save(Serializer& out) const {
    out.put_u64(n_);
    out.put_u32(maxv_);
    out.put_u32(minv_);
    out.put_u64(nodes_.size());
    for (const Node& nd : nodes_) {
        out.put_u32(nd.lo);
        out.put_u32(nd.hi);
        out.put_u32(std::uint32_t(nd.left));
        out.put_u32(std::uint32_t(nd.right));
        if (nd.lo != nd.hi) nd.bits.save(out);
    }
}

WaveletTree WaveletTree::load(Deserializer& in) {
    WaveletTree wt;
    wt.n_ = in.get_u64();
    wt.maxv_ = in.get_u32();
    wt.minv_ = in.get_u32();
    std::size_t cnt = in.get_u64();
    wt.nodes_.resize(cnt);
    for (Node& nd : wt.nodes_) {
        nd.lo = in.get_u32();
        nd.hi = in.get_u32();
        nd.left = std::int32_t(in.get_u32());
        nd.right = std::int32_t(in.get_u32());
        if (nd.lo != nd.hi) nd.bits = RankSelectBits::load(in);
    }
    return wt;
}

}  // namespace pbwt
