#include "pbwt/bitvector.hpp"

#include <bit>

#include "pbwt/serialize.hpp"

namespace pbwt {

RankSelectBits::RankSelectBits(std::vector<bool> const& bits) : n_(bits.size()) {
    words_.assign((n_ + 63) / 64, 0);
    for (std::size_t i = 0; i < n_; ++i)
        if (bits[i]) words_[i >> 6] |= std::uint64_t(1) << (i & 63);
    build_directory();
}

void RankSelectBits::build_directory() {
    std::size_t nw = words_.size();
    super_.assign(nw / 16 + 1, 0);
    rel_.assign(nw / 2 + 1, 0);
    std::uint64_t acc = 0, sb_acc = 0;
    for (std::size_t w = 0; w < nw; ++w) {
        if (w % 16 == 0) {
            super_[w / 16] = acc;
            sb_acc = 0;
        }
        if (w % 2 == 0) rel_[w / 2] = std::uint16_t(sb_acc);
        std::uint64_t c = std::popcount(words_[w]);
        acc += c;
        sb_acc += c;
    }
    ones_ = acc;
}

std::size_t RankSelectBits::rank1(std::size_t i) const {
    if (i == 0) return 0;
    if (i > n_) throw IndexOutOfRange("rank past end of bit-vector");
    std::size_t w = (i - 1) >> 6;  // word holding bit i
    std::size_t r = super_[w / 16] + rel_[w / 2];
    if (w & 1) r += std::popcount(words_[w - 1]);
    std::uint64_t mask = (i & 63) ? ((std::uint64_t(1) << (i & 63)) - 1) : ~std::uint64_t(0);
    return r + std::popcount(words_[w] & mask);
}

std::size_t RankSelectBits::select1(std::size_t k) const {
    if (k == 0 || k > ones_) throw NotEnoughOccurrences();
    std::size_t lo = 1, hi = n_;
    while (lo < hi) {  // smallest i with rank1(i) >= k
        std::size_t mid = lo + (hi - lo) / 2;
        if (rank1(mid) >= k)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

std::size_t RankSelectBits::select0(std::size_t k) const {
    if (k == 0 || k > n_ - ones_) throw NotEnoughOccurrences();
    std::size_t lo = 1, hi = n_;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (rank0(mid) >= k)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

std::size_t RankSelectBits::size_in_bits() const {
    return 64 * words_.size() + 64 * super_.size() + 16 * rel_.size() + 128;
}

void RankSelectBits::save(Serializer& out) const {
    out.put_u64(n_);
    out.put_u64_vector(words_);
}

RankSelectBits RankSelectBits::load(Deserializer& in) {
    RankSelectBits b;
    b.n_ = in.get_u64();
    b.words_ = in.get_u64_vector();
    if (b.words_.size() != (b.n_ + 63) / 64) throw CorruptIndex("bit-vector length mismatch");
    b.build_directory();
    return b;
}

UnaryCounts::UnaryCounts(const std::vector<std::uint64_t>& counts) : m_(counts.size()) {
    std::vector<bool> bits;
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    bits.reserve(total + m_ + 1);
    bits.push_back(false);
    for (auto c : counts) {
        for (std::uint64_t t = 0; t < c; ++t) bits.push_back(true);
        bits.push_back(false);
    }
    bits_ = RankSelectBits(bits);
}

std::uint64_t UnaryCounts::get(std::size_t k) const {
    if (k == 0 || k > m_) throw IndexOutOfRange("unary get out of range");
    return bits_.select0(k + 1) - bits_.select0(k) - 1;
}

std::uint64_t UnaryCounts::prefix_sum(std::size_t k) const {
    if (k > m_) throw IndexOutOfRange("unary prefix out of range");
    // ones before the (k+1)-th zero
    return bits_.select0(k + 1) - (k + 1);
}

void UnaryCounts::save(Serializer& out) const {
    out.put_u64(m_);
    bits_.save(out);
}

UnaryCounts UnaryCounts::load(Deserializer& in) {
    UnaryCounts u;
    u.m_ = in.get_u64();
    u.bits_ = RankSelectBits::load(in);
    return u;
}

}  // namespace pbwt
