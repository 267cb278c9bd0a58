#ifndef PBWT_PINDEX_HPP
#define PBWT_PINDEX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbwt/alphabet.hpp"
#include "pbwt/fsum.hpp"
#include "pbwt/pst.hpp"
#include "pbwt/wavelet_tree.hpp"

namespace pbwt {

enum class ZeroNodeVariant : std::uint8_t { compact = 0, succinct = 1 };

struct IndexOptions {
    std::uint32_t delta = 0;        // 0: ceil(log2 n); otherwise explicit
    bool delta_log_sigma = false;   // ceil(log_sigma n) instead of ceil(log2 n)
    bool materialize_encodings = false;
};

struct SuffixRange {
    std::size_t sp = 1, ep = 0;
    bool empty() const { return sp > ep; }
    std::size_t size() const { return empty() ? 0 : ep - sp + 1; }
    friend bool operator==(const SuffixRange&, const SuffixRange&) = default;
};

struct StructureStats {
    std::vector<std::pair<std::string, std::size_t>> bits;  // per structure
    std::size_t total() const {
        std::size_t t = 0;
        for (auto& [k, v] : bits) t += v;
        return t;
    }
};

// The parameterized FM-index: wavelet tree over pBWT, suffix trie topology,
// zeroNode structures (both variants), fSum, and sampled (inverse) suffix
// arrays. All queries are const and safe to run concurrently.
class PIndex {
public:
    PIndex() = default;
    PIndex(const CodedText& text, const Alphabet& a, const IndexOptions& opt = {});

    std::size_t n() const { return n_; }
    const Alphabet& alphabet() const { return alpha_; }
    std::uint32_t delta() const { return delta_; }

    ZeroNodeVariant default_variant() const { return variant_; }
    void set_default_variant(ZeroNodeVariant v) { variant_ = v; }

    std::uint32_t pbwt_at(std::size_t i) const { return wt_.access(i); }

    std::uint32_t zero_node_compact(std::size_t i) const;
    std::uint32_t zero_node_succinct(std::size_t i) const;
    std::uint64_t f_sum(std::uint32_t node) const { return fsum_.fsum(tree_, node); }

    std::size_t plf(std::size_t i) const { return plf(i, variant_); }
    std::size_t plf(std::size_t i, ZeroNodeVariant v) const;

    // suffix range of prev(P); empty pattern covers everything
    SuffixRange backward_search(const CodedText& pattern) const;
    std::size_t count(const CodedText& pattern) const { return backward_search(pattern).size(); }
    std::vector<std::size_t> locate(const CodedText& pattern) const;
    std::vector<std::size_t> locate(const SuffixRange& range) const;

    std::size_t psa_at(std::size_t i) const;   // pSA[i]
    std::size_t ipsa_at(std::size_t j) const;  // pSA^{-1}[j]

    // prev(T[x, y]), 1 <= x <= y <= n
    Tokens extract(std::size_t x, std::size_t y) const;

    const NavTree& tree() const { return tree_; }
    const FSumStructure& fsum_structure() const { return fsum_; }
    const WaveletTree& pbwt_wt() const { return wt_; }
    std::uint32_t zero_total() const { return zero_total_; }

    StructureStats stats() const;

    void save(Serializer& out) const;
    static PIndex load(Deserializer& in, const Alphabet& a);

private:
    std::size_t plf_static(std::size_t i, std::uint32_t c) const;
    std::uint32_t mark_zd(std::uint32_t marked_node) const;
    std::uint32_t lowest_marked_zero_ancestor(std::uint32_t leaf, std::uint32_t c) const;

    Alphabet alpha_{{}, {}};
    std::size_t n_ = 0;
    std::uint32_t delta_ = 1;
    std::uint32_t zero_total_ = 0;
    ZeroNodeVariant variant_ = ZeroNodeVariant::compact;

    WaveletTree wt_;        // pBWT
    NavTree tree_;
    WaveletTree wt_zd_;     // zeroDepth by preorder (compact variant)
    FSumStructure fsum_;
    RankSelectBits lead_zero_;   // per leaf: 1 iff f = |path(parent(zeroNode))|+1
    UnaryCounts pcount_;         // per node: children led by an integer token
    UnaryCounts alpha_counts_;   // per node: leaves whose zeroNode is the node
    MarkingScheme marks_g_;      // g = ceil(log2 sigma)
    WaveletTree wt_mark_zd_;     // zeroDepth of g-marked nodes
    MarkingScheme marks_gp_;     // g' = ceil(log2 log2 sigma)
    std::vector<std::uint32_t> delta_gp_;  // per g'-marked node

    RankSelectBits psa_sampled_;           // over ranks
    std::vector<std::uint32_t> psa_vals_;  // sampled pSA values, rank order
    std::vector<std::uint32_t> ipsa_vals_; // pSA^{-1} at 1, 1+delta, ..., then n

    friend class SIndex;
};

std::uint32_t ceil_log2(std::uint64_t x);

// Shared helper: per-pattern tables for backward search (first occurrence and
// distinct counts of the processed suffix).
struct PatternScan {
    std::vector<std::uint32_t> codes;          // 1-based via index-1
    std::vector<std::uint32_t> next_occ;       // next position of same code, 0 = none
    std::vector<std::uint32_t> next_comp_occ;  // next position of complement, 0 = none
    std::vector<std::uint32_t> distinct_suffix;         // distinct p codes in P[k..]
    std::vector<std::uint32_t> distinct_class_suffix;   // distinct complement classes
    PatternScan(const CodedText& p, const Alphabet& a);
};

}  // namespace pbwt

#endif
