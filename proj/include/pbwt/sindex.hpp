#ifndef PBWT_SINDEX_HPP
#define PBWT_SINDEX_HPP

#include <cstdint>
#include <vector>

#include "pbwt/pindex.hpp"

namespace pbwt {

// Structural-matching index over the compl encoding: sBWT (stored shifted by
// +sigma_p), signed zeroNode variants, fs+ / reverse fs-, sLF and structural
// backward search. Queries are const and thread-safe.
class SIndex {
public:
    SIndex() = default;
    SIndex(const CodedText& text, const Alphabet& a, const IndexOptions& opt = {});

    std::size_t n() const { return n_; }
    const Alphabet& alphabet() const { return alpha_; }

    ZeroNodeVariant default_variant() const { return variant_; }
    void set_default_variant(ZeroNodeVariant v) { variant_ = v; }

    std::int32_t sbwt_at(std::size_t i) const {
        return std::int32_t(wt_.access(i)) - std::int32_t(alpha_.sigma_p());
    }

    std::uint32_t zero_node_pm(std::size_t i) const { return zero_node_pm(i, variant_); }
    std::uint32_t zero_node_pm(std::size_t i, ZeroNodeVariant v) const;

    std::uint64_t fs_plus(std::uint32_t node) const { return fsp_.fsum(tree_, node); }
    // node given in the main tree; resolved against the mirrored trie
    std::uint64_t fs_minus_rev(std::uint32_t node) const;

    std::size_t slf(std::size_t i) const { return slf(i, variant_); }
    std::size_t slf(std::size_t i, ZeroNodeVariant v) const;

    SuffixRange s_backward_search(const CodedText& pattern) const;
    std::size_t count(const CodedText& pattern) const { return s_backward_search(pattern).size(); }
    std::vector<std::size_t> locate(const CodedText& pattern) const;
    std::vector<std::size_t> locate(const SuffixRange& range) const;

    std::size_t ssa_at(std::size_t i) const;
    std::size_t issa_at(std::size_t j) const;

    const NavTree& tree() const { return tree_; }

    StructureStats stats() const;

    void save(Serializer& out) const;
    static SIndex load(Deserializer& in, const Alphabet& a);

private:
    // rangeCount over true sBWT values (handles the +sigma_p shift)
    std::size_t rc(std::size_t i, std::size_t j, std::int64_t x, std::int64_t y) const {
        std::int64_t s = alpha_.sigma_p();
        return wt_.range_count(i, j, x + s, y + s);
    }
    std::uint32_t mark_zd(std::uint32_t marked_node) const;
    std::uint32_t lowest_marked_zero_ancestor(std::uint32_t leaf, std::uint32_t c) const;
    std::uint32_t signed_beta(std::uint32_t node, std::uint32_t base, std::uint64_t ap,
                              std::uint64_t am) const;
    std::uint32_t window_class_distinct(const std::vector<std::uint32_t>& codes, std::size_t i,
                                        std::size_t j) const;

    Alphabet alpha_{{}, {}};
    std::size_t n_ = 0;
    std::uint32_t delta_ = 1;
    std::uint32_t zero_total_ = 0;
    ZeroNodeVariant variant_ = ZeroNodeVariant::compact;

    WaveletTree wt_;  // sBWT' = sBWT + sigma_p, alphabet [0, sigma + sigma_p]
    NavTree tree_;
    WaveletTree wt_zd_;
    FSumStructure fsp_;        // fs+ over the main trie
    NavTree mirror_tree_;
    FSumStructure fsm_;        // fs- over the mirrored trie (reversed leaf order)
    RankSelectBits lead_zero_;
    UnaryCounts pcount_;
    UnaryCounts alpha_plus_, alpha_minus_;  // per node, signed zeroNode landings
    MarkingScheme marks_g_;
    WaveletTree wt_mark_zd_;
    MarkingScheme marks_gp_;
    std::vector<std::uint32_t> delta_gp_plus_, delta_gp_minus_;

    RankSelectBits ssa_sampled_;
    std::vector<std::uint32_t> ssa_vals_;
    std::vector<std::uint32_t> issa_vals_;
};

}  // namespace pbwt

#endif
