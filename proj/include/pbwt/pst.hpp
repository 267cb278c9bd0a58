#ifndef PBWT_PST_HPP
#define PBWT_PST_HPP

#include <cstdint>
#include <vector>

#include "pbwt/alphabet.hpp"
#include "pbwt/nav_tree.hpp"

namespace pbwt {

enum class Encoding : std::uint8_t { prev = 0, structural = 1 };

// Token-at-a-time view of the prev/compl encodings of all circular suffixes.
// token(p, k) is the k-th token of the encoding of the circular suffix starting
// at p, in O(1) after O(n) setup; nothing is materialized.
class CircularView {
public:
    CircularView(const CodedText& t, const Alphabet& a, Encoding enc);

    std::size_t n() const { return n_; }
    token_t token(std::size_t p, std::size_t k) const;
    int compare(std::size_t p, std::size_t q) const;       // full-encoding compare
    std::size_t lcp(std::size_t p, std::size_t q) const;   // in tokens, < n when p != q

    // number of 0-tokens in the length-len prefix of suffix p's encoding
    std::uint32_t zero_count(std::size_t p, std::size_t len) const;
    std::uint32_t zero_total() const { return zero_total_; }

    // distance from text position q to the next occurrence of the same symbol
    // (circular, in [1, n]); and to the next occurrence of its complement
    // (n + 1 when there is none)
    std::uint32_t next_same(std::size_t q) const { return next_same_[q - 1]; }
    std::uint32_t next_comp(std::size_t q) const { return next_comp_[q - 1]; }

    const CodedText& text() const { return *t_; }
    const Alphabet& alphabet() const { return *a_; }
    Encoding encoding() const { return enc_; }

    std::size_t wrap(std::size_t pos) const { return (pos - 1) % n_ + 1; }

private:
    const CodedText* t_;
    const Alphabet* a_;
    Encoding enc_;
    std::size_t n_;
    std::uint32_t zero_total_ = 0;
    std::vector<std::uint32_t> prev_own_, prev_comp_;  // backward distances, n+1 = none
    std::vector<std::uint32_t> next_same_, next_comp_;
};

// psa/ipsa pair plus the compacted trie of the encoded circular suffixes.
// Internal nodes carry the branching prefix lengths; every leaf spells the full
// length-n circular encoding, so leaf path_len is n and leaf zero_depth is the
// number of 0-tokens in any full encoding.
struct PSuffixData {
    std::vector<std::uint32_t> psa;   // rank i (1-based) -> text position, at [i-1]
    std::vector<std::uint32_t> ipsa;  // text position j -> rank, at [j-1]
    NavTree tree;
    std::vector<std::uint32_t> path_len;    // node u -> |path(u)|, at [u-1]
    std::vector<std::uint32_t> zero_depth;  // node u -> zeroDepth(u)
    std::uint32_t zero_total = 0;

    std::size_t n() const { return psa.size(); }
};

struct BuildOptions {
    // materialize all encodings for the sort (n <= 65536) instead of comparing
    // lazily; the output is identical
    bool materialize_encodings = false;
};

// Requires the terminator to be present exactly once, at the end.
PSuffixData build_psuffix_data(const CircularView& view, const BuildOptions& opt = {});

// Mirror of the suffix trie: leaves in reversed order, children reversed.
// Leaf i of the mirror corresponds to leaf n+1-i of the original.
struct MirrorTree {
    NavTree tree;
    std::vector<std::uint32_t> path_len;
};
MirrorTree build_mirror_tree(const CircularView& view, const PSuffixData& psd);

struct PBWTData {
    std::vector<std::uint32_t> pbwt;      // [1, sigma]
    std::vector<std::uint32_t> lastcol;   // L[i] codes
    std::vector<std::uint32_t> firstocc;  // f_i; 0 on static rows
};
PBWTData build_pbwt(const CircularView& view, const PSuffixData& psd);

struct SBWTData {
    std::vector<std::int32_t> sbwt;      // [-sigma_p,-1] u [1, sigma], never 0
    std::vector<std::uint32_t> lastcol;
    std::vector<std::uint32_t> fplus;    // first occurrence of L[i]; 0 on static rows
    std::vector<std::uint32_t> fminus;   // first occurrence of its complement; n+1 = none
};
SBWTData build_sbwt(const CircularView& view, const PSuffixData& psd);

}  // namespace pbwt

#endif
