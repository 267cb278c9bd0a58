#ifndef PBWT_TESTS_ORACLES_HPP
#define PBWT_TESTS_ORACLES_HPP

// Brute-force reference implementations, transcribed from the definitions with
// no data-structure shortcuts. They deliberately share no code with the index
// structures; only the alphabet's code assignment is reused.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pbwt/alphabet.hpp"

namespace pbwt::oracle {

inline constexpr std::size_t kMaxN = 2048;  // guard against quadratic blowups

using Row = std::vector<std::int64_t>;  // token stream, statics offset as in pbwt

// prev/compl encodings written out directly from their definitions
Row prev_of(const std::vector<code_t>& s, const Alphabet& a);
Row compl_of(const std::vector<code_t>& s, const Alphabet& a);

std::vector<code_t> circular_row(const CodedText& t, std::size_t start);

struct Context {
    CodedText text;
    Alphabet alpha;
    bool structural;
    std::vector<Row> rows;  // encoding of every circular suffix, by start

    Context(const CodedText& t, const Alphabet& a, bool structural_mode);
    std::size_t n() const { return text.size(); }
};

std::vector<std::uint32_t> naive_sa(const Context& c);
std::vector<std::uint32_t> naive_isa(const std::vector<std::uint32_t>& sa);
std::vector<std::uint32_t> naive_lf(const Context& c);  // isa[sa[i]-1], wrap to n

struct NaiveBwtRow {
    code_t lastcol;
    std::int32_t value;       // pBWT / sBWT entry (codes or signed counts)
    std::uint32_t f;          // first occurrence used (f, f+ or f-); 0 static
    std::uint32_t fplus, fminus;
};
std::vector<NaiveBwtRow> naive_bwt(const Context& c);

struct NaiveTree {
    struct Node {
        std::uint32_t parent = 0;   // preorder, 0 for root
        std::uint32_t path_len = 0;
        std::uint32_t zero_depth = 0;
        std::uint32_t lmost = 0, rmost = 0;  // leaf interval
        std::uint32_t end = 0;               // preorder subtree end
        std::vector<std::uint32_t> children;
    };
    std::vector<Node> nodes;            // preorder, index 0 = node 1 = root
    std::vector<std::uint32_t> leaf_node;  // leaf index -> preorder

    bool is_ancestor(std::uint32_t a, std::uint32_t d) const {
        return a <= d && d <= nodes[a - 1].end;
    }
};
NaiveTree naive_tree(const Context& c, const std::vector<std::uint32_t>& sa);

// fCount/fSum straight from the definitions over a set of (leaf, f) events
std::vector<std::uint64_t> naive_fcount(const NaiveTree& t,
                                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& events);
std::vector<std::uint64_t> naive_fsum(const NaiveTree& t, const std::vector<std::uint64_t>& fcount);

// highest ancestor of leaf i with zeroDepth >= bound, by walking from the root
std::uint32_t naive_zero_node(const NaiveTree& t, std::uint32_t leaf, std::uint32_t bound);

// p-match / s-match start positions by direct window comparison
std::vector<std::size_t> naive_pmatch(const CodedText& t, const CodedText& p, const Alphabet& a);
std::vector<std::size_t> naive_smatch(const CodedText& t, const CodedText& p, const Alphabet& a);

// (end position, original 1-based pattern id) pairs, sorted
std::vector<std::pair<std::size_t, std::size_t>> naive_dict_scan(
    const std::vector<CodedText>& patterns, const CodedText& text, const Alphabet& a);

// exhaustive renaming search (sigma_p <= 8): is s2 reachable from s1 by a
// one-to-one renaming of p-codes (respecting complements when required)?
bool bijection_match(const std::vector<code_t>& s1, const std::vector<code_t>& s2,
                     const Alphabet& a, bool respect_complements);

// zeta shift of a prev-encoded token string: drop j-1 front tokens, re-zero
Row zeta(const Row& prev_tokens, std::size_t j);

}  // namespace pbwt::oracle

#endif
