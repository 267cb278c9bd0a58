#ifndef PBWT_NAV_TREE_HPP
#define PBWT_NAV_TREE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pbwt/bitvector.hpp"

namespace pbwt {

// Ordered rooted tree navigated through index arrays. Nodes are identified by
// their 1-based preorder rank; leaves are numbered 1..L left to right. The
// contract is the operation set, not the 2m+o(m) bound; size_in_bits() reports
// the arrays as stored.
class NavTree {
public:
    NavTree() = default;
    // parent[k] = preorder rank of node k+1's parent, parent[0] ignored for the
    // root. Children of a node must appear in increasing preorder (which the
    // preorder numbering guarantees); sibling order is the construction order.
    explicit NavTree(const std::vector<std::uint32_t>& parent);

    std::uint32_t node_count() const { return m_; }
    std::uint32_t leaf_count() const { return nleaves_; }
    static constexpr std::uint32_t root() { return 1; }

    std::uint32_t parent(std::uint32_t u) const;
    std::uint32_t node_depth(std::uint32_t u) const { return depth_[u - 1]; }
    std::uint32_t child(std::uint32_t u, std::uint32_t q) const;
    std::uint32_t degree(std::uint32_t u) const { return degree_[u - 1]; }
    std::uint32_t pre_order(std::uint32_t u) const { return u; }
    bool is_leaf(std::uint32_t u) const { return degree_[u - 1] == 0; }

    std::uint32_t lca(std::uint32_t u, std::uint32_t v) const;

    std::uint32_t lmost_leaf(std::uint32_t u) const { return lmost_[u - 1]; }
    std::uint32_t rmost_leaf(std::uint32_t u) const { return rmost_[u - 1]; }
    std::uint32_t leaf_select(std::uint32_t i) const;       // leaf index -> node
    std::uint32_t leaf_rank(std::uint32_t u) const;         // leaf node -> index
    std::uint32_t level_ancestor(std::uint32_t u, std::uint32_t d) const;

    // preorder rank of the last node in u's subtree
    std::uint32_t subtree_end(std::uint32_t u) const { return sub_end_[u - 1]; }
    bool is_ancestor(std::uint32_t a, std::uint32_t d) const {
        return a <= d && d <= sub_end_[a - 1];
    }

    std::size_t size_in_bits() const;

    void save(Serializer& out) const;
    static NavTree load(Deserializer& in);

private:
    void finish();

    std::uint32_t m_ = 0, nleaves_ = 0;
    std::vector<std::uint32_t> parent_, depth_, first_child_, next_sibling_, degree_;
    std::vector<std::uint32_t> lmost_, rmost_, sub_end_;
    std::vector<std::uint32_t> leaf_node_;  // leaf index -> preorder rank
};

// Fact-2 style marked/prime node scheme for grouping factor g >= 2: lca of
// every g-leaf group (partial last group included) plus the lca closure over
// preorder-consecutive marked nodes; primes sit below the lowest marked
// ancestor of each marked node.
class MarkingScheme {
public:
    MarkingScheme() = default;
    MarkingScheme(const NavTree& t, std::uint32_t g);

    std::uint32_t grouping() const { return g_; }
    bool is_marked(std::uint32_t u) const { return marked_.get(u); }
    bool is_prime(std::uint32_t u) const { return prime_.get(u); }
    bool is_lowest_marked(std::uint32_t u) const { return is_marked(u) && lowest_.get(u); }

    std::uint32_t marked_count() const { return std::uint32_t(marked_.ones()); }
    std::uint32_t prime_count() const { return std::uint32_t(prime_.ones()); }

    // rank of a marked node among marked nodes in preorder, and back
    std::uint32_t marked_rank(std::uint32_t u) const { return std::uint32_t(marked_.rank1(u)); }
    std::uint32_t marked_select(std::uint32_t k) const { return std::uint32_t(marked_.select1(k)); }
    std::uint32_t prime_rank(std::uint32_t u) const { return std::uint32_t(prime_.rank1(u)); }

    // lowest marked/prime ancestor-or-self; marked version always exists (root
    // is marked), prime version may not.
    std::uint32_t lowest_marked_ancestor(const NavTree& t, std::uint32_t u) const;
    std::optional<std::uint32_t> lowest_prime_ancestor(const NavTree& t, std::uint32_t u) const;

    // unique highest marked node in u's subtree, if any
    std::optional<std::uint32_t> highest_marked_descendant(const NavTree& t,
                                                           std::uint32_t u) const;

    std::size_t size_in_bits() const {
        return marked_.size_in_bits() + prime_.size_in_bits() + lowest_.size_in_bits() + 64;
    }

    void save(Serializer& out) const;
    static MarkingScheme load(Deserializer& in, const NavTree& t);

private:
    std::uint32_t g_ = 2;
    RankSelectBits marked_, prime_, lowest_;
};

}  // namespace pbwt

#endif
