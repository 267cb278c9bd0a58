#include "pbwt/nav_tree.hpp"

#include <algorithm>
#include <set>

#include "pbwt/serialize.hpp"

namespace pbwt {

NavTree::NavTree(const std::vector<std::uint32_t>& parent)
    : m_(std::uint32_t(parent.size())), parent_(parent) {
    if (m_ == 0) throw IndexOutOfRange("empty tree");
    parent_[0] = 0;
    for (std::uint32_t k = 2; k <= m_; ++k)
        if (parent_[k - 1] < 1 || parent_[k - 1] >= k)
            throw IndexOutOfRange("parent ranks must precede children in preorder");
    finish();
}

void NavTree::finish() {
    depth_.assign(m_, 0);
    first_child_.assign(m_, 0);
    next_sibling_.assign(m_, 0);
    degree_.assign(m_, 0);
    std::vector<std::uint32_t> last_child(m_, 0);
    for (std::uint32_t u = 2; u <= m_; ++u) {
        std::uint32_t p = parent_[u - 1];
        depth_[u - 1] = depth_[p - 1] + 1;
        if (first_child_[p - 1] == 0)
            first_child_[p - 1] = u;
        else
            next_sibling_[last_child[p - 1] - 1] = u;
        last_child[p - 1] = u;
        ++degree_[p - 1];
    }

    lmost_.assign(m_, 0);
    rmost_.assign(m_, 0);
    sub_end_.assign(m_, 0);
    leaf_node_.clear();
    // preorder is increasing, so one reverse sweep settles subtree data
    for (std::uint32_t u = m_; u >= 1; --u) {
        if (degree_[u - 1] == 0) leaf_node_.push_back(u);
        if (u == 1) break;
    }
    std::reverse(leaf_node_.begin(), leaf_node_.end());
    nleaves_ = std::uint32_t(leaf_node_.size());
    std::vector<std::uint32_t> leaf_idx(m_, 0);
    for (std::uint32_t i = 0; i < nleaves_; ++i) leaf_idx[leaf_node_[i] - 1] = i + 1;

    for (std::uint32_t u = m_; u >= 1; --u) {
        if (degree_[u - 1] == 0) {
            lmost_[u - 1] = rmost_[u - 1] = leaf_idx[u - 1];
            sub_end_[u - 1] = u;
        } else {
            std::uint32_t lo = 0, hi = 0, end = u;
            for (std::uint32_t c = first_child_[u - 1]; c != 0; c = next_sibling_[c - 1]) {
                if (lo == 0) lo = lmost_[c - 1];
                hi = rmost_[c - 1];
                end = std::max(end, sub_end_[c - 1]);
            }
            lmost_[u - 1] = lo;
            rmost_[u - 1] = hi;
            sub_end_[u - 1] = end;
        }
        if (u == 1) break;
    }
}

std::uint32_t NavTree::parent(std::uint32_t u) const {
    if (u == 1) throw RootHasNoParent();
    if (u < 1 || u > m_) throw IndexOutOfRange("bad node");
    return parent_[u - 1];
}

std::uint32_t NavTree::child(std::uint32_t u, std::uint32_t q) const {
    if (q < 1 || q > degree_[u - 1]) throw NoSuchChild();
    std::uint32_t c = first_child_[u - 1];
    for (std::uint32_t i = 1; i < q; ++i) c = next_sibling_[c - 1];
    return c;
}

std::uint32_t NavTree::lca(std::uint32_t u, std::uint32_t v) const {
    while (u != v) {
        if (depth_[u - 1] >= depth_[v - 1])
            u = parent_[u - 1];
        else
            v = parent_[v - 1];
    }
    return u;
}

std::uint32_t NavTree::leaf_select(std::uint32_t i) const {
    if (i < 1 || i > nleaves_) throw IndexOutOfRange("bad leaf index");
    return leaf_node_[i - 1];
}

std::uint32_t NavTree::leaf_rank(std::uint32_t u) const {
    if (u < 1 || u > m_ || degree_[u - 1] != 0) throw IndexOutOfRange("node is not a leaf");
    return lmost_[u - 1];
}

std::uint32_t NavTree::level_ancestor(std::uint32_t u, std::uint32_t d) const {
    if (d > depth_[u - 1]) throw DepthOutOfRange();
    while (depth_[u - 1] > d) u = parent_[u - 1];
    return u;
}

std::size_t NavTree::size_in_bits() const {
    return 32 * (parent_.size() + depth_.size() + first_child_.size() + next_sibling_.size() +
                 degree_.size() + lmost_.size() + rmost_.size() + sub_end_.size() +
                 leaf_node_.size()) +
           128;
}

void NavTree::save(Serializer& out) const {
    out.put_u32_vector(parent_);
}

NavTree NavTree::load(Deserializer& in) {
    return NavTree(in.get_u32_vector());
}

MarkingScheme::MarkingScheme(const NavTree& t, std::uint32_t g) : g_(std::max<std::uint32_t>(g, 2)) {
    const std::uint32_t m = t.node_count(), L = t.leaf_count();
    std::vector<bool> marked(m + 1, false);
    marked[NavTree::root()] = true;
    for (std::uint32_t start = 1; start <= L; start += g_) {
        std::uint32_t end = std::min(start + g_ - 1, L);
        marked[t.lca(t.leaf_select(start), t.leaf_select(end))] = true;
    }
    // closure over preorder-consecutive marked pairs, to the fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        std::uint32_t prev = 0;
        for (std::uint32_t u = 1; u <= m; ++u) {
            if (!marked[u]) continue;
            if (prev != 0) {
                std::uint32_t w = t.lca(prev, u);
                if (!marked[w]) {
                    marked[w] = true;
                    changed = true;
                }
            }
            prev = u;
        }
    }

    std::vector<bool> mb(m), pb(m, false), lb(m, false);
    for (std::uint32_t u = 1; u <= m; ++u) mb[u - 1] = marked[u];

    // lowest marked = marked without marked strict descendant
    std::vector<bool> has_marked_below(m + 1, false);
    for (std::uint32_t u = m; u >= 2; --u) {
        if (marked[u] || has_marked_below[u]) {
            std::uint32_t p = t.parent(u);
            has_marked_below[p] = true;
        }
    }
    for (std::uint32_t u = 1; u <= m; ++u)
        if (marked[u] && !has_marked_below[u]) lb[u - 1] = true;

    // prime of a marked node u: the child of u's lowest marked proper ancestor
    // on the way to u (u itself when its parent is marked)
    for (std::uint32_t u = 1; u <= m; ++u) {
        if (!marked[u] || u == NavTree::root()) continue;
        std::uint32_t w = u;
        while (true) {
            std::uint32_t p = t.parent(w);
            if (marked[p]) break;
            w = p;
        }
        pb[w - 1] = true;
    }

    marked_ = RankSelectBits(mb);
    prime_ = RankSelectBits(pb);
    lowest_ = RankSelectBits(lb);
}

std::uint32_t MarkingScheme::lowest_marked_ancestor(const NavTree& t, std::uint32_t u) const {
    if (is_marked(u)) return u;
    std::uint32_t best = NavTree::root();
    auto consider = [&](std::uint32_t w) {
        if (is_marked(w) && t.is_ancestor(w, u) && t.node_depth(w) > t.node_depth(best)) best = w;
    };
    std::size_t r = marked_.rank1(u);
    std::uint32_t jp = r > 0 ? std::uint32_t(marked_.select1(r)) : 0;
    std::uint32_t jn = r < marked_.ones() ? std::uint32_t(marked_.select1(r + 1)) : 0;
    if (jp) consider(t.lca(u, jp));
    if (jn) consider(t.lca(u, jn));
    if (jp && jn) consider(t.lca(jp, jn));
    return best;
}

std::optional<std::uint32_t> MarkingScheme::lowest_prime_ancestor(const NavTree& t,
                                                                  std::uint32_t u) const {
    if (is_prime(u)) return u;
    // primes are children of marked nodes toward marked descendants, so they
    // are sparse on any root path; a plain upward walk suffices here
    std::uint32_t w = u;
    while (w != NavTree::root()) {
        w = t.parent(w);
        if (is_prime(w)) return w;
    }
    return std::nullopt;
}

std::optional<std::uint32_t> MarkingScheme::highest_marked_descendant(const NavTree& t,
                                                                      std::uint32_t u) const {
    std::uint32_t lo = u, hi = t.subtree_end(u);
    std::size_t below = marked_.rank1(lo - 1);
    std::size_t upto = marked_.rank1(hi);
    if (upto == below) return std::nullopt;
    std::uint32_t first = std::uint32_t(marked_.select1(below + 1));
    std::uint32_t last = std::uint32_t(marked_.select1(upto));
    // marked set is lca-closed, so this lca is marked and is the unique top
    return t.lca(first, last);
}

void MarkingScheme::save(Serializer& out) const {
    out.put_u32(g_);
    marked_.save(out);
    prime_.save(out);
    lowest_.save(out);
}

MarkingScheme MarkingScheme::load(Deserializer& in, const NavTree&) {
    MarkingScheme s;
    s.g_ = in.get_u32();
    s.marked_ = RankSelectBits::load(in);
    s.prime_ = RankSelectBits::load(in);
    s.lowest_ = RankSelectBits::load(in);
    return s;
}

}  // namespace pbwt
