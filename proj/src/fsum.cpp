#include "pbwt/fsum.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "pbwt/serialize.hpp"

namespace pbwt {

FSumStructure::FSumStructure(const NavTree& tree, const std::vector<std::uint32_t>& path_len,
                             const std::vector<Event>& events, std::uint32_t g)
    : g_(std::max<std::uint32_t>(g, 2)) {
    const std::uint32_t m = tree.node_count();

    // fCount: land each event on the locus of its (f-1)-prefix
    fc_plain_.assign(m, 0);
    std::vector<std::vector<std::uint32_t>> bucket(m + 1);  // node -> leaf indices
    for (const Event& e : events) {
        std::uint32_t x = tree.leaf_select(e.leaf);
        while (x != NavTree::root() && path_len[tree.parent(x) - 1] >= e.f - 1)
            x = tree.parent(x);
        if (x == NavTree::root()) continue;  // f = 1 lands nowhere
        ++fc_plain_[x - 1];
        bucket[x].push_back(e.leaf);
    }
    {
        std::vector<std::uint64_t> fc64(fc_plain_.begin(), fc_plain_.end());
        fcount_ = UnaryCounts(fc64);
    }

    marking_ = MarkingScheme(tree, g_);

    // transient exact fSum for every node: prefix sums minus the ancestor path
    std::vector<std::uint64_t> pf(m + 1, 0);
    for (std::uint32_t u = 1; u <= m; ++u) pf[u] = pf[u - 1] + fc_plain_[u - 1];
    std::vector<std::uint64_t> fsum_all(m, 0);
    {
        std::vector<std::uint64_t> anc(m + 1, 0);  // sum of fc over ancestors of u, by depth reuse
        // preorder pass: anc(u) = anc(parent) + fc(parent)
        for (std::uint32_t u = 2; u <= m; ++u) {
            std::uint32_t p = tree.parent(u);
            anc[u] = anc[p] + fc_plain_[p - 1];
        }
        for (std::uint32_t u = 1; u <= m; ++u) fsum_all[u - 1] = pf[u - 1] - anc[u];
    }

    auto subtree_size = [&](std::uint32_t u) { return tree.subtree_end(u) - u + 1; };

    const std::uint32_t nmarked = marking_.marked_count();
    const std::uint32_t nprime = marking_.prime_count();
    fsum_marked_.resize(nmarked);
    phi_marked_.resize(nmarked);
    rec_lowest_.assign(nmarked, kNoRec);
    rec_residue_.assign(nmarked, kNoRec);
    fsum_prime_.resize(nprime);
    hmd_prime_.assign(nprime, 0);
    b_prime_.resize(nprime);
    rec_prime_.assign(nprime, kNoRec);

    std::map<std::vector<std::uint32_t>, std::uint32_t> psi_memo;
    auto pool_psi = [&](std::vector<std::uint32_t>&& psi) -> std::uint32_t {
        auto [it, fresh] = psi_memo.try_emplace(std::move(psi), std::uint32_t(psi_pool_.size()));
        if (fresh) psi_pool_.push_back(it->first);
        return it->second;
    };

    // pass 1: explicit values at marked and prime nodes
    for (std::uint32_t k = 1; k <= nmarked; ++k) {
        std::uint32_t u = std::uint32_t(marking_.marked_select(k));
        fsum_marked_[k - 1] = fsum_all[u - 1];
        phi_marked_[k - 1] = pf[tree.subtree_end(u)] - pf[u - 1];
    }

    // pass 2: territory records
    std::uint32_t prime_seen = 0;
    for (std::uint32_t u = 1; u <= m; ++u) {
        if (marking_.is_marked(u) && marking_.is_lowest_marked(u) && subtree_size(u) > 1) {
            std::vector<std::uint32_t> psi(subtree_size(u) - 1);
            for (std::uint32_t v = u + 1; v <= tree.subtree_end(u); ++v)
                psi[v - u - 1] = std::uint32_t(fsum_all[v - 1] - fsum_all[u - 1]);
            rec_lowest_[marking_.marked_rank(u) - 1] = pool_psi(std::move(psi));
        }
        if (marking_.is_prime(u)) {
            fsum_prime_[prime_seen] = fsum_all[u - 1];
            auto star = marking_.highest_marked_descendant(tree, u);
            if (star && *star != u) {
                std::uint32_t us = *star;
                hmd_prime_[prime_seen] = us;
                // path u = u_0, u_1, ..., u_k, u_{k+1} = u*
                std::vector<std::uint32_t> path;
                for (std::uint32_t w = tree.parent(us); w != u; w = tree.parent(w))
                    path.push_back(w);
                std::reverse(path.begin(), path.end());
                std::vector<std::uint64_t> counts(path.size(), 0);
                std::uint32_t ls = tree.lmost_leaf(us), rs = tree.rmost_leaf(us);
                for (std::size_t t = 0; t < path.size(); ++t)
                    for (std::uint32_t lf : bucket[path[t]])
                        if (lf >= ls && lf <= rs) ++counts[t];
                b_prime_[prime_seen] = UnaryCounts(counts);
                std::uint64_t gamma_total = b_prime_[prime_seen].total();
                std::uint64_t phi_star = phi_marked_[marking_.marked_rank(us) - 1];
                // Psi1/Psi2 over subtree(u) minus subtree(u*)
                std::uint32_t sz_star = subtree_size(us);
                std::uint32_t terr = subtree_size(u) - sz_star - 1;
                if (terr > 0) {
                    std::vector<std::uint32_t> psi(terr);
                    for (std::uint32_t v = u + 1; v <= tree.subtree_end(u); ++v) {
                        if (v >= us && v <= tree.subtree_end(us)) continue;
                        std::uint32_t local =
                            v - u - (v > us ? sz_star : 0);  // 1-based territory rank
                        std::uint64_t val = fsum_all[v - 1] - fsum_all[u - 1];
                        if (v > us) {
                            std::uint32_t w = tree.lca(v, us);
                            std::uint32_t i = tree.node_depth(w) - tree.node_depth(u);
                            std::uint64_t gamma = gamma_total - b_prime_[prime_seen].prefix_sum(i);
                            val -= phi_star + gamma;
                        }
                        psi[local - 1] = std::uint32_t(val);
                    }
                    rec_prime_[prime_seen] = pool_psi(std::move(psi));
                }
            }
            ++prime_seen;
        }
    }

    // residue records: nodes whose lowest marked-or-prime ancestor is a marked,
    // non-lowest node (mark-free branches the prime territories do not reach)
    std::vector<std::vector<std::uint32_t>> res_pos(nmarked), res_psi(nmarked);
    {
        // lowest special ancestor via one preorder sweep
        std::vector<std::uint32_t> lsa(m + 1, 0);
        for (std::uint32_t u = 2; u <= m; ++u) {
            std::uint32_t p = tree.parent(u);
            lsa[u] = (marking_.is_marked(p) || marking_.is_prime(p)) ? p : lsa[p];
        }
        for (std::uint32_t u = 2; u <= m; ++u) {
            if (marking_.is_marked(u) || marking_.is_prime(u)) continue;
            std::uint32_t a = lsa[u];
            if (!marking_.is_marked(a)) continue;                 // prime territory covers it
            if (marking_.is_lowest_marked(a)) continue;           // lowest-marked record covers it
            if (marking_.is_prime(a)) {
                auto star = marking_.highest_marked_descendant(tree, a);
                if (star && *star != a) continue;                 // prime territory covers it
            }
            std::uint32_t k = std::uint32_t(marking_.marked_rank(a)) - 1;
            res_pos[k].push_back(u);
            res_psi[k].push_back(std::uint32_t(fsum_all[u - 1] - fsum_all[a - 1]));
        }
    }
    for (std::uint32_t k = 0; k < nmarked; ++k) {
        if (res_pos[k].empty()) continue;
        rec_residue_[k] = std::uint32_t(residue_pos_pool_.size());
        residue_pos_pool_.push_back(std::move(res_pos[k]));
        residue_psi_pool_.push_back(std::move(res_psi[k]));
    }
}

std::uint64_t FSumStructure::fsum(const NavTree& tree, std::uint32_t node) const {
    if (marking_.is_marked(node)) return fsum_marked_[marking_.marked_rank(node) - 1];
    if (marking_.is_prime(node)) return fsum_prime_[marking_.prime_rank(node) - 1];

    // lowest special (marked-or-prime) ancestor; both are proper here
    std::uint32_t lma = marking_.lowest_marked_ancestor(tree, node);
    auto lpa = marking_.lowest_prime_ancestor(tree, node);
    std::uint32_t a = (lpa && tree.node_depth(*lpa) > tree.node_depth(lma)) ? *lpa : lma;

    if (marking_.is_prime(a)) {
        std::uint32_t pr = std::uint32_t(marking_.prime_rank(a)) - 1;
        std::uint32_t us = hmd_prime_[pr];
        if (us != 0 && !tree.is_ancestor(us, node)) {
            std::uint32_t sz_star = tree.subtree_end(us) - us + 1;
            std::uint32_t local = node - a - (node > us ? sz_star : 0);
            std::uint64_t psi = psi_pool_[rec_prime_[pr]][local - 1];
            std::uint64_t val = fsum_prime_[pr] + psi;
            if (node > us) {
                std::uint32_t w = tree.lca(node, us);
                std::uint32_t i = tree.node_depth(w) - tree.node_depth(a);
                const UnaryCounts& b = b_prime_[pr];
                std::uint64_t gamma = b.total() - b.prefix_sum(i);
                val += phi_marked_[marking_.marked_rank(us) - 1] + gamma;
            }
            return val;
        }
    }

    std::uint32_t k = std::uint32_t(marking_.marked_rank(a)) - 1;
    if (marking_.is_lowest_marked(a)) {
        std::uint64_t psi = psi_pool_[rec_lowest_[k]][node - a - 1];
        return fsum_marked_[k] + psi;
    }
    const auto& pos = residue_pos_pool_[rec_residue_[k]];
    auto it = std::lower_bound(pos.begin(), pos.end(), node);
    assert(it != pos.end() && *it == node);
    return fsum_marked_[k] + residue_psi_pool_[rec_residue_[k]][std::size_t(it - pos.begin())];
}

std::size_t FSumStructure::size_in_bits() const {
    std::size_t bits = 64 + fcount_.size_in_bits() + marking_.size_in_bits();
    bits += 64 * (fsum_marked_.size() + phi_marked_.size() + fsum_prime_.size());
    bits += 32 * (hmd_prime_.size() + rec_prime_.size() + rec_lowest_.size() + rec_residue_.size());
    for (const auto& b : b_prime_) bits += b.size_in_bits();
    for (const auto& v : psi_pool_) bits += 32 * v.size() + 64;
    for (const auto& v : residue_pos_pool_) bits += 32 * v.size() + 64;
    for (const auto& v : residue_psi_pool_) bits += 32 * v.size() + 64;
    return bits;
}

namespace {
void put_u32_pool(Serializer& out, const std::vector<std::vector<std::uint32_t>>& pool) {
    out.put_u64(pool.size());
    for (const auto& v : pool) out.put_u32_vector(v);
}
std::vector<std::vector<std::uint32_t>> get_u32_pool(Deserializer& in) {
    std::vector<std::vector<std::uint32_t>> pool(in.get_u64());
    for (auto& v : pool) v = in.get_u32_vector();
    return pool;
}
}  // namespace

void FSumStructure::save(Serializer& out) const {
    out.put_u32(g_);
    fcount_.save(out);
    out.put_u32_vector(fc_plain_);
    marking_.save(out);
    out.put_u64_vector(fsum_marked_);
    out.put_u64_vector(phi_marked_);
    out.put_u64_vector(fsum_prime_);
    out.put_u32_vector(hmd_prime_);
    out.put_u64(b_prime_.size());
    for (const auto& b : b_prime_) b.save(out);
    out.put_u32_vector(rec_prime_);
    out.put_u32_vector(rec_lowest_);
    out.put_u32_vector(rec_residue_);
    put_u32_pool(out, psi_pool_);
    put_u32_pool(out, residue_pos_pool_);
    put_u32_pool(out, residue_psi_pool_);
}

FSumStructure FSumStructure::load(Deserializer& in, const NavTree& tree) {
    FSumStructure s;
    s.g_ = in.get_u32();
    s.fcount_ = UnaryCounts::load(in);
    s.fc_plain_ = in.get_u32_vector();
    s.marking_ = MarkingScheme::load(in, tree);
    s.fsum_marked_ = in.get_u64_vector();
    s.phi_marked_ = in.get_u64_vector();
    s.fsum_prime_ = in.get_u64_vector();
    s.hmd_prime_ = in.get_u32_vector();
    s.b_prime_.resize(in.get_u64());
    for (auto& b : s.b_prime_) b = UnaryCounts::load(in);
    s.rec_prime_ = in.get_u32_vector();
    s.rec_lowest_ = in.get_u32_vector();
    s.rec_residue_ = in.get_u32_vector();
    s.psi_pool_ = get_u32_pool(in);
    s.residue_pos_pool_ = get_u32_pool(in);
    s.residue_psi_pool_ = get_u32_pool(in);
    return s;
}

}  // namespace pbwt
