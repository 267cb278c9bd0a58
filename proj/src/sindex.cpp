#include "pbwt/sindex.hpp"

#include <algorithm>
#include <cassert>

#include "pbwt/serialize.hpp"

namespace pbwt {

SIndex::SIndex(const CodedText& text, const Alphabet& a, const IndexOptions& opt)
    : alpha_(a), n_(text.size()) {
    CircularView view(text, a, Encoding::structural);
    PSuffixData psd = build_psuffix_data(view, {opt.materialize_encodings});
    SBWTData sb = build_sbwt(view, psd);
    const std::uint32_t m = psd.tree.node_count();
    const std::int32_t sp = std::int32_t(a.sigma_p());
    zero_total_ = psd.zero_total;

    if (opt.delta != 0)
        delta_ = opt.delta;
    else if (opt.delta_log_sigma) {
        std::uint32_t lg = ceil_log2(a.sigma());
        delta_ = std::max<std::uint32_t>(1, (ceil_log2(n_) + lg - 1) / std::max(1u, lg));
    } else
        delta_ = std::max<std::uint32_t>(1, ceil_log2(n_));

    {
        std::vector<std::uint32_t> shifted(n_);
        for (std::size_t i = 0; i < n_; ++i) shifted[i] = std::uint32_t(sb.sbwt[i] + sp);
        wt_ = WaveletTree(shifted, a.sigma() + a.sigma_p());
    }
    tree_ = std::move(psd.tree);
    wt_zd_ = WaveletTree(psd.zero_depth, zero_total_);

    // fs+ over the main trie (positive rows, f+), fs- over the mirror
    {
        std::vector<FSumStructure::Event> ev;
        for (std::size_t i = 1; i <= n_; ++i)
            if (sb.sbwt[i - 1] >= 1 && sb.sbwt[i - 1] <= sp)
                ev.push_back({std::uint32_t(i), sb.fplus[i - 1]});
        std::uint32_t gf = std::max<std::uint32_t>(2, ceil_log2(n_) / 16);
        fsp_ = FSumStructure(tree_, psd.path_len, ev, gf);

        MirrorTree mt = build_mirror_tree(view, psd);
        std::vector<FSumStructure::Event> evm;
        for (std::size_t i = 1; i <= n_; ++i)
            if (sb.sbwt[i - 1] < 0)
                evm.push_back({std::uint32_t(n_ + 1 - i), sb.fminus[i - 1]});
        std::sort(evm.begin(), evm.end(),
                  [](const auto& x, const auto& y) { return x.leaf < y.leaf; });
        fsm_ = FSumStructure(mt.tree, mt.path_len, evm, gf);
        mirror_tree_ = std::move(mt.tree);
    }

    // signed zeroNode landings, leading-character flags
    std::vector<std::uint32_t> ap_cnt(m, 0), am_cnt(m, 0);
    std::vector<std::vector<std::uint32_t>> zb_plus(m + 1), zb_minus(m + 1);
    std::vector<bool> lead0(n_, false);
    for (std::size_t i = 1; i <= n_; ++i) {
        std::int32_t v = sb.sbwt[i - 1];
        if (v > sp) continue;
        std::uint32_t c = std::uint32_t(v > 0 ? v : -v);
        std::uint32_t z = tree_.leaf_select(std::uint32_t(i));
        while (z != NavTree::root() && psd.zero_depth[tree_.parent(z) - 1] >= c)
            z = tree_.parent(z);
        std::uint32_t f = v > 0 ? sb.fplus[i - 1] : sb.fminus[i - 1];
        lead0[i - 1] = (f == psd.path_len[tree_.parent(z) - 1] + 1);
        if (v > 0) {
            ++ap_cnt[z - 1];
            zb_plus[z].push_back(std::uint32_t(i));
        } else {
            ++am_cnt[z - 1];
            zb_minus[z].push_back(std::uint32_t(i));
        }
    }
    {
        std::vector<std::uint64_t> t1(ap_cnt.begin(), ap_cnt.end());
        std::vector<std::uint64_t> t2(am_cnt.begin(), am_cnt.end());
        alpha_plus_ = UnaryCounts(t1);
        alpha_minus_ = UnaryCounts(t2);
    }
    lead_zero_ = RankSelectBits(lead0);

    {
        std::vector<std::uint64_t> pc(m, 0);
        for (std::uint32_t u = 2; u <= m; ++u) {
            std::uint32_t par = tree_.parent(u);
            std::size_t suf = psd.psa[tree_.lmost_leaf(u) - 1];
            token_t lead = view.token(suf, psd.path_len[par - 1] + 1);
            if (!is_static_token(lead)) ++pc[par - 1];
        }
        pcount_ = UnaryCounts(pc);
    }

    std::uint32_t g = std::max<std::uint32_t>(2, ceil_log2(a.sigma()));
    std::uint32_t gp =
        std::max<std::uint32_t>(2, ceil_log2(std::max<std::uint64_t>(2, ceil_log2(a.sigma()))));
    marks_g_ = MarkingScheme(tree_, g);
    marks_gp_ = MarkingScheme(tree_, gp);
    {
        std::vector<std::uint32_t> dvals;
        dvals.reserve(marks_g_.marked_count());
        for (std::uint32_t k = 1; k <= marks_g_.marked_count(); ++k)
            dvals.push_back(psd.zero_depth[marks_g_.marked_select(k) - 1]);
        wt_mark_zd_ = WaveletTree(dvals, zero_total_);
    }
    {
        delta_gp_plus_.assign(marks_gp_.marked_count(), 0);
        delta_gp_minus_.assign(marks_gp_.marked_count(), 0);
        for (std::uint32_t k = 1; k <= marks_gp_.marked_count(); ++k) {
            std::uint32_t mnode = marks_gp_.marked_select(k);
            if (mnode == NavTree::root() || marks_g_.is_marked(mnode)) continue;
            std::uint32_t lm = tree_.lmost_leaf(mnode), rm = tree_.rmost_leaf(mnode);
            std::uint32_t dp = 0, dm = 0;
            std::uint32_t x = mnode;
            while (!marks_g_.is_marked(tree_.parent(x))) {
                for (std::uint32_t lf : zb_plus[x])
                    if (lf < lm || lf > rm) ++dp;
                for (std::uint32_t lf : zb_minus[x])
                    if (lf < lm || lf > rm) ++dm;
                x = tree_.parent(x);
            }
            delta_gp_plus_[k - 1] = dp;
            delta_gp_minus_[k - 1] = dm;
        }
    }

    {
        std::vector<bool> sampled(n_, false);
        for (std::size_t i = 1; i <= n_; ++i)
            if ((psd.psa[i - 1] - 1) % delta_ == 0) sampled[i - 1] = true;
        ssa_vals_.clear();
        for (std::size_t i = 1; i <= n_; ++i)
            if (sampled[i - 1]) ssa_vals_.push_back(psd.psa[i - 1]);
        ssa_sampled_ = RankSelectBits(sampled);
        issa_vals_.clear();
        for (std::size_t j = 1; j <= n_; j += delta_) issa_vals_.push_back(psd.ipsa[j - 1]);
        issa_vals_.push_back(psd.ipsa[n_ - 1]);
    }
}

std::uint32_t SIndex::mark_zd(std::uint32_t marked_node) const {
    return wt_mark_zd_.access(marks_g_.marked_rank(marked_node));
}

std::uint32_t SIndex::lowest_marked_zero_ancestor(std::uint32_t leaf, std::uint32_t c) const {
    std::uint32_t u = marks_g_.lowest_marked_ancestor(tree_, leaf);
    if (mark_zd(u) < c) return u;
    std::size_t j = marks_g_.marked_rank(u);
    auto p = wt_mark_zd_.predecessor(j, c);
    assert(p.has_value());
    return tree_.lca(u, marks_g_.marked_select(std::uint32_t(*p)));
}

std::uint32_t SIndex::signed_beta(std::uint32_t node, std::uint32_t base, std::uint64_t ap,
                                  std::uint64_t am) const {
    const std::int64_t s = alpha_.sigma_p();
    std::size_t lo = tree_.lmost_leaf(node), hi = tree_.rmost_leaf(node);
    std::uint32_t beta = base;
    if (ap) {
        std::uint32_t v = wt_.range_next_val(lo, hi, std::int64_t(base) + s, std::size_t(ap));
        beta = std::max(beta, std::uint32_t(std::int64_t(v) - s));
    }
    if (am) {
        std::uint32_t v = wt_.range_prev_val(lo, hi, -std::int64_t(base) + s, std::size_t(am));
        beta = std::max(beta, std::uint32_t(s - std::int64_t(v)));
    }
    return beta;
}

std::uint32_t SIndex::zero_node_pm(std::size_t i, ZeroNodeVariant variant) const {
    std::int32_t v = sbwt_at(i);
    if (v > std::int32_t(alpha_.sigma_p())) throw NotPPreceded(i);
    std::uint32_t c = std::uint32_t(v > 0 ? v : -v);
    std::uint32_t leaf = tree_.leaf_select(std::uint32_t(i));

    if (variant == ZeroNodeVariant::compact) {
        auto pred = wt_zd_.predecessor(leaf, c);
        assert(pred.has_value());
        std::uint32_t u = tree_.lca(leaf, std::uint32_t(*pred));
        return tree_.level_ancestor(leaf, tree_.node_depth(u) + 1);
    }

    std::uint32_t w = lowest_marked_zero_ancestor(leaf, c);
    std::vector<std::uint32_t> path;
    for (std::uint32_t x = leaf; x != w; x = tree_.parent(x)) path.push_back(x);
    path.push_back(w);
    std::reverse(path.begin(), path.end());

    std::uint32_t beta1 =
        signed_beta(path[1], mark_zd(w), alpha_plus_.get(path[1]), alpha_minus_.get(path[1]));
    if (beta1 >= c) return path[1];

    std::size_t r_idx = path.size() - 1;
    for (std::size_t t = 1; t + 1 < path.size(); ++t)
        if (marks_g_.is_marked(path[t])) {
            r_idx = t;
            break;
        }
    std::vector<std::size_t> cands;
    for (std::size_t t = 2; t < r_idx; ++t)
        if (marks_gp_.is_marked(path[t])) cands.push_back(t);

    std::size_t start = 1;
    std::uint32_t base = beta1;
    if (!cands.empty()) {
        std::vector<std::uint64_t> ap_sum(path.size(), 0), am_sum(path.size(), 0);
        for (std::size_t t = 2; t < path.size(); ++t) {
            ap_sum[t] = ap_sum[t - 1] + alpha_plus_.get(path[t]);
            am_sum[t] = am_sum[t - 1] + alpha_minus_.get(path[t]);
        }
        auto probe = [&](std::size_t t) -> std::uint32_t {
            std::uint32_t k = std::uint32_t(marks_gp_.marked_rank(path[t]));
            std::uint64_t gp = ap_sum[t] - delta_gp_plus_[k - 1];
            std::uint64_t gm = am_sum[t] - delta_gp_minus_[k - 1];
            return signed_beta(path[t], beta1, gp, gm);
        };
        std::size_t lo = 0, hi = cands.size();
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (probe(cands[mid]) < c)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo > 0) {
            start = cands[lo - 1];
            base = probe(cands[lo - 1]);
        }
    }

    std::uint32_t beta = base;
    for (std::size_t t = start + 1; t < path.size(); ++t) {
        beta = signed_beta(path[t], beta, alpha_plus_.get(path[t]), alpha_minus_.get(path[t]));
        if (beta >= c) return path[t];
    }
    assert(false && "signed zeroNode walk must terminate");
    return path.back();
}

std::uint64_t SIndex::fs_minus_rev(std::uint32_t node) const {
    std::uint32_t lo = tree_.lmost_leaf(node), hi = tree_.rmost_leaf(node);
    std::uint32_t a = mirror_tree_.leaf_select(std::uint32_t(n_) + 1 - hi);
    std::uint32_t b = mirror_tree_.leaf_select(std::uint32_t(n_) + 1 - lo);
    return fsm_.fsum(mirror_tree_, mirror_tree_.lca(a, b));
}

std::size_t SIndex::slf(std::size_t i, ZeroNodeVariant v) const {
    if (i < 1 || i > n_) throw IndexOutOfRange("sLF out of range");
    const std::int64_t sp = alpha_.sigma_p();
    std::int32_t c = sbwt_at(i);
    if (c > sp) return 1 + rc(1, n_, -sp, c - 1) + rc(1, i - 1, c, c);

    std::uint32_t z = zero_node_pm(i, v);
    std::uint32_t par = tree_.parent(z);
    bool lead0 = lead_zero_.get(i);
    std::uint32_t x = lead0 ? par : z;
    std::size_t lx = tree_.lmost_leaf(x), rx = tree_.rmost_leaf(x);
    std::size_t lz = tree_.lmost_leaf(z), rz = tree_.rmost_leaf(z);

    std::size_t n1 = std::size_t(fsp_.fsum(tree_, x)) + rc(1, lx - 1, -sp, -1);
    std::size_t n3 = rc(rx + 1, n_, -sp, -1) - std::size_t(fs_minus_rev(x));
    std::size_t n2;
    if (c > 0)
        n2 = rc(lz, rz, c + 1, sp) + rc(lz, i, c, c) + rc(lz, rz, -sp, -1);
    else
        n2 = rc(lz, rz, c + 1, -1) + rc(lz, i, c, c);
    std::size_t n4 = 0, n5 = 0;
    if (lead0) {
        std::uint32_t u = tree_.child(par, std::uint32_t(pcount_.get(par)));
        std::size_t ru = tree_.rmost_leaf(u);
        if (c > 0) {
            n4 = rc(rz + 1, ru, c, sp) + rc(rz + 1, ru, -sp, -1);
            n5 = rc(lx, lz - 1, c, sp) + rc(lx, lz - 1, -sp, -1);
        } else {
            n4 = rc(rz + 1, ru, c + 1, -1);
            n5 = rc(lx, lz - 1, c + 1, -1);
        }
    }
    return n1 + n2 + n3 + n4 + n5;
}

SuffixRange SIndex::s_backward_search(const CodedText& pattern) const {
    const std::size_t plen = pattern.size();
    if (plen == 0) return {1, n_};
    PatternScan ps(pattern, alpha_);
    const std::int64_t sp = alpha_.sigma_p();

    SuffixRange r;
    std::uint32_t c = ps.codes[plen - 1];
    if (std::int64_t(c) > sp) {
        r.sp = 1 + rc(1, n_, -sp, std::int64_t(c) - 1);
        r.ep = rc(1, n_, -sp, c);
    } else {
        r.sp = 1;
        r.ep = rc(1, n_, -sp, sp);
    }
    for (std::size_t i = plen; i >= 2 && !r.empty(); --i) {
        c = ps.codes[i - 2];
        if (std::int64_t(c) > sp) {
            std::size_t below = rc(1, n_, -sp, std::int64_t(c) - 1);
            std::size_t spos = 1 + below + rc(1, r.sp - 1, c, c);
            std::size_t epos = below + rc(1, r.ep, c, c);
            r = {spos, epos};
            continue;
        }
        std::size_t fp = ps.next_occ[i - 2];       // first occurrence of c in P[i..]
        std::size_t fm = ps.next_comp_occ[i - 2];  // of its complement
        if (fp == 0 && fm == 0) {
            // Case 1: neither c nor its complement ahead
            std::uint32_t d = ps.distinct_class_suffix[i - 1];
            std::size_t size = rc(r.sp, r.ep, std::int64_t(d) + 1, sp) +
                               rc(r.sp, r.ep, -sp, -std::int64_t(d) - 1);
            if (size == 0) return {1, 0};
            std::uint32_t u = tree_.lca(tree_.leaf_select(std::uint32_t(r.sp)),
                                        tree_.leaf_select(std::uint32_t(r.ep)));
            std::size_t spos = 1 + std::size_t(fsp_.fsum(tree_, u)) +
                               rc(r.sp, r.ep, -std::int64_t(d), -1) + rc(1, r.sp - 1, -sp, -1) +
                               rc(r.ep + 1, n_, -sp, -1) - std::size_t(fs_minus_rev(u));
            r = {spos, spos + size - 1};
        } else {
            bool plus = fm == 0 || (fp != 0 && fp < fm);
            std::size_t j = plus ? fp : fm;
            std::uint32_t d = window_class_distinct(ps.codes, i, j);
            std::int64_t val = plus ? std::int64_t(d) : -std::int64_t(d);
            std::size_t size = rc(r.sp, r.ep, val, val);
            if (size == 0) return {1, 0};
            std::uint32_t shifted = std::uint32_t(val + sp);
            std::size_t imin = wt_.select(wt_.rank(r.sp - 1, shifted) + 1, shifted);
            std::size_t spos = slf(imin);
            r = {spos, spos + size - 1};
        }
    }
    return r.empty() ? SuffixRange{1, 0} : r;
}

std::uint32_t SIndex::window_class_distinct(const std::vector<std::uint32_t>& codes, std::size_t i,
                                            std::size_t j) const {
    std::vector<bool> seen(alpha_.sigma() + 1, false);
    std::uint32_t d = 0;
    for (std::size_t k = i; k <= j; ++k) {
        code_t cc = codes[k - 1];
        if (!alpha_.is_p(cc)) continue;
        code_t pc = alpha_.complement(cc);
        code_t cls = (pc && pc < cc) ? pc : cc;
        if (!seen[cls]) {
            seen[cls] = true;
            ++d;
        }
    }
    return d;
}

std::vector<std::size_t> SIndex::locate(const SuffixRange& range) const {
    std::vector<std::size_t> out;
    if (range.empty()) return out;
    out.reserve(range.size());
    for (std::size_t i = range.sp; i <= range.ep; ++i) out.push_back(ssa_at(i));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> SIndex::locate(const CodedText& pattern) const {
    return locate(s_backward_search(pattern));
}

std::size_t SIndex::ssa_at(std::size_t i) const {
    if (i < 1 || i > n_) throw IndexOutOfRange("sSA out of range");
    std::size_t k = 0, cur = i;
    while (!ssa_sampled_.get(cur)) {
        cur = slf(cur);
        ++k;
    }
    return ssa_vals_[ssa_sampled_.rank1(cur) - 1] + k;
}

std::size_t SIndex::issa_at(std::size_t j) const {
    if (j < 1 || j > n_) throw IndexOutOfRange("inverse sSA out of range");
    std::size_t block = (j - 1 + delta_ - 1) / delta_;
    std::size_t jp = 1 + block * delta_;
    std::size_t cur;
    if (jp > n_) {
        jp = n_;
        cur = issa_vals_.back();
    } else {
        cur = issa_vals_[block];
    }
    for (std::size_t s = jp; s > j; --s) cur = slf(cur);
    return cur;
}

StructureStats SIndex::stats() const {
    StructureStats s;
    s.bits.emplace_back("wt_sbwt", wt_.size_in_bits());
    s.bits.emplace_back("tree", tree_.size_in_bits());
    s.bits.emplace_back("wt_zerodepth", wt_zd_.size_in_bits());
    s.bits.emplace_back("fsum_plus", fsp_.size_in_bits());
    s.bits.emplace_back("mirror_tree", mirror_tree_.size_in_bits());
    s.bits.emplace_back("fsum_minus_rev", fsm_.size_in_bits());
    s.bits.emplace_back("leaf_lead", lead_zero_.size_in_bits());
    s.bits.emplace_back("pcount", pcount_.size_in_bits());
    s.bits.emplace_back("alpha_plus", alpha_plus_.size_in_bits());
    s.bits.emplace_back("alpha_minus", alpha_minus_.size_in_bits());
    s.bits.emplace_back("marks_g", marks_g_.size_in_bits());
    s.bits.emplace_back("wt_mark_zerodepth", wt_mark_zd_.size_in_bits());
    s.bits.emplace_back("marks_gprime", marks_gp_.size_in_bits());
    s.bits.emplace_back("delta_gprime",
                        32 * (delta_gp_plus_.size() + delta_gp_minus_.size()));
    s.bits.emplace_back("sampled_sa",
                        ssa_sampled_.size_in_bits() + 32 * (ssa_vals_.size() + issa_vals_.size()));
    return s;
}

void SIndex::save(Serializer& out) const {
    out.put_u64(n_);
    out.put_u32(delta_);
    out.put_u32(zero_total_);
    wt_.save(out);
    tree_.save(out);
    wt_zd_.save(out);
    fsp_.save(out);
    mirror_tree_.save(out);
    fsm_.save(out);
    lead_zero_.save(out);
    pcount_.save(out);
    alpha_plus_.save(out);
    alpha_minus_.save(out);
    marks_g_.save(out);
    wt_mark_zd_.save(out);
    marks_gp_.save(out);
    out.put_u32_vector(delta_gp_plus_);
    out.put_u32_vector(delta_gp_minus_);
    ssa_sampled_.save(out);
    out.put_u32_vector(ssa_vals_);
    out.put_u32_vector(issa_vals_);
}

SIndex SIndex::load(Deserializer& in, const Alphabet& a) {
    SIndex x;
    x.alpha_ = a;
    x.n_ = in.get_u64();
    x.delta_ = in.get_u32();
    x.zero_total_ = in.get_u32();
    x.wt_ = WaveletTree::load(in);
    x.tree_ = NavTree::load(in);
    x.wt_zd_ = WaveletTree::load(in);
    x.fsp_ = FSumStructure::load(in, x.tree_);
    x.mirror_tree_ = NavTree::load(in);
    x.fsm_ = FSumStructure::load(in, x.mirror_tree_);
    x.lead_zero_ = RankSelectBits::load(in);
    x.pcount_ = UnaryCounts::load(in);
    x.alpha_plus_ = UnaryCounts::load(in);
    x.alpha_minus_ = UnaryCounts::load(in);
    x.marks_g_ = MarkingScheme::load(in, x.tree_);
    x.wt_mark_zd_ = WaveletTree::load(in);
    x.marks_gp_ = MarkingScheme::load(in, x.tree_);
    x.delta_gp_plus_ = in.get_u32_vector();
    x.delta_gp_minus_ = in.get_u32_vector();
    x.ssa_sampled_ = RankSelectBits::load(in);
    x.ssa_vals_ = in.get_u32_vector();
    x.issa_vals_ = in.get_u32_vector();
    return x;
}

}  // namespace pbwt
