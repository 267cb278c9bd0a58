#include "pbwt/pindex.hpp"

#include <algorithm>
#include <cassert>

#include "pbwt/serialize.hpp"

namespace pbwt {

std::uint32_t ceil_log2(std::uint64_t x) {
    std::uint32_t b = 0;
    while ((std::uint64_t(1) << b) < x) ++b;
    return b;
}

PatternScan::PatternScan(const CodedText& p, const Alphabet& a) : codes(p.codes) {
    const std::size_t m = codes.size();
    next_occ.assign(m, 0);
    next_comp_occ.assign(m, 0);
    distinct_suffix.assign(m + 1, 0);
    distinct_class_suffix.assign(m + 1, 0);
    std::vector<std::uint32_t> last(a.sigma() + 1, 0);
    for (std::size_t k = m; k >= 1; --k) {
        code_t c = codes[k - 1];
        if (a.is_p(c)) {
            next_occ[k - 1] = last[c];
            code_t cc = a.complement(c);
            next_comp_occ[k - 1] = cc ? last[cc] : 0;
            last[c] = std::uint32_t(k);
        }
        if (k == 1) break;
    }
    std::vector<bool> seen(a.sigma() + 1, false), seen_cls(a.sigma() + 1, false);
    std::uint32_t d = 0, dc = 0;
    for (std::size_t k = m; k >= 1; --k) {
        code_t c = codes[k - 1];
        if (a.is_p(c)) {
            if (!seen[c]) {
                seen[c] = true;
                ++d;
            }
            code_t cc = a.complement(c);
            code_t cls = (cc && cc < c) ? cc : c;
            if (!seen_cls[cls]) {
                seen_cls[cls] = true;
                ++dc;
            }
        }
        distinct_suffix[k - 1] = d;
        distinct_class_suffix[k - 1] = dc;
        if (k == 1) break;
    }
}

namespace {

// distinct p codes (or classes) in codes[i-1 .. j-1]
std::uint32_t window_distinct(const std::vector<std::uint32_t>& codes, const Alphabet& a,
                              std::size_t i, std::size_t j, bool classes) {
    std::vector<bool> seen(a.sigma() + 1, false);
    std::uint32_t d = 0;
    for (std::size_t k = i; k <= j; ++k) {
        code_t c = codes[k - 1];
        if (!a.is_p(c)) continue;
        code_t key = c;
        if (classes) {
            code_t cc = a.complement(c);
            if (cc && cc < c) key = cc;
        }
        if (!seen[key]) {
            seen[key] = true;
            ++d;
        }
    }
    return d;
}

}  // namespace

PIndex::PIndex(const CodedText& text, const Alphabet& a, const IndexOptions& opt)
    : alpha_(a), n_(text.size()) {
    CircularView view(text, a, Encoding::prev);
    PSuffixData psd = build_psuffix_data(view, {opt.materialize_encodings});
    PBWTData pb = build_pbwt(view, psd);
    const std::uint32_t m = psd.tree.node_count();
    zero_total_ = psd.zero_total;

    if (opt.delta != 0)
        delta_ = opt.delta;
    else if (opt.delta_log_sigma) {
        std::uint32_t lg = ceil_log2(a.sigma());
        delta_ = std::max<std::uint32_t>(1, (ceil_log2(n_) + lg - 1) / std::max(1u, lg));
    } else
        delta_ = std::max<std::uint32_t>(1, ceil_log2(n_));

    wt_ = WaveletTree(pb.pbwt, a.sigma(), 1);
    tree_ = std::move(psd.tree);
    wt_zd_ = WaveletTree(psd.zero_depth, zero_total_);

    std::vector<FSumStructure::Event> events;
    for (std::size_t i = 1; i <= n_; ++i)
        if (a.is_p(pb.lastcol[i - 1]))
            events.push_back({std::uint32_t(i), pb.firstocc[i - 1]});
    std::uint32_t gf = std::max<std::uint32_t>(2, ceil_log2(n_) / 16);
    fsum_ = FSumStructure(tree_, psd.path_len, events, gf);

    // zeroNode per p-preceded leaf (upward walk on zeroDepth): alpha counts,
    // landing buckets and the leading-character flag
    std::vector<std::uint32_t> alpha_cnt(m, 0);
    std::vector<std::vector<std::uint32_t>> zbucket(m + 1);
    std::vector<bool> lead0(n_, false);
    for (const auto& e : events) {
        std::uint32_t c = pb.pbwt[e.leaf - 1];
        std::uint32_t z = tree_.leaf_select(e.leaf);
        while (z != NavTree::root() && psd.zero_depth[tree_.parent(z) - 1] >= c)
            z = tree_.parent(z);
        ++alpha_cnt[z - 1];
        zbucket[z].push_back(e.leaf);
        lead0[e.leaf - 1] = (e.f == psd.path_len[tree_.parent(z) - 1] + 1);
    }
    {
        std::vector<std::uint64_t> tmp(alpha_cnt.begin(), alpha_cnt.end());
        alpha_counts_ = UnaryCounts(tmp);
    }
    lead_zero_ = RankSelectBits(lead0);

    // pcount: children whose leading edge token is an integer
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
    std::uint32_t gp = std::max<std::uint32_t>(2, ceil_log2(std::max<std::uint64_t>(2, ceil_log2(a.sigma()))));
    marks_g_ = MarkingScheme(tree_, g);
    marks_gp_ = MarkingScheme(tree_, gp);

    {
        std::vector<std::uint32_t> dvals;
        dvals.reserve(marks_g_.marked_count());
        for (std::uint32_t k = 1; k <= marks_g_.marked_count(); ++k)
            dvals.push_back(psd.zero_depth[marks_g_.marked_select(k) - 1]);
        wt_mark_zd_ = WaveletTree(dvals, zero_total_);
    }

    // delta values per g'-marked node, relative to the child of its lowest
    // g-marked proper ancestor
    {
        delta_gp_.assign(marks_gp_.marked_count(), 0);
        for (std::uint32_t k = 1; k <= marks_gp_.marked_count(); ++k) {
            std::uint32_t mnode = marks_gp_.marked_select(k);
            if (mnode == NavTree::root() || marks_g_.is_marked(mnode)) continue;
            std::uint32_t lm = tree_.lmost_leaf(mnode), rm = tree_.rmost_leaf(mnode);
            std::uint32_t d = 0;
            // climb from mnode to (exclusive) the child of the g-marked ancestor
            std::uint32_t x = mnode;
            while (!marks_g_.is_marked(tree_.parent(x))) {
                for (std::uint32_t lf : zbucket[x])
                    if (lf < lm || lf > rm) ++d;
                x = tree_.parent(x);
            }
            // x is now the child of the g-marked ancestor (u_2); its own alpha
            // entries are excluded from gamma, hence not part of delta either
            delta_gp_[k - 1] = d;
        }
    }

    // value-sampled pSA and position-sampled inverse
    {
        std::vector<bool> sampled(n_, false);
        std::vector<std::uint32_t> vals;
        for (std::size_t i = 1; i <= n_; ++i)
            if ((psd.psa[i - 1] - 1) % delta_ == 0) sampled[i - 1] = true;
        for (std::size_t i = 1; i <= n_; ++i)
            if (sampled[i - 1]) vals.push_back(psd.psa[i - 1]);
        psa_sampled_ = RankSelectBits(sampled);
        psa_vals_ = std::move(vals);
        ipsa_vals_.clear();
        for (std::size_t j = 1; j <= n_; j += delta_) ipsa_vals_.push_back(psd.ipsa[j - 1]);
        ipsa_vals_.push_back(psd.ipsa[n_ - 1]);
    }
}

std::uint32_t PIndex::mark_zd(std::uint32_t marked_node) const {
    return wt_mark_zd_.access(marks_g_.marked_rank(marked_node));
}

std::uint32_t PIndex::zero_node_compact(std::size_t i) const {
    std::uint32_t c = wt_.access(i);
    if (c > alphabet().sigma_p()) throw NotPPreceded(i);
    std::uint32_t leaf = tree_.leaf_select(std::uint32_t(i));
    auto v = wt_zd_.predecessor(leaf, c);
    assert(v.has_value());
    std::uint32_t u = tree_.lca(leaf, std::uint32_t(*v));
    return tree_.level_ancestor(leaf, tree_.node_depth(u) + 1);
}

std::uint32_t PIndex::lowest_marked_zero_ancestor(std::uint32_t leaf, std::uint32_t c) const {
    std::uint32_t u = marks_g_.lowest_marked_ancestor(tree_, leaf);
    if (mark_zd(u) < c) return u;
    std::size_t j = marks_g_.marked_rank(u);
    auto p = wt_mark_zd_.predecessor(j, c);
    assert(p.has_value());
    return tree_.lca(u, marks_g_.marked_select(std::uint32_t(*p)));
}

std::uint32_t PIndex::zero_node_succinct(std::size_t i) const {
    std::uint32_t c = wt_.access(i);
    if (c > alphabet().sigma_p()) throw NotPPreceded(i);
    std::uint32_t leaf = tree_.leaf_select(std::uint32_t(i));
    std::uint32_t w = lowest_marked_zero_ancestor(leaf, c);

    std::vector<std::uint32_t> path;  // w = path[0] ... leaf
    for (std::uint32_t x = leaf; x != w; x = tree_.parent(x)) path.push_back(x);
    path.push_back(w);
    std::reverse(path.begin(), path.end());

    auto next_val = [&](std::uint32_t node, std::uint32_t base, std::uint64_t k) {
        return wt_.range_next_val(tree_.lmost_leaf(node), tree_.rmost_leaf(node), base,
                                  std::size_t(k));
    };

    std::uint64_t a1 = alpha_counts_.get(path[1]);
    std::uint32_t beta1 = a1 ? next_val(path[1], mark_zd(w), a1) : mark_zd(w);
    if (beta1 >= c) return path[1];

    std::size_t r_idx = path.size() - 1;
    for (std::size_t t = 1; t + 1 < path.size(); ++t)
        if (marks_g_.is_marked(path[t])) {
            r_idx = t;
            break;
        }

    // binary search the g'-marked nodes strictly inside (path[1], path[r_idx])
    std::vector<std::size_t> cands;
    for (std::size_t t = 2; t < r_idx; ++t)
        if (marks_gp_.is_marked(path[t])) cands.push_back(t);

    std::size_t start = 1;
    std::uint32_t base = beta1;
    if (!cands.empty()) {
        std::vector<std::uint64_t> asum(path.size(), 0);  // sum of alpha over path[2..t]
        for (std::size_t t = 2; t < path.size(); ++t)
            asum[t] = asum[t - 1] + alpha_counts_.get(path[t]);
        auto probe = [&](std::size_t t) -> std::uint32_t {
            std::uint64_t gamma = asum[t] - delta_gp_[marks_gp_.marked_rank(path[t]) - 1];
            return gamma ? next_val(path[t], beta1, gamma) : beta1;
        };
        std::size_t lo = 0, hi = cands.size();  // find rightmost with beta < c
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
        std::uint64_t av = alpha_counts_.get(path[t]);
        if (av) beta = next_val(path[t], beta, av);
        if (beta >= c) return path[t];
    }
    assert(false && "zeroNode walk must terminate at the leaf");
    return path.back();
}

std::size_t PIndex::plf_static(std::size_t i, std::uint32_t c) const {
    return 1 + wt_.range_count(1, n_, 1, std::int64_t(c) - 1) + wt_.range_count(1, i - 1, c, c);
}

std::size_t PIndex::plf(std::size_t i, ZeroNodeVariant v) const {
    if (i < 1 || i > n_) throw IndexOutOfRange("pLF out of range");
    std::uint32_t c = wt_.access(i);
    if (c > alphabet().sigma_p()) return plf_static(i, c);

    std::uint32_t z = v == ZeroNodeVariant::compact ? zero_node_compact(i) : zero_node_succinct(i);
    std::uint32_t par = tree_.parent(z);
    std::uint64_t n1 = fsum_.fsum(tree_, z);
    std::size_t lz = tree_.lmost_leaf(z), rz = tree_.rmost_leaf(z);
    std::size_t n2 = wt_.range_count(lz, rz, c + 1, alphabet().sigma_p()) +
                     wt_.range_count(lz, i, c, c);
    std::size_t n4 = 0;
    if (lead_zero_.get(i)) {
        std::uint32_t u = tree_.child(par, std::uint32_t(pcount_.get(par)));
        n4 = wt_.range_count(rz + 1, tree_.rmost_leaf(u), c, alphabet().sigma_p());
    }
    return std::size_t(n1) + n2 + n4;
}

SuffixRange PIndex::backward_search(const CodedText& pattern) const {
    const std::size_t plen = pattern.size();
    if (plen == 0) return {1, n_};
    PatternScan ps(pattern, alpha_);
    const std::uint32_t sp_codes = alphabet().sigma_p();

    SuffixRange r;
    std::uint32_t c = ps.codes[plen - 1];
    if (c > sp_codes) {
        r.sp = 1 + wt_.range_count(1, n_, 1, std::int64_t(c) - 1);
        r.ep = wt_.range_count(1, n_, 1, c);
    } else {
        r.sp = 1;
        r.ep = wt_.range_count(1, n_, 1, sp_codes);
    }
    for (std::size_t i = plen; i >= 2 && !r.empty(); --i) {
        c = ps.codes[i - 2];
        if (c > sp_codes) {
            std::size_t below = wt_.range_count(1, n_, 1, std::int64_t(c) - 1);
            std::size_t sp = 1 + below + wt_.range_count(1, r.sp - 1, c, c);
            std::size_t ep = below + wt_.range_count(1, r.ep, c, c);
            r = {sp, ep};
        } else if (ps.next_occ[i - 2] == 0) {
            // c does not appear in the processed suffix
            std::uint32_t d = ps.distinct_suffix[i - 1];
            std::size_t size = wt_.range_count(r.sp, r.ep, d + 1, sp_codes);
            if (size == 0) return {1, 0};
            std::uint32_t u = tree_.lca(tree_.leaf_select(std::uint32_t(r.sp)),
                                        tree_.leaf_select(std::uint32_t(r.ep)));
            std::size_t sp = 1 + std::size_t(fsum_.fsum(tree_, u));
            r = {sp, sp + size - 1};
        } else {
            std::size_t j = ps.next_occ[i - 2];  // first occurrence of c in P[i..]
            std::uint32_t d = window_distinct(ps.codes, alpha_, i, j, false);
            std::size_t size = wt_.range_count(r.sp, r.ep, d, d);
            if (size == 0) return {1, 0};
            std::size_t imin = wt_.select(wt_.rank(r.sp - 1, d) + 1, d);
            std::size_t sp = plf(imin);
            r = {sp, sp + size - 1};
        }
    }
    return r.empty() ? SuffixRange{1, 0} : r;
}

std::vector<std::size_t> PIndex::locate(const SuffixRange& range) const {
    std::vector<std::size_t> out;
    if (range.empty()) return out;
    out.reserve(range.size());
    for (std::size_t i = range.sp; i <= range.ep; ++i) out.push_back(psa_at(i));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> PIndex::locate(const CodedText& pattern) const {
    return locate(backward_search(pattern));
}

std::size_t PIndex::psa_at(std::size_t i) const {
    if (i < 1 || i > n_) throw IndexOutOfRange("pSA out of range");
    std::size_t k = 0, cur = i;
    while (!psa_sampled_.get(cur)) {
        cur = plf(cur);
        ++k;
    }
    return psa_vals_[psa_sampled_.rank1(cur) - 1] + k;
}

std::size_t PIndex::ipsa_at(std::size_t j) const {
    if (j < 1 || j > n_) throw IndexOutOfRange("inverse pSA out of range");
    std::size_t block = (j - 1 + delta_ - 1) / delta_;  // smallest sampled position >= j
    std::size_t jp = 1 + block * delta_;
    std::size_t cur;
    if (jp > n_) {
        jp = n_;
        cur = ipsa_vals_.back();
    } else {
        cur = ipsa_vals_[block];
    }
    for (std::size_t s = jp; s > j; --s) cur = plf(cur);
    return cur;
}

Tokens PIndex::extract(std::size_t x, std::size_t y) const {
    if (x < 1 || y > n_ || x > y) throw IndexOutOfRange("extract range out of bounds");
    const std::size_t d = y - x + 1;
    std::size_t i = (y == n_) ? ipsa_at(1) : ipsa_at(y + 1);
    std::vector<std::uint32_t> enc(d);
    for (std::size_t k = d; k >= 1; --k) {
        enc[k - 1] = wt_.access(i);
        if (k > 1) i = plf(i);
    }
    // decode the p-characters right to left; names only need to be distinct
    const std::uint32_t sp_codes = alphabet().sigma_p();
    std::vector<std::pair<std::size_t, std::uint32_t>> active;  // (nearest pos >= k, id) ascending
    std::uint32_t fresh = 0;
    std::vector<std::uint32_t> ids(d, 0);
    for (std::size_t k = d; k >= 1; --k) {
        std::uint32_t v = enc[k - 1];
        if (v <= sp_codes) {
            std::uint32_t id;
            if (v > active.size()) {
                id = ++fresh;
            } else {
                id = active[v - 1].second;
                active.erase(active.begin() + std::ptrdiff_t(v - 1));
            }
            active.insert(active.begin(), {k, id});
            ids[k - 1] = id;
        }
        if (k == 1) break;
    }
    // prev-encode the reconstructed string
    Tokens out(d);
    std::vector<std::size_t> last(fresh + 1, 0);
    for (std::size_t k = 1; k <= d; ++k) {
        if (enc[k - 1] > sp_codes) {
            out[k - 1] = static_token(enc[k - 1]);
        } else {
            std::uint32_t id = ids[k - 1];
            out[k - 1] = last[id] ? token_t(k - last[id]) : 0;
            last[id] = k;
        }
    }
    return out;
}

StructureStats PIndex::stats() const {
    StructureStats s;
    s.bits.emplace_back("wt_pbwt", wt_.size_in_bits());
    s.bits.emplace_back("tree", tree_.size_in_bits());
    s.bits.emplace_back("wt_zerodepth", wt_zd_.size_in_bits());
    s.bits.emplace_back("fsum", fsum_.size_in_bits());
    s.bits.emplace_back("leaf_lead", lead_zero_.size_in_bits());
    s.bits.emplace_back("pcount", pcount_.size_in_bits());
    s.bits.emplace_back("alpha", alpha_counts_.size_in_bits());
    s.bits.emplace_back("marks_g", marks_g_.size_in_bits());
    s.bits.emplace_back("wt_mark_zerodepth", wt_mark_zd_.size_in_bits());
    s.bits.emplace_back("marks_gprime", marks_gp_.size_in_bits());
    s.bits.emplace_back("delta_gprime", 32 * delta_gp_.size());
    s.bits.emplace_back("sampled_sa",
                        psa_sampled_.size_in_bits() + 32 * (psa_vals_.size() + ipsa_vals_.size()));
    return s;
}

void PIndex::save(Serializer& out) const {
    out.put_u64(n_);
    out.put_u32(delta_);
    out.put_u32(zero_total_);
    wt_.save(out);
    tree_.save(out);
    wt_zd_.save(out);
    fsum_.save(out);
    lead_zero_.save(out);
    pcount_.save(out);
    alpha_counts_.save(out);
    marks_g_.save(out);
    wt_mark_zd_.save(out);
    marks_gp_.save(out);
    out.put_u32_vector(delta_gp_);
    psa_sampled_.save(out);
    out.put_u32_vector(psa_vals_);
    out.put_u32_vector(ipsa_vals_);
}

PIndex PIndex::load(Deserializer& in, const Alphabet& a) {
    PIndex x;
    x.alpha_ = a;
    x.n_ = in.get_u64();
    x.delta_ = in.get_u32();
    x.zero_total_ = in.get_u32();
    x.wt_ = WaveletTree::load(in);
    x.tree_ = NavTree::load(in);
    x.wt_zd_ = WaveletTree::load(in);
    x.fsum_ = FSumStructure::load(in, x.tree_);
    x.lead_zero_ = RankSelectBits::load(in);
    x.pcount_ = UnaryCounts::load(in);
    x.alpha_counts_ = UnaryCounts::load(in);
    x.marks_g_ = MarkingScheme::load(in, x.tree_);
    x.wt_mark_zd_ = WaveletTree::load(in);
    x.marks_gp_ = MarkingScheme::load(in, x.tree_);
    x.delta_gp_ = in.get_u32_vector();
    x.psa_sampled_ = RankSelectBits::load(in);
    x.psa_vals_ = in.get_u32_vector();
    x.ipsa_vals_ = in.get_u32_vector();
    return x;
}

}  // namespace pbwt
