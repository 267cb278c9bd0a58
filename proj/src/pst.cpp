#include "pbwt/pst.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace pbwt {

CircularView::CircularView(const CodedText& t, const Alphabet& a, Encoding enc)
    : t_(&t), a_(&a), enc_(enc), n_(t.size()) {
    const std::size_t n = n_;
    const std::uint32_t none = std::uint32_t(n + 1);
    prev_own_.assign(n, none);
    prev_comp_.assign(n, none);
    next_same_.assign(n, none);
    next_comp_.assign(n, none);
    if (n == 0) return;

    std::vector<std::size_t> last(a.sigma() + 1, 0);
    // backward distances, wrapping once past position 1
    for (std::size_t q = 1; q <= n; ++q) {
        code_t c = t[q];
        if (last[c]) prev_own_[q - 1] = std::uint32_t(q - last[c]);
        last[c] = q;
    }
    for (std::size_t q = 1; q <= n; ++q) {
        code_t c = t[q];
        if (prev_own_[q - 1] == none)
            prev_own_[q - 1] = std::uint32_t(q + n - last[c]);  // = n for unique symbols
    }
    // forward distances
    std::fill(last.begin(), last.end(), 0);
    for (std::size_t q = n; q >= 1; --q) {
        code_t c = t[q];
        if (last[c]) next_same_[q - 1] = std::uint32_t(last[c] - q);
        last[c] = q;
        if (q == 1) break;
    }
    for (std::size_t q = 1; q <= n; ++q) {
        code_t c = t[q];
        if (next_same_[q - 1] == none) next_same_[q - 1] = std::uint32_t(last[c] + n - q);
    }

    if (enc == Encoding::structural && a.has_pairing()) {
        std::fill(last.begin(), last.end(), 0);
        for (std::size_t q = 1; q <= n; ++q) {
            code_t c = t[q];
            code_t cc = a.is_p(c) ? a.complement(c) : 0;
            if (cc && last[cc]) prev_comp_[q - 1] = std::uint32_t(q - last[cc]);
            last[c] = q;
        }
        for (std::size_t q = 1; q <= n; ++q) {
            code_t c = t[q];
            code_t cc = a.is_p(c) ? a.complement(c) : 0;
            if (cc && prev_comp_[q - 1] == none && last[cc])
                prev_comp_[q - 1] = std::uint32_t(q + n - last[cc]);
        }
        std::fill(last.begin(), last.end(), 0);
        for (std::size_t q = n; q >= 1; --q) {
            code_t c = t[q];
            code_t cc = a.is_p(c) ? a.complement(c) : 0;
            if (cc && last[cc]) next_comp_[q - 1] = std::uint32_t(last[cc] - q);
            last[c] = q;
            if (q == 1) break;
        }
        for (std::size_t q = 1; q <= n; ++q) {
            code_t c = t[q];
            code_t cc = a.is_p(c) ? a.complement(c) : 0;
            if (cc && next_comp_[q - 1] == none && last[cc])
                next_comp_[q - 1] = std::uint32_t(last[cc] + n - q);
        }
    }

    zero_total_ = zero_count(1, n);
}

token_t CircularView::token(std::size_t p, std::size_t k) const {
    std::size_t q = wrap(p + k - 1);
    code_t c = (*t_)[q];
    if (!a_->is_p(c)) return static_token(c);
    std::size_t window = k - 1;
    std::uint32_t dp = prev_own_[q - 1], dm = prev_comp_[q - 1];
    bool own = dp <= window, comp = dm <= window;
    if (!own && !comp) return 0;
    if (!comp || (own && dp < dm)) return token_t(dp);
    return -token_t(dm);
}

int CircularView::compare(std::size_t p, std::size_t q) const {
    if (p == q) return 0;
    for (std::size_t k = 1; k <= n_; ++k) {
        token_t a = token(p, k), b = token(q, k);
        if (a != b) return a < b ? -1 : 1;
    }
    return 0;
}

std::size_t CircularView::lcp(std::size_t p, std::size_t q) const {
    if (p == q) return n_;
    std::size_t k = 1;
    while (k <= n_ && token(p, k) == token(q, k)) ++k;
    return k - 1;
}

std::uint32_t CircularView::zero_count(std::size_t p, std::size_t len) const {
    std::uint32_t cnt = 0;
    for (std::size_t k = 1; k <= len; ++k)
        if (token(p, k) == 0) ++cnt;
    return cnt;
}

namespace {

struct TempNode {
    std::uint32_t pathlen;
    std::int32_t parent = -1;
    std::uint32_t rep_suffix;  // a suffix whose encoding spells this node's path
    std::vector<std::int32_t> children;
};

struct TrieBuild {
    std::vector<TempNode> nodes;
    // builds the compacted trie of the encodings listed by `suffix_of_rank`,
    // already sorted, with consecutive lcps in `lcps` (lcps[i] for ranks i,i+1)
    TrieBuild(std::size_t n, const std::vector<std::uint32_t>& suffix_of_rank,
              const std::vector<std::uint32_t>& lcps, std::uint32_t full_len) {
        nodes.push_back({0, -1, suffix_of_rank.empty() ? 1u : suffix_of_rank[0], {}});
        std::vector<std::int32_t> stack{0};
        std::vector<std::uint32_t> stack_len{0};
        for (std::size_t i = 1; i <= n; ++i) {
            std::int32_t leaf = std::int32_t(nodes.size());
            nodes.push_back({full_len, -1, suffix_of_rank[i - 1], {}});
            if (i == 1) {
                attach(0, leaf);
                stack.push_back(leaf);
                stack_len.push_back(full_len);
                continue;
            }
            std::uint32_t l = lcps[i - 2];
            std::int32_t popped = -1;
            while (stack_len.back() > l) {
                popped = stack.back();
                stack.pop_back();
                stack_len.pop_back();
            }
            std::int32_t top = stack.back();
            if (stack_len.back() == l) {
                attach(top, leaf);
            } else {
                std::int32_t mid = std::int32_t(nodes.size());
                nodes.push_back({l, -1, suffix_of_rank[i - 1], {}});
                assert(popped >= 0 && nodes[std::size_t(top)].children.back() == popped);
                nodes[std::size_t(top)].children.back() = mid;
                nodes[std::size_t(mid)].parent = top;
                attach(mid, popped);
                attach(mid, leaf);
                stack.push_back(mid);
                stack_len.push_back(l);
            }
            stack.push_back(leaf);
            stack_len.push_back(full_len);
        }
    }
    void attach(std::int32_t p, std::int32_t c) {
        nodes[std::size_t(p)].children.push_back(c);
        nodes[std::size_t(c)].parent = p;
    }
};

struct FlatTrie {
    std::vector<std::uint32_t> parent, path_len, rep_suffix;
};

// preorder renumbering of the temp trie
FlatTrie flatten(const std::vector<TempNode>& nodes) {
    FlatTrie out;
    out.parent.reserve(nodes.size());
    std::vector<std::pair<std::int32_t, std::uint32_t>> dfs;  // node, preorder parent
    dfs.emplace_back(0, 0);
    while (!dfs.empty()) {
        auto [v, par] = dfs.back();
        dfs.pop_back();
        const TempNode& nd = nodes[std::size_t(v)];
        out.parent.push_back(par);
        out.path_len.push_back(nd.pathlen);
        out.rep_suffix.push_back(nd.rep_suffix);
        std::uint32_t my_pre = std::uint32_t(out.parent.size());
        for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it)
            dfs.emplace_back(*it, my_pre);
    }
    return out;
}

}  // namespace

PSuffixData build_psuffix_data(const CircularView& view, const BuildOptions& opt) {
    const std::size_t n = view.n();
    const Alphabet& a = view.alphabet();
    const CodedText& t = view.text();
    if (n == 0 || t[n] != a.terminator_code()) throw MissingTerminator();
    for (std::size_t q = 1; q < n; ++q)
        if (t[q] == a.terminator_code()) throw TerminatorMisplaced(q);

    PSuffixData out;
    out.psa.resize(n);
    std::iota(out.psa.begin(), out.psa.end(), 1);
    if (opt.materialize_encodings) {
        if (n > 65536) throw InputError("materialized build is limited to n <= 65536");
        std::vector<Tokens> enc(n);
        for (std::size_t p = 1; p <= n; ++p) {
            enc[p - 1].resize(n);
            for (std::size_t k = 1; k <= n; ++k) enc[p - 1][k - 1] = view.token(p, k);
        }
        std::sort(out.psa.begin(), out.psa.end(), [&](std::uint32_t x, std::uint32_t y) {
            return prev_compare(enc[x - 1], enc[y - 1]) < 0;
        });
    } else {
        std::sort(out.psa.begin(), out.psa.end(),
                  [&](std::uint32_t x, std::uint32_t y) { return view.compare(x, y) < 0; });
    }
    out.ipsa.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.ipsa[out.psa[i] - 1] = std::uint32_t(i + 1);

    std::vector<std::uint32_t> lcps(n >= 2 ? n - 1 : 0);
    for (std::size_t i = 2; i <= n; ++i)
        lcps[i - 2] = std::uint32_t(view.lcp(out.psa[i - 2], out.psa[i - 1]));

    TrieBuild tb(n, out.psa, lcps, std::uint32_t(n));
    FlatTrie flat = flatten(tb.nodes);
    out.tree = NavTree(flat.parent);
    out.path_len = std::move(flat.path_len);
    out.zero_total = view.zero_total();
    out.zero_depth.resize(out.path_len.size());
    for (std::size_t u = 0; u < out.path_len.size(); ++u) {
        if (out.path_len[u] == 0)
            out.zero_depth[u] = 0;
        else if (out.path_len[u] == n)
            out.zero_depth[u] = out.zero_total;
        else
            out.zero_depth[u] = view.zero_count(flat.rep_suffix[u], out.path_len[u]);
    }
    assert(out.tree.leaf_count() == n);
    return out;
}

MirrorTree build_mirror_tree(const CircularView& view, const PSuffixData& psd) {
    const std::size_t n = psd.n();
    std::vector<std::uint32_t> rev(n);
    for (std::size_t i = 0; i < n; ++i) rev[i] = psd.psa[n - 1 - i];
    std::vector<std::uint32_t> lcps(n >= 2 ? n - 1 : 0);
    for (std::size_t i = 2; i <= n; ++i)
        lcps[i - 2] = std::uint32_t(view.lcp(rev[i - 2], rev[i - 1]));
    TrieBuild tb(n, rev, lcps, std::uint32_t(n));
    FlatTrie flat = flatten(tb.nodes);
    MirrorTree out;
    out.tree = NavTree(flat.parent);
    out.path_len = std::move(flat.path_len);
    return out;
}

PBWTData build_pbwt(const CircularView& view, const PSuffixData& psd) {
    const std::size_t n = psd.n();
    const Alphabet& a = view.alphabet();
    const CodedText& t = view.text();
    PBWTData out;
    out.pbwt.resize(n);
    out.lastcol.resize(n);
    out.firstocc.assign(n, 0);
    std::vector<std::uint32_t> stamp(a.sigma_p() + 1, 0);
    std::uint32_t tick = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t p = psd.psa[i - 1];
        std::size_t q = p == 1 ? n : p - 1;
        code_t c = t[q];
        out.lastcol[i - 1] = c;
        if (!a.is_p(c)) {
            out.pbwt[i - 1] = c;
            continue;
        }
        std::uint32_t f = view.next_same(q);
        out.firstocc[i - 1] = f;
        ++tick;
        std::uint32_t distinct = 0;
        for (std::uint32_t k = 0; k < f; ++k) {
            code_t x = t[view.wrap(p + k)];
            if (a.is_p(x) && stamp[x] != tick) {
                stamp[x] = tick;
                ++distinct;
            }
        }
        out.pbwt[i - 1] = distinct;
    }
    return out;
}

SBWTData build_sbwt(const CircularView& view, const PSuffixData& psd) {
    const std::size_t n = psd.n();
    const Alphabet& a = view.alphabet();
    const CodedText& t = view.text();
    SBWTData out;
    out.sbwt.resize(n);
    out.lastcol.resize(n);
    out.fplus.assign(n, 0);
    out.fminus.assign(n, std::uint32_t(n + 1));
    std::vector<std::uint32_t> stamp(a.sigma() + 1, 0);
    std::uint32_t tick = 0;
    // distinct complement classes in t[p .. p+len-1] (circular)
    auto class_count = [&](std::size_t p, std::uint32_t len) {
        ++tick;
        std::uint32_t distinct = 0;
        for (std::uint32_t k = 0; k < len; ++k) {
            code_t x = t[view.wrap(p + k)];
            if (!a.is_p(x)) continue;
            code_t cc = a.complement(x);
            code_t cls = (cc && cc < x) ? cc : x;
            if (stamp[cls] != tick) {
                stamp[cls] = tick;
                ++distinct;
            }
        }
        return distinct;
    };
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t p = psd.psa[i - 1];
        std::size_t q = p == 1 ? n : p - 1;
        code_t c = t[q];
        out.lastcol[i - 1] = c;
        if (!a.is_p(c)) {
            out.sbwt[i - 1] = std::int32_t(c);
            continue;
        }
        std::uint32_t fp = view.next_same(q);
        std::uint32_t fm = view.next_comp(q);
        out.fplus[i - 1] = fp;
        out.fminus[i - 1] = fm;
        if (fp < fm)
            out.sbwt[i - 1] = std::int32_t(class_count(p, fp));
        else
            out.sbwt[i - 1] = -std::int32_t(class_count(p, fm));
    }
    return out;
}

}  // namespace pbwt
