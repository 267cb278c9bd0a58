#include "oracles.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace pbwt::oracle {

Row prev_of(const std::vector<code_t>& s, const Alphabet& a) {
    Row out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!a.is_p(s[i])) {
            out[i] = kStaticBase + s[i];
            continue;
        }
        out[i] = 0;
        for (std::size_t j = i; j >= 1; --j)
            if (s[j - 1] == s[i]) {
                out[i] = std::int64_t(i - (j - 1));
                break;
            }
    }
    return out;
}

Row compl_of(const std::vector<code_t>& s, const Alphabet& a) {
    Row out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!a.is_p(s[i])) {
            out[i] = kStaticBase + s[i];
            continue;
        }
        std::int64_t jp = -1, jm = -1;
        code_t cc = a.complement(s[i]);
        for (std::size_t j = i; j >= 1; --j) {
            std::int64_t pos = std::int64_t(j) - 1;
            if (jp < 0 && s[j - 1] == s[i]) jp = pos;
            if (jm < 0 && cc != 0 && s[j - 1] == cc) jm = pos;
        }
        if (jp < 0 && jm < 0)
            out[i] = 0;
        else if (jp > jm)
            out[i] = std::int64_t(i) - jp;
        else
            out[i] = -(std::int64_t(i) - jm);
    }
    return out;
}

std::vector<code_t> circular_row(const CodedText& t, std::size_t start) {
    std::vector<code_t> row;
    row.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) row.push_back(t[(start - 1 + k) % t.size() + 1]);
    return row;
}

Context::Context(const CodedText& t, const Alphabet& a, bool structural_mode)
    : text(t), alpha(a), structural(structural_mode) {
    assert(t.size() <= kMaxN);
    rows.resize(t.size());
    for (std::size_t p = 1; p <= t.size(); ++p) {
        auto raw = circular_row(t, p);
        rows[p - 1] = structural ? compl_of(raw, a) : prev_of(raw, a);
    }
}

std::vector<std::uint32_t> naive_sa(const Context& c) {
    std::vector<std::uint32_t> sa(c.n());
    std::iota(sa.begin(), sa.end(), 1);
    std::sort(sa.begin(), sa.end(), [&](std::uint32_t x, std::uint32_t y) {
        return c.rows[x - 1] < c.rows[y - 1];
    });
    return sa;
}

std::vector<std::uint32_t> naive_isa(const std::vector<std::uint32_t>& sa) {
    std::vector<std::uint32_t> isa(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) isa[sa[i] - 1] = std::uint32_t(i + 1);
    return isa;
}

std::vector<std::uint32_t> naive_lf(const Context& c) {
    auto sa = naive_sa(c);
    auto isa = naive_isa(sa);
    std::vector<std::uint32_t> lf(c.n());
    for (std::size_t i = 0; i < c.n(); ++i) {
        std::size_t prev = sa[i] == 1 ? c.n() : sa[i] - 1;
        lf[i] = isa[prev - 1];
    }
    return lf;
}

std::vector<NaiveBwtRow> naive_bwt(const Context& c) {
    auto sa = naive_sa(c);
    const std::size_t n = c.n();
    std::vector<NaiveBwtRow> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = circular_row(c.text, sa[i]);
        code_t L = row[n - 1];
        out[i].lastcol = L;
        out[i].f = out[i].fplus = out[i].fminus = 0;
        if (!c.alpha.is_p(L)) {
            out[i].value = std::int32_t(L);
            continue;
        }
        std::uint32_t fp = 0, fm = 0;
        code_t cc = c.alpha.complement(L);
        for (std::size_t k = 0; k < n && (fp == 0 || (cc && fm == 0)); ++k) {
            if (fp == 0 && row[k] == L) fp = std::uint32_t(k + 1);
            if (fm == 0 && cc && row[k] == cc) fm = std::uint32_t(k + 1);
        }
        out[i].fplus = fp;
        out[i].fminus = fm ? fm : std::uint32_t(n + 1);
        if (!c.structural) {
            out[i].f = fp;
            std::vector<bool> seen(c.alpha.sigma() + 1, false);
            std::int32_t d = 0;
            for (std::size_t k = 0; k < fp; ++k)
                if (c.alpha.is_p(row[k]) && !seen[row[k]]) seen[row[k]] = true, ++d;
            out[i].value = d;
        } else {
            bool plus = out[i].fplus < out[i].fminus;
            std::uint32_t f = plus ? out[i].fplus : out[i].fminus;
            out[i].f = f;
            std::vector<bool> seen(c.alpha.sigma() + 1, false);
            std::int32_t d = 0;
            for (std::size_t k = 0; k < f; ++k) {
                code_t x = row[k];
                if (!c.alpha.is_p(x)) continue;
                code_t xc = c.alpha.complement(x);
                code_t cls = (xc && xc < x) ? xc : x;
                if (!seen[cls]) seen[cls] = true, ++d;
            }
            out[i].value = plus ? d : -d;
        }
    }
    return out;
}

namespace {

std::uint32_t lcp_rows(const Row& a, const Row& b) {
    std::uint32_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
}

struct TreeBuilder {
    const Context& c;
    const std::vector<std::uint32_t>& sa;
    std::vector<std::uint32_t> lcp;  // lcp[i]: rows sa[i] and sa[i+1], 0-based
    NaiveTree t;

    // recursive interval construction of the compacted trie
    std::uint32_t make(std::uint32_t lo, std::uint32_t hi, std::uint32_t parent) {
        std::uint32_t id = std::uint32_t(t.nodes.size() + 1);
        t.nodes.emplace_back();
        t.nodes[id - 1].parent = parent;
        if (lo == hi) {
            t.nodes[id - 1].path_len = std::uint32_t(c.n());
            t.nodes[id - 1].lmost = t.nodes[id - 1].rmost = lo;
            t.nodes[id - 1].end = id;
            std::uint32_t zd = 0;
            for (auto tok : c.rows[sa[lo - 1] - 1])
                if (tok == 0) ++zd;
            t.nodes[id - 1].zero_depth = zd;
            if (t.leaf_node.size() < lo) t.leaf_node.resize(lo);
            t.leaf_node[lo - 1] = id;
            return id;
        }
        std::uint32_t d = ~0u;
        for (std::uint32_t i = lo; i < hi; ++i) d = std::min(d, lcp[i - 1]);
        t.nodes[id - 1].path_len = d;
        std::uint32_t zd = 0;
        for (std::uint32_t k = 0; k < d; ++k)
            if (c.rows[sa[lo - 1] - 1][k] == 0) ++zd;
        t.nodes[id - 1].zero_depth = zd;
        std::uint32_t start = lo;
        for (std::uint32_t i = lo; i <= hi; ++i) {
            if (i == hi || lcp[i - 1] == d) {
                std::uint32_t ch = make(start, i, id);
                t.nodes[id - 1].children.push_back(ch);
                start = i + 1;
            }
        }
        t.nodes[id - 1].lmost = lo;
        t.nodes[id - 1].rmost = hi;
        t.nodes[id - 1].end = std::uint32_t(t.nodes.size());
        return id;
    }
};

}  // namespace

NaiveTree naive_tree(const Context& c, const std::vector<std::uint32_t>& sa) {
    TreeBuilder b{c, sa, {}, {}};
    b.lcp.resize(c.n() ? c.n() - 1 : 0);
    for (std::size_t i = 0; i + 1 < c.n(); ++i)
        b.lcp[i] = lcp_rows(c.rows[sa[i] - 1], c.rows[sa[i + 1] - 1]);
    b.t.leaf_node.resize(c.n());
    if (c.n() == 1) {
        // single suffix: root plus one leaf
        b.t.nodes.emplace_back();
        b.t.nodes[0].path_len = 0;
        b.t.nodes[0].lmost = b.t.nodes[0].rmost = 1;
        b.t.nodes[0].end = 2;
        b.make(1, 1, 1);
        b.t.nodes[0].children.push_back(2);
        return b.t;
    }
    b.make(1, std::uint32_t(c.n()), 0);
    return b.t;
}

std::vector<std::uint64_t> naive_fcount(
    const NaiveTree& t, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& events) {
    std::vector<std::uint64_t> fc(t.nodes.size(), 0);
    for (auto [leaf, f] : events) {
        std::uint32_t x = t.leaf_node[leaf - 1];
        while (x != 1) {
            std::uint32_t par = t.nodes[x - 1].parent;
            if (t.nodes[par - 1].path_len + 2 <= f && f <= t.nodes[x - 1].path_len + 1) {
                ++fc[x - 1];
                break;
            }
            x = par;
        }
    }
    return fc;
}

std::vector<std::uint64_t> naive_fsum(const NaiveTree& t, const std::vector<std::uint64_t>& fc) {
    std::vector<std::uint64_t> fs(t.nodes.size(), 0);
    for (std::uint32_t x = 1; x <= t.nodes.size(); ++x) {
        std::uint64_t s = 0;
        for (std::uint32_t y = 1; y < x; ++y)
            if (!t.is_ancestor(y, x)) s += fc[y - 1];
        fs[x - 1] = s;
    }
    return fs;
}

std::uint32_t naive_zero_node(const NaiveTree& t, std::uint32_t leaf, std::uint32_t bound) {
    // highest node on the root path with zeroDepth >= bound
    std::vector<std::uint32_t> path;
    for (std::uint32_t x = t.leaf_node[leaf - 1]; x != 0; x = t.nodes[x - 1].parent)
        path.push_back(x);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        if (t.nodes[*it - 1].zero_depth >= bound) return *it;
    return 0;
}

std::vector<std::size_t> naive_pmatch(const CodedText& t, const CodedText& p, const Alphabet& a) {
    std::vector<std::size_t> hits;
    if (p.size() == 0 || p.size() > t.size()) return hits;
    std::vector<code_t> pat(p.codes);
    Row pe = prev_of(pat, a);
    for (std::size_t j = 1; j + p.size() - 1 <= t.size(); ++j) {
        std::vector<code_t> win(t.codes.begin() + std::ptrdiff_t(j - 1),
                                t.codes.begin() + std::ptrdiff_t(j - 1 + p.size()));
        if (prev_of(win, a) == pe) hits.push_back(j);
    }
    return hits;
}

std::vector<std::size_t> naive_smatch(const CodedText& t, const CodedText& p, const Alphabet& a) {
    std::vector<std::size_t> hits;
    if (p.size() == 0 || p.size() > t.size()) return hits;
    std::vector<code_t> pat(p.codes);
    Row pe = compl_of(pat, a);
    for (std::size_t j = 1; j + p.size() - 1 <= t.size(); ++j) {
        std::vector<code_t> win(t.codes.begin() + std::ptrdiff_t(j - 1),
                                t.codes.begin() + std::ptrdiff_t(j - 1 + p.size()));
        if (compl_of(win, a) == pe) hits.push_back(j);
    }
    return hits;
}

std::vector<std::pair<std::size_t, std::size_t>> naive_dict_scan(
    const std::vector<CodedText>& patterns, const CodedText& text, const Alphabet& a) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        for (std::size_t end = patterns[i].size(); end <= text.size(); ++end) {
            std::vector<code_t> win(text.codes.begin() + std::ptrdiff_t(end - patterns[i].size()),
                                    text.codes.begin() + std::ptrdiff_t(end));
            if (prev_of(win, a) == prev_of(patterns[i].codes, a)) out.emplace_back(end, i + 1);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool bijection_match(const std::vector<code_t>& s1, const std::vector<code_t>& s2,
                     const Alphabet& a, bool respect_complements) {
    if (s1.size() != s2.size()) return false;
    std::vector<bool> occurs(a.sigma_p() + 1, false);
    for (code_t c : s1)
        if (a.is_p(c)) occurs[c] = true;
    std::vector<code_t> perm(a.sigma_p());
    std::iota(perm.begin(), perm.end(), 1);
    do {
        bool ok = true;
        for (std::size_t k = 0; ok && k < s1.size(); ++k) {
            code_t x = s1[k], y = s2[k];
            if (a.is_p(x) != a.is_p(y))
                ok = false;
            else if (!a.is_p(x))
                ok = x == y;
            else
                ok = perm[x - 1] == y;
        }
        if (ok && respect_complements) {
            // the constraint binds only between characters that occur
            for (code_t c = 1; ok && c <= a.sigma_p(); ++c) {
                code_t cc = a.complement(c);
                if (!occurs[c] || cc == 0 || !occurs[cc]) continue;
                code_t mapped_compl = a.complement(perm[c - 1]);
                ok = mapped_compl != 0 && mapped_compl == perm[cc - 1];
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Row zeta(const Row& prev_tokens, std::size_t j) {
    Row out(prev_tokens.begin() + std::ptrdiff_t(j - 1), prev_tokens.end());
    for (std::size_t k = 0; k < out.size(); ++k)
        if (out[k] < kStaticBase && out[k] >= std::int64_t(k + 1)) out[k] = 0;
    return out;
}

}  // namespace pbwt::oracle
