#include "pbwt/pdict.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

#include "pbwt/serialize.hpp"

namespace pbwt {

namespace {

struct TrieNode {
    token_t token = 0;        // incoming edge token
    std::int32_t parent = -1;
    bool final_state = false;
    std::uint32_t pattern = 0;  // sorted pattern rank when final
    std::vector<std::int32_t> children;
};

}  // namespace

PDictIndex::PDictIndex(const std::vector<CodedText>& patterns, const Alphabet& a) : alpha_(a) {
    if (patterns.empty()) throw InputError("pattern set is empty");
    const std::size_t d = patterns.size();
    for (std::size_t i = 0; i < d; ++i)
        if (patterns[i].size() == 0) throw InputError("empty pattern rejected");

    // Convention 2: order patterns by the prev encoding of their reversal;
    // duplicates by plain prev encoding are rejected
    std::vector<Tokens> prevs(d), rprevs(d);
    for (std::size_t i = 0; i < d; ++i) {
        prevs[i] = prev_encode(patterns[i], a);
        CodedText rev;
        rev.codes.assign(patterns[i].codes.rbegin(), patterns[i].codes.rend());
        rprevs[i] = prev_encode(rev, a);
    }
    {
        std::map<Tokens, std::size_t> seen;
        for (std::size_t i = 0; i < d; ++i) {
            auto [it, fresh] = seen.try_emplace(prevs[i], i);
            if (!fresh) throw DuplicatePattern(it->second + 1, i + 1);
        }
    }
    std::vector<std::uint32_t> order(d);
    for (std::size_t i = 0; i < d; ++i) order[i] = std::uint32_t(i);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return prev_compare(rprevs[x], rprevs[y]) < 0;
    });
    d_ = std::uint32_t(d);
    orig_id_.resize(d);
    for (std::size_t k = 0; k < d; ++k) orig_id_[k] = order[k] + 1;

    // uncompacted trie of the prev encodings, children in token order
    std::vector<TrieNode> nodes(1);
    for (std::size_t k = 0; k < d; ++k) {
        const Tokens& enc = prevs[order[k]];
        std::int32_t cur = 0;
        for (token_t t : enc) {
            std::int32_t nxt = -1;
            for (std::int32_t ch : nodes[std::size_t(cur)].children)
                if (nodes[std::size_t(ch)].token == t) {
                    nxt = ch;
                    break;
                }
            if (nxt < 0) {
                nxt = std::int32_t(nodes.size());
                nodes.push_back({t, cur, false, 0, {}});
                auto& kids = nodes[std::size_t(cur)].children;
                kids.push_back(nxt);
                std::sort(kids.begin(), kids.end(), [&](std::int32_t x, std::int32_t y) {
                    return nodes[std::size_t(x)].token < nodes[std::size_t(y)].token;
                });
            }
            cur = nxt;
        }
        nodes[std::size_t(cur)].final_state = true;
        nodes[std::size_t(cur)].pattern = std::uint32_t(k);
    }
    m_ = std::uint32_t(nodes.size());

    // preorder flattening
    std::vector<std::uint32_t> parent(m_, 0);
    std::vector<std::int32_t> pre_of(m_, -1), node_of(m_, -1);
    {
        std::uint32_t next_pre = 0;
        std::vector<std::int32_t> dfs;
        dfs.push_back(0);
        while (!dfs.empty()) {
            std::int32_t v = dfs.back();
            dfs.pop_back();
            std::uint32_t pre = ++next_pre;
            pre_of[std::size_t(v)] = std::int32_t(pre);
            node_of[pre - 1] = v;
            parent[pre - 1] = v == 0 ? 0 : std::uint32_t(pre_of[std::size_t(nodes[std::size_t(v)].parent)]);
            const auto& kids = nodes[std::size_t(v)].children;
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) dfs.push_back(*it);
        }
    }
    trie_ = NavTree(parent);
    edge_tokens_.resize(m_);
    for (std::uint32_t u = 1; u <= m_; ++u)
        edge_tokens_[u - 1] = u == 1 ? 0 : nodes[std::size_t(node_of[u - 1])].token;

    // relabeling: DFS with a counter and the label stack for back references
    edge_labels_.assign(m_, 0);
    {
        std::vector<code_t> path_labels;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> todo;  // (state, counter)
        std::vector<std::uint32_t> depth_at;
        todo.emplace_back(1, 1);
        depth_at.push_back(0);
        while (!todo.empty()) {
            auto [u, cnt] = todo.back();
            std::uint32_t dep = depth_at.back();
            todo.pop_back();
            depth_at.pop_back();
            path_labels.resize(dep);
            if (u != 1) {
                token_t t = edge_tokens_[u - 1];
                code_t lab;
                if (is_static_token(t)) {
                    lab = static_code(t);
                } else if (t == 0) {
                    if (cnt > alpha_.sigma_p()) throw CounterOverflow();
                    lab = code_t(cnt);
                    ++cnt;
                } else {
                    if (t < 1 || std::size_t(t) > path_labels.size())
                        throw InputError("malformed prev token in pattern trie");
                    lab = path_labels[path_labels.size() - std::size_t(t)];
                }
                edge_labels_[u - 1] = lab;
                path_labels.push_back(lab);
            }
            for (std::uint32_t q = trie_.degree(u); q >= 1; --q) {
                todo.emplace_back(trie_.child(u, q), cnt);
                depth_at.push_back(std::uint32_t(path_labels.size()));
            }
        }
    }

    // reversed-path prev encodings, labels, and Z values
    std::vector<Tokens> rpe(m_);
    {
        std::vector<code_t> path;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> todo;  // (state, depth)
        todo.emplace_back(1, 0);
        while (!todo.empty()) {
            auto [u, dep] = todo.back();
            todo.pop_back();
            path.resize(dep);
            if (u != 1) path.push_back(edge_labels_[u - 1]);
            CodedText rev;
            rev.codes.assign(path.rbegin(), path.rend());
            rpe[u - 1] = prev_encode(rev, alpha_);
            for (std::uint32_t q = trie_.degree(u); q >= 1; --q)
                todo.emplace_back(trie_.child(u, q), std::uint32_t(path.size()));
        }
    }
    label_of_.assign(m_, 0);
    state_of_.assign(m_, 0);
    {
        std::vector<std::uint32_t> by(m_);
        for (std::uint32_t u = 1; u <= m_; ++u) by[u - 1] = u;
        std::sort(by.begin(), by.end(), [&](std::uint32_t x, std::uint32_t y) {
            return prev_compare(rpe[x - 1], rpe[y - 1]) < 0;
        });
        for (std::uint32_t k = 1; k <= m_; ++k) {
            label_of_[by[k - 1] - 1] = k;
            state_of_[k - 1] = by[k - 1];
        }
    }

    z_of_state_.assign(m_, 0);
    for (std::uint32_t u = 2; u <= m_; ++u) {
        std::uint32_t w = trie_.parent(u);
        code_t lab = edge_labels_[u - 1];
        if (!alpha_.is_p(lab)) {
            z_of_state_[u - 1] = lab;
            continue;
        }
        // first occurrence of the label in the reversed path of the parent
        std::uint32_t f = 0;
        {
            std::uint32_t x = w;  // reversed path reads labels bottom-up
            std::uint32_t k = 1;
            while (x != 1) {
                if (edge_labels_[x - 1] == lab) {
                    f = k;
                    break;
                }
                x = trie_.parent(x);
                ++k;
            }
        }
        std::uint32_t zeros = 0;
        if (f) {
            for (std::uint32_t k = 0; k < f; ++k)
                if (rpe[w - 1][k] == 0) ++zeros;
        } else {
            for (token_t t : rpe[u - 1])
                if (t == 0) ++zeros;
        }
        z_of_state_[u - 1] = zeros;
    }

    // failure / report over the token trie, then mapped into label space
    std::vector<std::uint32_t> fail_pre(m_ + 1, 1), report_pre(m_ + 1, 1);
    {
        // BFS order = increasing depth; preorder within fixed depth is fine as
        // long as parents precede children, which preorder guarantees
        std::vector<std::uint32_t> by_depth(m_);
        for (std::uint32_t u = 1; u <= m_; ++u) by_depth[u - 1] = u;
        std::stable_sort(by_depth.begin(), by_depth.end(), [&](std::uint32_t x, std::uint32_t y) {
            return trie_.node_depth(x) < trie_.node_depth(y);
        });
        auto find_child = [&](std::uint32_t x, token_t t) -> std::uint32_t {
            for (std::uint32_t q = 1; q <= trie_.degree(x); ++q) {
                std::uint32_t ch = trie_.child(x, q);
                if (edge_tokens_[ch - 1] == t) return ch;
            }
            return 0;
        };
        for (std::uint32_t u : by_depth) {
            if (u == 1 || trie_.parent(u) == 1) continue;
            std::uint32_t w = trie_.parent(u);
            token_t t = edge_tokens_[u - 1];
            std::uint32_t x = fail_pre[w];
            while (true) {
                token_t tt = (!is_static_token(t) && t >= token_t(trie_.node_depth(x)) + 1) ? 0 : t;
                std::uint32_t ch = find_child(x, tt);
                if (ch != 0) {
                    fail_pre[u] = ch;
                    break;
                }
                if (x == 1) {
                    fail_pre[u] = 1;
                    break;
                }
                x = fail_pre[x];
            }
        }
        for (std::uint32_t u : by_depth) {
            if (u == 1) continue;
            std::uint32_t f = fail_pre[u];
            report_pre[u] =
                (f != 1 && nodes[std::size_t(node_of[f - 1])].final_state) ? f : report_pre[f];
        }
    }
    fail_.assign(m_, 1);
    report_.assign(m_, 1);
    for (std::uint32_t u = 1; u <= m_; ++u) {
        fail_[label_of_[u - 1] - 1] = label_of_[fail_pre[u] - 1];
        report_[label_of_[u - 1] - 1] = label_of_[report_pre[u] - 1];
    }

    // per-label leaf and final bits, final pattern ranks
    {
        std::vector<bool> leaf(m_), fin(m_);
        for (std::uint32_t u = 1; u <= m_; ++u) {
            leaf[label_of_[u - 1] - 1] = trie_.is_leaf(u);
            fin[label_of_[u - 1] - 1] = nodes[std::size_t(node_of[u - 1])].final_state;
        }
        leaf_bits_ = RankSelectBits(leaf);
        final_bits_ = RankSelectBits(fin);
        // Convention 2 makes final labels ascend in sorted-pattern order; remap
        // orig ids so that the k-th final label reports the right pattern
        std::vector<std::uint32_t> remap(d_);
        std::uint32_t seen = 0;
        for (std::uint32_t k = 1; k <= m_; ++k) {
            if (!fin[k - 1]) continue;
            std::uint32_t u = state_of_[k - 1];
            remap[seen++] = orig_id_[nodes[std::size_t(node_of[u - 1])].pattern];
        }
        orig_id_ = std::move(remap);
    }

    // reversed-trie leaf order: children grouped by parent label, siblings by
    // the Z rule (integer-led edges by descending Z, then static by ascending)
    {
        std::vector<std::uint64_t> child_counts(m_, 0);
        std::vector<std::uint32_t> zarr;
        leaf_state_.clear();
        zarr.reserve(m_ - 1);
        leaf_state_.reserve(m_ - 1);
        for (std::uint32_t k = 1; k <= m_; ++k) {
            std::uint32_t u = state_of_[k - 1];
            std::vector<std::uint32_t> kids;
            for (std::uint32_t q = 1; q <= trie_.degree(u); ++q) kids.push_back(trie_.child(u, q));
            std::sort(kids.begin(), kids.end(), [&](std::uint32_t x, std::uint32_t y) {
                std::uint32_t zx = z_of_state_[x - 1], zy = z_of_state_[y - 1];
                bool px = zx <= alpha_.sigma_p(), py = zy <= alpha_.sigma_p();
                if (px != py) return px;
                if (px) return zx > zy;
                return zx < zy;
            });
            child_counts[k - 1] = kids.size();
            for (std::uint32_t ch : kids) {
                zarr.push_back(z_of_state_[ch - 1]);
                leaf_state_.push_back(label_of_[ch - 1]);
            }
        }
        children_ = UnaryCounts(child_counts);
        zwt_ = WaveletTree(zarr, alpha_.sigma(), 1);
    }
}

std::optional<std::uint32_t> PDictIndex::next(std::uint32_t label, std::uint32_t z) const {
    if (leaf_bits_.get(label)) return std::nullopt;
    std::size_t sp = children_.prefix_sum(label - 1) + 1;
    std::size_t ep = children_.prefix_sum(label);
    if (sp > ep) return std::nullopt;
    std::size_t before = zwt_.rank(sp - 1, z);
    if (zwt_.rank(ep, z) == before) return std::nullopt;
    std::size_t q = zwt_.select(before + 1, z);
    return leaf_state_[q - 1];
}

std::vector<std::pair<std::size_t, std::size_t>> PDictIndex::scan(const CodedText& text) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = text.size();
    const std::uint32_t sp_codes = alpha_.sigma_p();
    std::vector<std::size_t> last(sp_codes + 1, 0);  // absolute last occurrence

    // window encoding per Observation 4: distinct p-characters since the last
    // occurrence of c (or in the whole window plus one when c is new)
    auto encode = [&](code_t c, std::size_t wstart, std::size_t /*pos*/) -> std::uint32_t {
        if (!alpha_.is_p(c)) return c;
        std::size_t from = last[c] >= wstart ? last[c] : 0;
        std::uint32_t cnt = 0;
        for (code_t x = 1; x <= sp_codes; ++x)
            if (last[x] >= wstart && (from == 0 || last[x] >= from)) ++cnt;
        return from == 0 ? cnt + 1 : cnt;
    };

    std::uint32_t state = 1;
    for (std::size_t pos = 1; pos <= n; ++pos) {
        code_t c = text[pos];
        while (true) {
            std::size_t wstart = pos - depth_of_label(state);
            std::uint32_t z = encode(c, wstart, pos);
            if (auto nxt = next(state, z)) {
                state = *nxt;
                break;
            }
            if (state == 1) break;  // drop the character
            state = fail_[state - 1];
        }
        if (alpha_.is_p(c)) last[c] = pos;
        // report everything ending here: the state itself, then the chain
        std::uint32_t u = state;
        if (final_bits_.get(u)) out.emplace_back(pos, orig_id_[final_bits_.rank1(u) - 1]);
        for (std::uint32_t r = report_[u - 1]; r != 1; r = report_[r - 1])
            out.emplace_back(pos, orig_id_[final_bits_.rank1(r) - 1]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t PDictIndex::size_in_bits() const {
    return trie_.size_in_bits() + 64 * edge_tokens_.size() + 32 * edge_labels_.size() +
           32 * (z_of_state_.size() + label_of_.size() + state_of_.size()) +
           leaf_bits_.size_in_bits() + children_.size_in_bits() + zwt_.size_in_bits() +
           32 * leaf_state_.size() + 32 * (fail_.size() + report_.size()) +
           final_bits_.size_in_bits() + 32 * orig_id_.size() + 128;
}

void PDictIndex::save(Serializer& out) const {
    out.put_u32(m_);
    out.put_u32(d_);
    trie_.save(out);
    out.put_u64(edge_tokens_.size());
    for (token_t t : edge_tokens_) out.put_i64(t);
    out.put_u32_vector(edge_labels_);
    out.put_u32_vector(z_of_state_);
    out.put_u32_vector(label_of_);
    out.put_u32_vector(state_of_);
    leaf_bits_.save(out);
    children_.save(out);
    zwt_.save(out);
    out.put_u32_vector(leaf_state_);
    out.put_u32_vector(fail_);
    out.put_u32_vector(report_);
    final_bits_.save(out);
    out.put_u32_vector(orig_id_);
}

PDictIndex PDictIndex::load(Deserializer& in, const Alphabet& a) {
    PDictIndex x;
    x.alpha_ = a;
    x.m_ = in.get_u32();
    x.d_ = in.get_u32();
    x.trie_ = NavTree::load(in);
    x.edge_tokens_.resize(in.get_u64());
    for (auto& t : x.edge_tokens_) t = in.get_i64();
    x.edge_labels_ = in.get_u32_vector();
    x.z_of_state_ = in.get_u32_vector();
    x.label_of_ = in.get_u32_vector();
    x.state_of_ = in.get_u32_vector();
    x.leaf_bits_ = RankSelectBits::load(in);
    x.children_ = UnaryCounts::load(in);
    x.zwt_ = WaveletTree::load(in);
    x.leaf_state_ = in.get_u32_vector();
    x.fail_ = in.get_u32_vector();
    x.report_ = in.get_u32_vector();
    x.final_bits_ = RankSelectBits::load(in);
    x.orig_id_ = in.get_u32_vector();
    return x;
}

}  // namespace pbwt
