#ifndef PBWT_PDICT_HPP
#define PBWT_PDICT_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pbwt/alphabet.hpp"
#include "pbwt/bitvector.hpp"
#include "pbwt/nav_tree.hpp"
#include "pbwt/wavelet_tree.hpp"

namespace pbwt {

// Parameterized dictionary matching: trie over the prev-encoded patterns with
// relabeled edges, Z values over the reversed-prev leaf ordering, and explicit
// failure/report link arrays. States are addressed by their label, the
// lexicographic rank of the reversed-path prev encoding (root = 1).
class PDictIndex {
public:
    PDictIndex() = default;
    // patterns are query-mode coded texts (no terminator); duplicates by prev
    // encoding are rejected with the original 1-based pattern ids
    PDictIndex(const std::vector<CodedText>& patterns, const Alphabet& a);

    std::uint32_t state_count() const { return m_; }
    std::uint32_t pattern_count() const { return d_; }
    const Alphabet& alphabet() const { return alpha_; }

    // trie in preorder space, for inspection and tests
    const NavTree& trie() const { return trie_; }
    token_t edge_token(std::uint32_t state) const { return edge_tokens_[state - 1]; }
    code_t edge_label(std::uint32_t state) const { return edge_labels_[state - 1]; }
    std::uint32_t z_value(std::uint32_t state) const { return z_of_state_[state - 1]; }
    std::uint32_t label_of(std::uint32_t state) const { return label_of_[state - 1]; }
    std::uint32_t state_of(std::uint32_t label) const { return state_of_[label - 1]; }

    std::uint32_t depth_of_label(std::uint32_t label) const {
        return trie_.node_depth(state_of(label));
    }
    bool is_leaf_label(std::uint32_t label) const { return leaf_bits_.get(label); }
    std::uint32_t failure(std::uint32_t label) const { return fail_[label - 1]; }
    std::uint32_t report(std::uint32_t label) const { return report_[label - 1]; }

    // transition by window-encoded symbol; nullopt drives the failure link
    std::optional<std::uint32_t> next(std::uint32_t label, std::uint32_t z) const;

    // all pairs (end position, original pattern id), sorted
    std::vector<std::pair<std::size_t, std::size_t>> scan(const CodedText& text) const;

    std::size_t size_in_bits() const;

    void save(Serializer& out) const;
    static PDictIndex load(Deserializer& in, const Alphabet& a);

private:
    Alphabet alpha_{{}, {}};
    std::uint32_t m_ = 0, d_ = 0;

    NavTree trie_;
    std::vector<token_t> edge_tokens_;      // per state, 0 token for the root slot
    std::vector<code_t> edge_labels_;       // relabeled symbols
    std::vector<std::uint32_t> z_of_state_;
    std::vector<std::uint32_t> label_of_, state_of_;

    RankSelectBits leaf_bits_;              // over labels, index 1..m
    UnaryCounts children_;                  // per label: child count (the S string)
    WaveletTree zwt_;                       // Z over the reversed-trie leaf order
    std::vector<std::uint32_t> leaf_state_; // reversed-trie leaf -> child label
    std::vector<std::uint32_t> fail_, report_;  // per label

    RankSelectBits final_bits_;             // over labels
    std::vector<std::uint32_t> orig_id_;    // sorted pattern rank -> original id
};

}  // namespace pbwt

#endif
