#ifndef PBWT_FSUM_HPP
#define PBWT_FSUM_HPP

#include <cstdint>
#include <vector>

#include "pbwt/bitvector.hpp"
#include "pbwt/nav_tree.hpp"

namespace pbwt {

// Prefix-sum structure over fCount: fSum(x) = sum of fCount(y) over nodes y
// that precede x in preorder and are not ancestors of x.
//
// fCount(x) counts the qualifying leaves under x whose first-occurrence value
// lands on the edge into x, i.e. |path(parent(x))| + 2 <= f <= |path(x)| + 1.
//
// Layout: fCount is unary-encoded; fSum and the subtree totals Phi are stored
// explicitly at marked and prime nodes (grouping factor g); every other node is
// covered by one record keyed by the content of its territory:
//   - prime node u' with highest marked descendant u*: nodes of
//     subtree(u') \ subtree(u*) store Psi1/Psi2 offsets, with Gamma read from
//     the per-prime unary string B;
//   - lowest marked node v*: nodes of subtree(v*) store Psi offsets;
//   - remaining nodes (mark-free branches hanging off a marked node) are
//     covered by a per-anchor residue record.
// Identical records are shared through a content-keyed pool.
class FSumStructure {
public:
    struct Event {
        std::uint32_t leaf;  // 1-based leaf index
        std::uint32_t f;     // first-occurrence value, >= 1
    };

    FSumStructure() = default;
    FSumStructure(const NavTree& tree, const std::vector<std::uint32_t>& path_len,
                  const std::vector<Event>& events, std::uint32_t g);

    std::uint64_t fsum(const NavTree& tree, std::uint32_t node) const;
    std::uint64_t fcount(std::uint32_t node) const { return fcount_.get(node); }
    const std::vector<std::uint32_t>& fcount_values() const { return fc_plain_; }

    const MarkingScheme& marking() const { return marking_; }
    std::uint32_t grouping() const { return g_; }

    std::size_t size_in_bits() const;

    void save(Serializer& out) const;
    static FSumStructure load(Deserializer& in, const NavTree& tree);

private:
    std::uint32_t g_ = 2;
    UnaryCounts fcount_;
    std::vector<std::uint32_t> fc_plain_;  // kept for alpha reuse and tests
    MarkingScheme marking_;

    std::vector<std::uint64_t> fsum_marked_;   // by marked rank
    std::vector<std::uint64_t> phi_marked_;    // by marked rank
    std::vector<std::uint64_t> fsum_prime_;    // by prime rank
    std::vector<std::uint32_t> hmd_prime_;     // by prime rank; 0 = none

    std::vector<UnaryCounts> b_prime_;       // by prime rank; Gamma queries
    std::vector<std::uint32_t> rec_prime_;   // by prime rank; psi pool id or none
    std::vector<std::uint32_t> rec_lowest_;  // by marked rank; psi pool id or none
    std::vector<std::uint32_t> rec_residue_; // by marked rank; residue pool id or none
    static constexpr std::uint32_t kNoRec = 0xffffffffu;

    std::vector<std::vector<std::uint32_t>> psi_pool_;          // shared Psi arrays
    std::vector<std::vector<std::uint32_t>> residue_pos_pool_;  // sorted preorders
    std::vector<std::vector<std::uint32_t>> residue_psi_pool_;
};

}  // namespace pbwt

#endif
