#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "pbwt/pst.hpp"
#include "test_util.hpp"

using namespace pbwt;

namespace {

Alphabet paper_alphabet() { return Alphabet({'A', 'B', 'C'}, {'w', 'x', 'y', 'z'}); }

CodedText paper_text() {
    return encode_text("AxyBzCxzwAz$", paper_alphabet(), EncodeMode::index);
}

}  // namespace

TEST_CASE("pSA of the paper text") {
    Alphabet a = paper_alphabet();
    CodedText t = paper_text();
    CircularView view(t, a, Encoding::prev);
    PSuffixData psd = build_psuffix_data(view);
    CHECK(psd.psa == std::vector<std::uint32_t>{7, 8, 2, 9, 3, 5, 11, 1, 10, 4, 6, 12});
    for (std::size_t i = 1; i <= 12; ++i) CHECK(psd.ipsa[psd.psa[i - 1] - 1] == i);
    CHECK(psd.zero_total == 4);
}

TEST_CASE("pBWT of the paper text, as integer codes") {
    Alphabet a = paper_alphabet();
    CodedText t = paper_text();
    CircularView view(t, a, Encoding::prev);
    PSuffixData psd = build_psuffix_data(view);
    PBWTData pb = build_pbwt(view, psd);
    // tokens [C,3,A,2,3,B,A,$,4,4,2,3] under A=5,B=6,C=7,$=8
    CHECK(pb.pbwt == std::vector<std::uint32_t>{7, 3, 5, 2, 3, 6, 5, 8, 4, 4, 2, 3});
    // f values listed in the worked figure for the p-preceded rows
    CHECK(pb.firstocc[1] == 7);
    CHECK(pb.firstocc[3] == 3);
    CHECK(pb.firstocc[4] == 5);
    CHECK(pb.firstocc[8] == 12);
    CHECK(pb.firstocc[9] == 12);
    CHECK(pb.firstocc[10] == 3);
    CHECK(pb.firstocc[11] == 6);
}

TEST_CASE("terminator handling") {
    Alphabet a = paper_alphabet();
    CodedText no_term = encode_text("Ax", a, EncodeMode::query);
    CircularView v1(no_term, a, Encoding::prev);
    CHECK_THROWS_AS(build_psuffix_data(v1), MissingTerminator);

    CodedText only_term = encode_text("$", a, EncodeMode::query);
    CircularView v2(only_term, a, Encoding::prev);
    PSuffixData psd = build_psuffix_data(v2);
    CHECK(psd.psa == std::vector<std::uint32_t>{1});
    CHECK(psd.tree.node_count() == 2);  // root plus one leaf
    CHECK(psd.tree.leaf_count() == 1);
}

TEST_CASE("all-static text degenerates to the classical suffix order and BWT") {
    Alphabet a({'A', 'B'}, {});
    CodedText t = encode_text("AB", a, EncodeMode::index);
    CircularView view(t, a, Encoding::prev);
    PSuffixData psd = build_psuffix_data(view);
    CHECK(psd.psa == std::vector<std::uint32_t>{1, 2, 3});  // AB$ < B$ < $
    PBWTData pb = build_pbwt(view, psd);
    CHECK(pb.pbwt == std::vector<std::uint32_t>{3, 1, 2});  // $, A, B
    CHECK(psd.zero_total == 0);
}

TEST_CASE("lazy and materialized builds agree") {
    testutil::Rng rng(37);
    for (int it = 0; it < 30; ++it) {
        Alphabet a = testutil::random_alphabet(rng, testutil::rnd(rng, 0, 4),
                                               testutil::rnd(rng, 1, 4), false);
        CodedText t = testutil::random_text(rng, a, testutil::rnd(rng, 0, 60));
        CircularView view(t, a, Encoding::prev);
        PSuffixData lazy = build_psuffix_data(view, {false});
        PSuffixData mat = build_psuffix_data(view, {true});
        CHECK(lazy.psa == mat.psa);
        CHECK(lazy.path_len == mat.path_len);
        CHECK(lazy.zero_depth == mat.zero_depth);
    }
}

TEST_CASE("construction agrees with the materialize-and-sort oracle") {
    testutil::Rng rng(41);
    for (int it = 0; it < 120; ++it) {
        bool paired = rng() % 2;
        Alphabet a = testutil::random_alphabet(rng, testutil::rnd(rng, 0, 4),
                                               testutil::rnd(rng, 1, 4), paired);
        CodedText t = testutil::random_text(rng, a, testutil::rnd(rng, 0, 64));
        for (Encoding enc : {Encoding::prev, Encoding::structural}) {
            bool structural = enc == Encoding::structural;
            CircularView view(t, a, enc);
            PSuffixData psd = build_psuffix_data(view);
            oracle::Context ctx(t, a, structural);
            CHECK(psd.psa == oracle::naive_sa(ctx));

            // lazy tokens equal the materialized encodings
            for (int q = 0; q < 10; ++q) {
                std::size_t p = testutil::rnd(rng, 1, t.size());
                std::size_t k = testutil::rnd(rng, 1, t.size());
                CHECK(view.token(p, k) == ctx.rows[p - 1][k - 1]);
            }

            // tree equals the definitional compacted trie
            auto nt = oracle::naive_tree(ctx, psd.psa);
            REQUIRE(psd.tree.node_count() == nt.nodes.size());
            for (std::uint32_t u = 1; u <= nt.nodes.size(); ++u) {
                CHECK((u == 1 ? 0u : psd.tree.parent(u)) == nt.nodes[u - 1].parent);
                CHECK(psd.path_len[u - 1] == nt.nodes[u - 1].path_len);
                CHECK(psd.zero_depth[u - 1] == nt.nodes[u - 1].zero_depth);
                if (!psd.tree.is_leaf(u)) {
                    CHECK(psd.tree.lmost_leaf(u) == nt.nodes[u - 1].lmost);
                    CHECK(psd.tree.rmost_leaf(u) == nt.nodes[u - 1].rmost);
                }
            }
            for (std::uint32_t lf = 1; lf <= t.size(); ++lf)
                CHECK(psd.tree.leaf_select(lf) == nt.leaf_node[lf - 1]);
        }
    }
}

TEST_CASE("pBWT/sBWT agree with the circular-scan oracle") {
    testutil::Rng rng(43);
    for (int it = 0; it < 120; ++it) {
        Alphabet a = testutil::random_alphabet(rng, testutil::rnd(rng, 0, 4),
                                               testutil::rnd(rng, 1, 4), true);
        CodedText t = testutil::random_text(rng, a, testutil::rnd(rng, 0, 64));
        {
            CircularView view(t, a, Encoding::prev);
            PSuffixData psd = build_psuffix_data(view);
            PBWTData pb = build_pbwt(view, psd);
            oracle::Context ctx(t, a, false);
            auto rows = oracle::naive_bwt(ctx);
            for (std::size_t i = 0; i < t.size(); ++i) {
                CHECK(pb.lastcol[i] == rows[i].lastcol);
                CHECK(std::int32_t(pb.pbwt[i]) ==
                      (a.is_p(rows[i].lastcol) ? rows[i].value : std::int32_t(rows[i].lastcol)));
                if (a.is_p(rows[i].lastcol)) CHECK(pb.firstocc[i] == rows[i].f);
            }
        }
        {
            CircularView view(t, a, Encoding::structural);
            PSuffixData psd = build_psuffix_data(view);
            SBWTData sb = build_sbwt(view, psd);
            oracle::Context ctx(t, a, true);
            auto rows = oracle::naive_bwt(ctx);
            for (std::size_t i = 0; i < t.size(); ++i) {
                CHECK(sb.sbwt[i] == rows[i].value);
                if (a.is_p(rows[i].lastcol)) {
                    CHECK(sb.fplus[i] == rows[i].fplus);
                    CHECK(sb.fminus[i] == rows[i].fminus);
                }
            }
        }
    }
}

TEST_CASE("Observation 1: the prepend rule reconstructs the previous suffix") {
    testutil::Rng rng(47);
    for (int it = 0; it < 60; ++it) {
        Alphabet a = testutil::random_alphabet(rng, testutil::rnd(rng, 1, 4),
                                               testutil::rnd(rng, 1, 3), false);
        CodedText t = testutil::random_text(rng, a, testutil::rnd(rng, 1, 40));
        CircularView view(t, a, Encoding::prev);
        PSuffixData psd = build_psuffix_data(view);
        PBWTData pb = build_pbwt(view, psd);
        oracle::Context ctx(t, a, false);
        const std::size_t n = t.size();
        for (std::size_t i = 1; i <= n; ++i) {
            std::size_t p = psd.psa[i - 1];
            std::size_t prev = p == 1 ? n : p - 1;
            const auto& cur = ctx.rows[p - 1];
            oracle::Row rebuilt;
            if (!a.is_p(pb.lastcol[i - 1])) {
                rebuilt.push_back(kStaticBase + pb.lastcol[i - 1]);
                rebuilt.insert(rebuilt.end(), cur.begin(), cur.end() - 1);
            } else {
                std::uint32_t f = pb.firstocc[i - 1];
                rebuilt.push_back(0);
                rebuilt.insert(rebuilt.end(), cur.begin(), cur.begin() + std::ptrdiff_t(f - 1));
                rebuilt.push_back(std::int64_t(f));
                rebuilt.insert(rebuilt.end(), cur.begin() + std::ptrdiff_t(f), cur.end() - 1);
            }
            CHECK(rebuilt == ctx.rows[prev - 1]);
        }
    }
}

TEST_CASE("Observation 2: the three-case prepend rule for compl") {
    testutil::Rng rng(53);
    for (int it = 0; it < 60; ++it) {
        Alphabet a = testutil::random_alphabet(rng, testutil::rnd(rng, 2, 4),
                                               testutil::rnd(rng, 1, 3), true);
        CodedText t = testutil::random_text(rng, a, testutil::rnd(rng, 1, 40));
        CircularView view(t, a, Encoding::structural);
        PSuffixData psd = build_psuffix_data(view);
        SBWTData sb = build_sbwt(view, psd);
        oracle::Context ctx(t, a, true);
        const std::size_t n = t.size();
        for (std::size_t i = 1; i <= n; ++i) {
            std::size_t p = psd.psa[i - 1];
            std::size_t prev = p == 1 ? n : p - 1;
            const auto& cur = ctx.rows[p - 1];
            oracle::Row rebuilt;
            std::int32_t v = sb.sbwt[i - 1];
            if (v > std::int32_t(a.sigma_p())) {
                rebuilt.push_back(kStaticBase + v);
                rebuilt.insert(rebuilt.end(), cur.begin(), cur.end() - 1);
            } else if (v > 0) {
                std::uint32_t f = sb.fplus[i - 1];
                rebuilt.push_back(0);
                rebuilt.insert(rebuilt.end(), cur.begin(), cur.begin() + std::ptrdiff_t(f - 1));
                rebuilt.push_back(std::int64_t(f));
                rebuilt.insert(rebuilt.end(), cur.begin() + std::ptrdiff_t(f), cur.end() - 1);
            } else {
                std::uint32_t f = sb.fminus[i - 1];
                rebuilt.push_back(0);
                rebuilt.insert(rebuilt.end(), cur.begin(), cur.begin() + std::ptrdiff_t(f - 1));
                rebuilt.push_back(-std::int64_t(f));
                rebuilt.insert(rebuilt.end(), cur.begin() + std::ptrdiff_t(f), cur.end() - 1);
            }
            CHECK(rebuilt == ctx.rows[prev - 1]);
        }
    }
}

TEST_CASE("pbwt static positions form the static multiset of the text") {
    testutil::Rng rng(59);
    for (int it = 0; it < 40; ++it) {
        Alphabet a = testutil::random_alphabet(rng, testutil::rnd(rng, 0, 4),
                                               testutil::rnd(rng, 1, 4), false);
        CodedText t = testutil::random_text(rng, a, testutil::rnd(rng, 0, 50));
        CircularView view(t, a, Encoding::prev);
        PSuffixData psd = build_psuffix_data(view);
        PBWTData pb = build_pbwt(view, psd);
        std::size_t p_positions = 0;
        std::vector<std::size_t> text_hist(a.sigma() + 1, 0), bwt_hist(a.sigma() + 1, 0);
        for (std::size_t q = 1; q <= t.size(); ++q) {
            if (a.is_p(t[q])) ++p_positions;
            else ++text_hist[t[q]];
        }
        std::size_t p_rows = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (pb.pbwt[i] <= a.sigma_p()) ++p_rows;
            else ++bwt_hist[pb.pbwt[i]];
        }
        CHECK(p_rows == p_positions);
        CHECK(text_hist == bwt_hist);
    }
}
