#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "pbwt/alphabet.hpp"
#include "test_util.hpp"

using namespace pbwt;

namespace {

Alphabet paper_alphabet() {
    return Alphabet({'A', 'B', 'C'}, {'w', 'x', 'y', 'z'});
}

Alphabet paired_alphabet() {
    return Alphabet({'A', 'B', 'C'}, {'w', 'x', 'y', 'z'}, {{'x', 'w'}, {'y', 'z'}});
}

Tokens toks(const std::string& s, const Alphabet& a) {
    // "A0B0C4" style literal: digits are integer tokens, letters statics
    Tokens out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-') {
            std::size_t j = i + (s[i] == '-' ? 1 : 0);
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back(std::stoll(s.substr(i, j - i)));
            i = j;
        } else {
            out.push_back(static_token(a.code_of(s[i])));
            ++i;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("code assignment follows sorted order with terminator on top") {
    Alphabet a = paper_alphabet();
    CHECK(a.sigma_p() == 4);
    CHECK(a.sigma_s() == 4);
    CHECK(a.sigma() == 8);
    CHECK(a.code_of('w') == 1);
    CHECK(a.code_of('x') == 2);
    CHECK(a.code_of('y') == 3);
    CHECK(a.code_of('z') == 4);
    CHECK(a.code_of('A') == 5);
    CHECK(a.code_of('B') == 6);
    CHECK(a.code_of('C') == 7);
    CHECK(a.code_of('$') == 8);
    CHECK(a.terminator_code() == 8);

    CodedText t = encode_text("AxByCx", a, EncodeMode::query);
    CHECK(t.codes == std::vector<code_t>{5, 2, 6, 3, 7, 2});
}

TEST_CASE("query mode keeps the text unterminated, index mode appends") {
    Alphabet a = paper_alphabet();
    CHECK(encode_text("", a, EncodeMode::query).size() == 0);
    CHECK(encode_text("Ax", a, EncodeMode::index).codes ==
          std::vector<code_t>{5, 2, 8});
    CHECK(encode_text("Ax$", a, EncodeMode::index).codes ==
          std::vector<code_t>{5, 2, 8});
    CHECK_THROWS_AS(encode_text("AQx", a, EncodeMode::query), UnknownSymbol);
    try {
        encode_text("AQx", a, EncodeMode::query);
    } catch (const UnknownSymbol& e) {
        CHECK(e.position == 2);
    }
    CHECK_THROWS_AS(encode_text("A$B", a, EncodeMode::index), TerminatorMisplaced);
    CHECK_THROWS_AS(encode_text("A$B", a, EncodeMode::query), TerminatorMisplaced);
}

TEST_CASE("alphabet spec file parsing") {
    Alphabet a = Alphabet::parse_string("static: A B C\nparam: w x y z\npairs: x-w y-z\n");
    CHECK(a.sigma() == 8);
    CHECK(a.complement(a.code_of('x')) == a.code_of('w'));
    CHECK(a.complement(a.code_of('z')) == a.code_of('y'));
    CHECK(a.has_pairing());

    CHECK_THROWS_AS(Alphabet::parse_string("static: A\nparam: x\npairs: x-x\n"), InputError);
    CHECK_THROWS_AS(Alphabet::parse_string("static: A\nparam: x y\npairs: x-A\n"), InputError);
    // round-trip through the spec string
    Alphabet b = Alphabet::parse_string(a.to_spec_string());
    CHECK(b.sigma() == a.sigma());
    CHECK(b.complement(b.code_of('y')) == b.code_of('z'));
}

TEST_CASE("prev encoding matches the worked examples") {
    Alphabet a = paper_alphabet();
    CHECK(prev_encode(encode_text("AxByCx", a, EncodeMode::query), a) == toks("A0B0C4", a));
    CHECK(prev_encode(encode_text("AxyBzCxzwAz$", a, EncodeMode::index), a) ==
          toks("A00B0C530A3$", a));
    CodedText statics = encode_text("ABCA", a, EncodeMode::query);
    Tokens enc = prev_encode(statics, a);
    for (std::size_t i = 0; i < enc.size(); ++i) {
        CHECK(is_static_token(enc[i]));
        CHECK(static_code(enc[i]) == statics[i + 1]);
    }
}

TEST_CASE("compl encoding matches the worked examples") {
    Alphabet a = paired_alphabet();
    CHECK(compl_encode(encode_text("AxByCx", a, EncodeMode::query), a) == toks("A0B0C4", a));
    Alphabet xw = Alphabet({'A', 'B', 'C'}, {'w', 'x', 'y', 'z'}, {{'x', 'w'}});
    CHECK(compl_encode(encode_text("AxBwAwCxAx", xw, EncodeMode::query), xw) ==
          toks("A0B-2A2C-2A2", xw));
}

TEST_CASE("compl equals prev when no complemented character occurs") {
    testutil::Rng rng(7);
    Alphabet a = Alphabet({'A', 'B'}, {'x', 'y', 'z'});  // no pairing at all
    for (int it = 0; it < 50; ++it) {
        CodedText t = testutil::random_text(rng, a, testutil::rnd(rng, 0, 40));
        CHECK(compl_encode(t, a) == prev_encode(t, a));
    }
}

TEST_CASE("prev_compare implements Convention 1") {
    Alphabet a = paper_alphabet();
    CHECK(prev_compare(toks("0", a), toks("A", a)) < 0);
    CHECK(prev_compare(toks("A0B", a), toks("A0B0", a)) < 0);
    CHECK(prev_compare(toks("A", a), toks("$", a)) < 0);   // terminator largest
    CHECK(prev_compare(toks("3", a), toks("7", a)) < 0);   // integers by value
}

TEST_CASE("circular prev order of the paper text reproduces the pSA column") {
    Alphabet a = paper_alphabet();
    CodedText t = encode_text("AxyBzCxzwAz$", a, EncodeMode::index);
    oracle::Context ctx(t, a, false);
    std::vector<std::uint32_t> order(12);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return prev_compare(ctx.rows[x - 1], ctx.rows[y - 1]) < 0;
    });
    CHECK(order == std::vector<std::uint32_t>{7, 8, 2, 9, 3, 5, 11, 1, 10, 4, 6, 12});
}

TEST_CASE("Fact 1: equal prev encodings exactly characterize p-matches") {
    testutil::Rng rng(11);
    for (int it = 0; it < 300; ++it) {
        std::size_t sp = testutil::rnd(rng, 1, 4);
        Alphabet a = testutil::random_alphabet(rng, sp, testutil::rnd(rng, 1, 3), false);
        std::size_t len = testutil::rnd(rng, 1, 8);
        std::vector<code_t> s1, s2;
        for (std::size_t k = 0; k < len; ++k) {
            s1.push_back(code_t(testutil::rnd(rng, 1, a.sigma() - 1)));
            s2.push_back(code_t(testutil::rnd(rng, 1, a.sigma() - 1)));
        }
        CodedText c1{s1}, c2{s2};
        bool same = prev_encode(c1, a) == prev_encode(c2, a);
        CHECK(same == oracle::bijection_match(s1, s2, a, false));
        // applying a random bijection never changes the encoding
        std::vector<code_t> perm(sp);
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<code_t> renamed(s1);
        for (auto& c : renamed)
            if (a.is_p(c)) c = perm[c - 1];
        CHECK(prev_encode(CodedText{renamed}, a) == prev_encode(c1, a));
    }
}

TEST_CASE("Lemma compl: equal compl encodings exactly characterize s-matches") {
    testutil::Rng rng(13);
    for (int it = 0; it < 300; ++it) {
        std::size_t sp = testutil::rnd(rng, 2, 4);
        Alphabet a = testutil::random_alphabet(rng, sp, testutil::rnd(rng, 1, 3), true);
        std::size_t len = testutil::rnd(rng, 1, 7);
        std::vector<code_t> s1, s2;
        for (std::size_t k = 0; k < len; ++k) {
            s1.push_back(code_t(testutil::rnd(rng, 1, a.sigma() - 1)));
            s2.push_back(code_t(testutil::rnd(rng, 1, a.sigma() - 1)));
        }
        bool same = compl_encode(CodedText{s1}, a) == compl_encode(CodedText{s2}, a);
        CHECK(same == oracle::bijection_match(s1, s2, a, true));
    }
}

TEST_CASE("prev_compare is a total order on random triples") {
    testutil::Rng rng(17);
    Alphabet a = paper_alphabet();
    auto random_tokens = [&](std::size_t len) {
        CodedText t;
        for (std::size_t k = 0; k < len; ++k)
            t.codes.push_back(code_t(testutil::rnd(rng, 1, a.sigma() - 1)));
        return prev_encode(t, a);
    };
    for (int it = 0; it < 500; ++it) {
        Tokens x = random_tokens(testutil::rnd(rng, 0, 6));
        Tokens y = random_tokens(testutil::rnd(rng, 0, 6));
        Tokens z = random_tokens(testutil::rnd(rng, 0, 6));
        CHECK(prev_compare(x, y) == -prev_compare(y, x));
        if (prev_compare(x, y) <= 0 && prev_compare(y, z) <= 0)
            CHECK(prev_compare(x, z) <= 0);
        if (prev_compare(x, y) == 0) CHECK(x == y);
    }
}
