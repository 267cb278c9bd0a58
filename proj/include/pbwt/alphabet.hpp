#ifndef PBWT_ALPHABET_HPP
#define PBWT_ALPHABET_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pbwt/errors.hpp"

namespace pbwt {

// Internal codes: p-symbols occupy [1, sigma_p], s-symbols [sigma_p+1, sigma],
// '$' always gets the largest code sigma. Codes are assigned in sorted external
// symbol order within each class.
using code_t = std::uint32_t;

// One token of a prev/compl encoding. Integer tokens keep their value; a static
// code c is stored as kStaticBase + c, so lexicographic comparison under
// Convention 1 (integers by value, then statics, '$' largest) is plain integer
// comparison.
using token_t = std::int64_t;
inline constexpr token_t kStaticBase = token_t(1) << 40;

inline token_t static_token(code_t c) { return kStaticBase + token_t(c); }
inline bool is_static_token(token_t t) { return t >= kStaticBase; }
inline code_t static_code(token_t t) { return code_t(t - kStaticBase); }

using Tokens = std::vector<token_t>;

class Alphabet {
public:
    static constexpr char kTerminator = '$';

    // symbols must not contain '$' (it is implicit); pairs is a partial pairing
    // on p-symbols, self-pairs rejected.
    Alphabet(std::vector<char> static_symbols, std::vector<char> param_symbols,
             std::vector<std::pair<char, char>> pairs = {});

    // Parses the 3-line alphabet spec file format:
    //   static: A B C
    //   param: w x y z
    //   pairs: x-w y-z      (optional)
    static Alphabet parse(std::istream& in);
    static Alphabet parse_string(const std::string& text);

    code_t sigma() const { return sigma_; }
    code_t sigma_p() const { return sigma_p_; }
    code_t sigma_s() const { return sigma_s_; }
    code_t terminator_code() const { return sigma_; }

    bool is_p(code_t c) const { return c >= 1 && c <= sigma_p_; }
    bool is_s(code_t c) const { return c > sigma_p_ && c <= sigma_; }

    bool has_pairing() const { return has_pairing_; }
    // 0 when the p-code has no complement.
    code_t complement(code_t c) const { return complement_[c]; }

    code_t code_of(char sym) const;   // 0 when unknown
    char symbol_of(code_t c) const { return symbols_[c]; }

    std::string to_spec_string() const;

private:
    code_t sigma_ = 0, sigma_p_ = 0, sigma_s_ = 0;
    bool has_pairing_ = false;
    std::vector<char> symbols_;       // code -> symbol, index 0 unused
    std::vector<code_t> complement_;  // code -> paired code or 0, index 0 unused
    std::int16_t code_of_[256];
};

struct CodedText {
    std::vector<code_t> codes;  // values in [1, sigma]
    std::size_t size() const { return codes.size(); }
    code_t operator[](std::size_t i) const { return codes[i - 1]; }  // 1-based
};

// Encodes a raw symbol sequence. In indexing mode the terminator is appended
// when absent and must not occur internally; in query mode it is left as-is
// (still rejected at internal positions).
enum class EncodeMode { index, query };
CodedText encode_text(const std::string& raw, const Alphabet& a, EncodeMode mode);

std::string decode_text(const CodedText& t, const Alphabet& a);

// prev encoding: p-positions become the distance to the previous occurrence of
// the same code (0 at the first occurrence), s-positions stay put.
Tokens prev_encode(const CodedText& s, const Alphabet& a);

// compl encoding: distance to the nearest previous occurrence of the code or
// its complement; the sign says which one was nearer, 0 when neither occurred.
Tokens compl_encode(const CodedText& s, const Alphabet& a);

// Lexicographic order under Convention 1; <0, 0, >0 like strcmp.
int prev_compare(const Tokens& x, const Tokens& y);

// Renders tokens the way the CLI prints them: integers as decimal digits,
// statics as their external symbols.
std::string tokens_to_string(const Tokens& t, const Alphabet& a);

}  // namespace pbwt

#endif
