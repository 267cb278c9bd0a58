#include "pbwt/alphabet.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <sstream>

namespace pbwt {

Alphabet::Alphabet(std::vector<char> static_symbols, std::vector<char> param_symbols,
                   std::vector<std::pair<char, char>> pairs) {
    std::sort(static_symbols.begin(), static_symbols.end());
    std::sort(param_symbols.begin(), param_symbols.end());
    static_symbols.erase(std::unique(static_symbols.begin(), static_symbols.end()),
                         static_symbols.end());
    param_symbols.erase(std::unique(param_symbols.begin(), param_symbols.end()),
                        param_symbols.end());
    // '$' is implicit; tolerate it being listed explicitly as static.
    static_symbols.erase(std::remove(static_symbols.begin(), static_symbols.end(), kTerminator),
                         static_symbols.end());
    if (std::count(param_symbols.begin(), param_symbols.end(), kTerminator))
        throw InputError("terminator cannot be a p-symbol");

    sigma_p_ = code_t(param_symbols.size());
    sigma_s_ = code_t(static_symbols.size()) + 1;  // + terminator
    sigma_ = sigma_p_ + sigma_s_;

    symbols_.assign(sigma_ + 1, '\0');
    complement_.assign(sigma_ + 1, 0);
    std::memset(code_of_, 0, sizeof code_of_);

    code_t next = 1;
    for (char c : param_symbols) {
        symbols_[next] = c;
        code_of_[static_cast<unsigned char>(c)] = std::int16_t(next);
        ++next;
    }
    for (char c : static_symbols) {
        if (code_of_[static_cast<unsigned char>(c)] != 0)
            throw InputError(std::string("symbol '") + c + "' is both static and parameterized");
        symbols_[next] = c;
        code_of_[static_cast<unsigned char>(c)] = std::int16_t(next);
        ++next;
    }
    symbols_[next] = kTerminator;
    code_of_[static_cast<unsigned char>(kTerminator)] = std::int16_t(next);

    for (auto [x, y] : pairs) {
        code_t cx = code_of(x), cy = code_of(y);
        if (cx == 0 || cy == 0 || !is_p(cx) || !is_p(cy))
            throw InputError("complement pair refers to a non-parameterized symbol");
        if (cx == cy)
            throw InputError(std::string("self-complement pair on '") + x + "' rejected");
        if (complement_[cx] != 0 || complement_[cy] != 0)
            throw InputError("symbol appears in more than one complement pair");
        complement_[cx] = cy;
        complement_[cy] = cx;
        has_pairing_ = true;
    }
}

code_t Alphabet::code_of(char sym) const {
    return code_t(code_of_[static_cast<unsigned char>(sym)]);
}

Alphabet Alphabet::parse(std::istream& in) {
    std::vector<char> stat, par;
    std::vector<std::pair<char, char>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head.empty() || head[0] == '#') continue;
        std::string item;
        if (head == "static:") {
            while (ls >> item)
                for (char c : item) stat.push_back(c);
        } else if (head == "param:") {
            while (ls >> item)
                for (char c : item) par.push_back(c);
        } else if (head == "pairs:") {
            while (ls >> item) {
                if (item.size() != 3 || item[1] != '-')
                    throw InputError("malformed pair '" + item + "' (want x-y)");
                pairs.emplace_back(item[0], item[2]);
            }
        } else {
            throw InputError("unrecognized alphabet line: " + line);
        }
    }
    return Alphabet(std::move(stat), std::move(par), std::move(pairs));
}

Alphabet Alphabet::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string Alphabet::to_spec_string() const {
    std::string s = "static:";
    for (code_t c = sigma_p_ + 1; c < sigma_; ++c) s += ' ', s += symbols_[c];
    s += "\nparam:";
    for (code_t c = 1; c <= sigma_p_; ++c) s += ' ', s += symbols_[c];
    s += '\n';
    bool any = false;
    for (code_t c = 1; c <= sigma_p_; ++c)
        if (complement_[c] > c) {
            s += any ? " " : "pairs:";
            if (!any) s += ' ';
            s += symbols_[c];
            s += '-';
            s += symbols_[complement_[c]];
            any = true;
        }
    if (any) s += '\n';
    return s;
}

CodedText encode_text(const std::string& raw, const Alphabet& a, EncodeMode mode) {
    CodedText t;
    t.codes.reserve(raw.size() + 1);
    std::size_t pos = 0;
    for (char sym : raw) {
        if (std::isspace(static_cast<unsigned char>(sym))) continue;
        ++pos;
        code_t c = a.code_of(sym);
        if (c == 0) throw UnknownSymbol(pos, sym);
        t.codes.push_back(c);
    }
    const code_t term = a.terminator_code();
    for (std::size_t i = 0; i + 1 < t.codes.size(); ++i)
        if (t.codes[i] == term) throw TerminatorMisplaced(i + 1);
    if (mode == EncodeMode::index && (t.codes.empty() || t.codes.back() != term))
        t.codes.push_back(term);
    return t;
}

std::string decode_text(const CodedText& t, const Alphabet& a) {
    std::string s;
    s.reserve(t.size());
    for (code_t c : t.codes) s += a.symbol_of(c);
    return s;
}

Tokens prev_encode(const CodedText& s, const Alphabet& a) {
    Tokens out(s.size());
    std::vector<std::size_t> last(a.sigma_p() + 1, 0);
    for (std::size_t i = 1; i <= s.size(); ++i) {
        code_t c = s[i];
        if (a.is_p(c)) {
            out[i - 1] = last[c] ? token_t(i - last[c]) : 0;
            last[c] = i;
        } else {
            out[i - 1] = static_token(c);
        }
    }
    return out;
}

Tokens compl_encode(const CodedText& s, const Alphabet& a) {
    Tokens out(s.size());
    std::vector<std::size_t> last(a.sigma_p() + 1, 0);
    for (std::size_t i = 1; i <= s.size(); ++i) {
        code_t c = s[i];
        if (a.is_p(c)) {
            std::size_t jp = last[c];
            code_t cc = a.complement(c);
            std::size_t jm = cc ? last[cc] : 0;
            if (jp == 0 && jm == 0)
                out[i - 1] = 0;
            else if (jp > jm)
                out[i - 1] = token_t(i - jp);
            else
                out[i - 1] = -token_t(i - jm);
            last[c] = i;
        } else {
            out[i - 1] = static_token(c);
        }
    }
    return out;
}

int prev_compare(const Tokens& x, const Tokens& y) {
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    }
    if (x.size() == y.size()) return 0;
    return x.size() < y.size() ? -1 : 1;
}

std::string tokens_to_string(const Tokens& t, const Alphabet& a) {
    std::string s;
    for (token_t tok : t) {
        if (is_static_token(tok))
            s += a.symbol_of(static_code(tok));
        else
            s += std::to_string(tok);
    }
    return s;
}

}  // namespace pbwt
