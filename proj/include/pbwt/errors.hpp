#ifndef PBWT_ERRORS_HPP
#define PBWT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbwt {

// Input/usage errors carry enough context for the CLI to report a position.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownSymbol : InputError {
    std::size_t position;  // 1-based
    UnknownSymbol(std::size_t pos, char sym)
        : InputError("unknown symbol '" + std::string(1, sym) + "' at position " +
                     std::to_string(pos)),
          position(pos) {}
};

struct TerminatorMisplaced : InputError {
    std::size_t position;
    explicit TerminatorMisplaced(std::size_t pos)
        : InputError("terminator '$' occurs at internal position " + std::to_string(pos)),
          position(pos) {}
};

struct MissingTerminator : InputError {
    MissingTerminator() : InputError("text does not end with the terminator") {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct NotEnoughOccurrences : std::out_of_range {
    NotEnoughOccurrences() : std::out_of_range("select: not enough occurrences") {}
};

struct NotEnoughValues : std::out_of_range {
    NotEnoughValues() : std::out_of_range("range quantile: not enough values") {}
};

struct NoSuchChild : std::out_of_range {
    NoSuchChild() : std::out_of_range("node has no such child") {}
};

struct RootHasNoParent : std::logic_error {
    RootHasNoParent() : std::logic_error("root has no parent") {}
};

struct DepthOutOfRange : std::out_of_range {
    DepthOutOfRange() : std::out_of_range("level ancestor: depth out of range") {}
};

struct NotPPreceded : std::logic_error {
    explicit NotPPreceded(std::size_t row)
        : std::logic_error("row " + std::to_string(row) + " is not preceded by a p-character") {}
};

struct DuplicatePattern : InputError {
    std::size_t first, second;  // original 1-based pattern ids
    DuplicatePattern(std::size_t i, std::size_t j)
        : InputError("patterns " + std::to_string(i) + " and " + std::to_string(j) +
                     " have identical prev encodings"),
          first(i), second(j) {}
};

struct CounterOverflow : InputError {
    CounterOverflow() : InputError("relabeling needs more p-characters than the alphabet has") {}
};

struct CorruptIndex : InputError {
    explicit CorruptIndex(const std::string& msg) : InputError(msg) {}
};

}  // namespace pbwt

#endif
