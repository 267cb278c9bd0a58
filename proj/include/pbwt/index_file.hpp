#ifndef PBWT_INDEX_FILE_HPP
#define PBWT_INDEX_FILE_HPP

#include <memory>
#include <optional>
#include <string>

#include "pbwt/pdict.hpp"
#include "pbwt/pindex.hpp"
#include "pbwt/sindex.hpp"

namespace pbwt {

// On-disk container: magic "PBWX", version byte, header (n, sigma_s, sigma_p,
// delta, flags), alphabet table, the serialized structures in fixed order, and
// a trailing CRC32 over everything before it. All integers little-endian.
struct IndexFile {
    static constexpr char kMagic[4] = {'P', 'B', 'W', 'X'};
    static constexpr std::uint8_t kVersion = 1;
    enum Flags : std::uint8_t { kHasSIndex = 1, kHasPairing = 2, kIsDictionary = 4 };

    Alphabet alphabet{{}, {}};
    std::optional<PIndex> pindex;
    std::optional<SIndex> sindex;
    std::optional<PDictIndex> dict;

    std::vector<std::uint8_t> serialize() const;
    static IndexFile deserialize(const std::vector<std::uint8_t>& bytes);

    void save_to(const std::string& path) const;
    static IndexFile load_from(const std::string& path);
};

}  // namespace pbwt

#endif
