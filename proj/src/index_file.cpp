#include "pbwt/index_file.hpp"

#include "pbwt/serialize.hpp"

namespace pbwt {

std::vector<std::uint8_t> IndexFile::serialize() const {
    Serializer out;
    out.put_bytes(kMagic, 4);
    out.put_u8(kVersion);
    std::uint8_t flags = 0;
    if (sindex) flags |= kHasSIndex;
    if (alphabet.has_pairing()) flags |= kHasPairing;
    if (dict) flags |= kIsDictionary;
    out.put_u8(flags);
    std::uint64_t n = pindex ? pindex->n() : 0;
    out.put_u64(n);
    out.put_u32(alphabet.sigma_s());
    out.put_u32(alphabet.sigma_p());
    out.put_u32(pindex ? pindex->delta() : 0);
    out.put_string(alphabet.to_spec_string());
    if (dict) {
        dict->save(out);
    } else {
        pindex->save(out);
        if (sindex) sindex->save(out);
    }
    std::uint32_t crc = crc32_of(out.bytes().data(), out.bytes().size());
    out.put_u32(crc);
    return std::move(out.bytes());
}

IndexFile IndexFile::deserialize(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 + 4) throw CorruptIndex("file too short");
    std::uint32_t stored = 0;
    for (int i = 0; i < 4; ++i)
        stored |= std::uint32_t(bytes[bytes.size() - 4 + std::size_t(i)]) << (8 * i);
    if (crc32_of(bytes.data(), bytes.size() - 4) != stored)
        throw CorruptIndex("checksum mismatch");

    Deserializer in(bytes.data(), bytes.size() - 4);
    char magic[4];
    for (char& c : magic) c = char(in.get_u8());
    if (std::string(magic, 4) != std::string(kMagic, 4)) throw CorruptIndex("bad magic");
    if (in.get_u8() != kVersion) throw CorruptIndex("unsupported version");
    std::uint8_t flags = in.get_u8();
    in.get_u64();  // n, informational
    in.get_u32();  // sigma_s
    in.get_u32();  // sigma_p
    in.get_u32();  // delta

    IndexFile f;
    f.alphabet = Alphabet::parse_string(in.get_string());
    if (flags & kIsDictionary) {
        f.dict = PDictIndex::load(in, f.alphabet);
    } else {
        f.pindex = PIndex::load(in, f.alphabet);
        if (flags & kHasSIndex) f.sindex = SIndex::load(in, f.alphabet);
    }
    return f;
}

void IndexFile::save_to(const std::string& path) const { write_file(path, serialize()); }

IndexFile IndexFile::load_from(const std::string& path) {
    return deserialize(read_file(path));
}

}  // namespace pbwt
