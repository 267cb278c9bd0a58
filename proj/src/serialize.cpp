#include "pbwt/serialize.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

namespace pbwt {

void Serializer::put_bytes(const void* p, std::size_t len) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + len);
}

void Serializer::put_u64_vector(const std::vector<std::uint64_t>& v) {
    put_u64(v.size());
    for (auto x : v) put_u64(x);
}

void Serializer::put_u32_vector(const std::vector<std::uint32_t>& v) {
    put_u64(v.size());
    for (auto x : v) put_u32(x);
}

std::uint32_t Deserializer::get_u32() {
    const std::uint8_t* q = need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(q[i]) << (8 * i);
    return v;
}

std::uint64_t Deserializer::get_u64() {
    const std::uint8_t* q = need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(q[i]) << (8 * i);
    return v;
}

std::string Deserializer::get_string() {
    std::size_t len = get_u64();
    const std::uint8_t* q = need(len);
    return std::string(reinterpret_cast<const char*>(q), len);
}

std::vector<std::uint64_t> Deserializer::get_u64_vector() {
    std::size_t len = get_u64();
    std::vector<std::uint64_t> v(len);
    for (auto& x : v) x = get_u64();
    return v;
}

std::vector<std::uint32_t> Deserializer::get_u32_vector() {
    std::size_t len = get_u64();
    std::vector<std::uint32_t> v(len);
    for (auto& x : v) x = get_u32();
    return v;
}

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t size) {
    return std::uint32_t(::crc32(0L, data, uInt(size)));
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw InputError("write failed: " + path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open: " + path);
    f.seekg(0, std::ios::end);
    std::streamsize len = f.tellg();
    f.seekg(0);
    std::vector<std::uint8_t> v(static_cast<std::size_t>(len));
    f.read(reinterpret_cast<char*>(v.data()), len);
    if (!f) throw InputError("read failed: " + path);
    return v;
}

}  // namespace pbwt
