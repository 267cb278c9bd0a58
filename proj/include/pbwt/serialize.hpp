#ifndef PBWT_SERIALIZE_HPP
#define PBWT_SERIALIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pbwt/errors.hpp"

namespace pbwt {

// Little-endian byte sink. Sections are self-delimiting (length-prefixed
// vectors), so readers can append new sections later without breaking old
// files.
class Serializer {
public:
    void put_u8(std::uint8_t v) { buf_.push_back(v); }
    void put_u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(std::uint8_t(v >> (8 * i)));
    }
    void put_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(std::uint8_t(v >> (8 * i)));
    }
    void put_i64(std::int64_t v) { put_u64(std::uint64_t(v)); }
    void put_bytes(const void* p, std::size_t len);
    void put_string(const std::string& s) {
        put_u64(s.size());
        put_bytes(s.data(), s.size());
    }
    void put_u64_vector(const std::vector<std::uint64_t>& v);
    void put_u32_vector(const std::vector<std::uint32_t>& v);

    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    std::vector<std::uint8_t>& bytes() { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

class Deserializer {
public:
    Deserializer(const std::uint8_t* data, std::size_t size) : p_(data), end_(data + size) {}
    explicit Deserializer(const std::vector<std::uint8_t>& v) : Deserializer(v.data(), v.size()) {}

    std::uint8_t get_u8() { return *need(1); }
    std::uint32_t get_u32();
    std::uint64_t get_u64();
    std::int64_t get_i64() { return std::int64_t(get_u64()); }
    std::string get_string();
    std::vector<std::uint64_t> get_u64_vector();
    std::vector<std::uint32_t> get_u32_vector();

    bool at_end() const { return p_ == end_; }

private:
    const std::uint8_t* need(std::size_t k) {
        if (std::size_t(end_ - p_) < k) throw CorruptIndex("unexpected end of index file");
        const std::uint8_t* q = p_;
        p_ += k;
        return q;
    }
    const std::uint8_t* p_;
    const std::uint8_t* end_;
};

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t size);

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_file(const std::string& path);

}  // namespace pbwt

#endif
