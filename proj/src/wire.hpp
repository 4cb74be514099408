#pragma once

// Little-endian primitives shared by the index serializer and the vector
// file loaders. Values are assembled byte-wise so the on-disk layout does
// not depend on host endianness.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

namespace geraf::wire {

inline void put_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}

inline void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                 static_cast<char>(v >> 24)};
    out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline void put_f32(std::ostream& out, float v) {
    put_u32(out, std::bit_cast<std::uint32_t>(v));
}

inline void put_f64(std::ostream& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline std::uint32_t u32_at(const unsigned char* b) {
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

inline std::uint64_t u64_at(const unsigned char* b) {
    return std::uint64_t(u32_at(b)) | std::uint64_t(u32_at(b + 4)) << 32;
}

inline float f32_at(const unsigned char* b) {
    return std::bit_cast<float>(u32_at(b));
}

inline double f64_at(const unsigned char* b) {
    return std::bit_cast<double>(u64_at(b));
}

/// Wraps an input stream with a byte counter so parse errors can name
/// their position. read() returns false on short reads without throwing;
/// callers decide the message.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::uint64_t offset() const { return offset_; }

    bool read(void* dst, std::size_t len) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(len));
        const auto got = in_.gcount();
        offset_ += static_cast<std::uint64_t>(got);
        return got == static_cast<std::streamsize>(len);
    }

    bool read_u8(std::uint8_t& v) { return read(&v, 1); }

    bool read_u32(std::uint32_t& v) {
        unsigned char b[4];
        if (!read(b, 4)) return false;
        v = u32_at(b);
        return true;
    }

    bool read_u64(std::uint64_t& v) {
        unsigned char b[8];
        if (!read(b, 8)) return false;
        v = u64_at(b);
        return true;
    }

    bool read_f32(float& v) {
        std::uint32_t raw;
        if (!read_u32(raw)) return false;
        v = std::bit_cast<float>(raw);
        return true;
    }

    bool read_f64(double& v) {
        std::uint64_t raw;
        if (!read_u64(raw)) return false;
        v = std::bit_cast<double>(raw);
        return true;
    }

private:
    std::istream& in_;
    std::uint64_t offset_ = 0;
};

} // namespace geraf::wire
