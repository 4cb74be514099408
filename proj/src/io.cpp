#include "geraf/io.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include "wire.hpp"

namespace geraf {

namespace {

constexpr std::uint32_t kMaxDim = 1u << 20;

std::vector<unsigned char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    const auto size = in.tellg();
    in.seekg(0);
    std::vector<unsigned char> bytes(static_cast<std::size_t>(size));
    if (size > 0)
        in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in)
        throw std::runtime_error("read failed: " + path);
    return bytes;
}

// Shared record walker for both formats; elem_size is the per-coordinate
// width (4 for fvecs, 1 for bvecs).
template <typename ReadCoord>
Dataset load_vecs(const std::string& path, std::size_t elem_size, const char* format,
                  ReadCoord read_coord) {
    const std::vector<unsigned char> bytes = slurp(path);
    if (bytes.empty())
        return Dataset{};

    if (bytes.size() < 4)
        throw FormatError(std::string(format) + " " + path + ": truncated dimension field", 0);
    const std::uint32_t d = wire::u32_at(bytes.data());
    if (d < 1 || d > kMaxDim)
        throw FormatError(std::string(format) + " " + path + ": bad dimension " +
                          std::to_string(int32_t(d)), 0);

    const std::size_t record = 4 + std::size_t(d) * elem_size;
    if (bytes.size() % record != 0)
        throw FormatError(std::string(format) + " " + path + ": trailing partial record",
                          bytes.size() - bytes.size() % record);
    const std::size_t n = bytes.size() / record;

    std::vector<float> points(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t off = i * record;
        const std::uint32_t di = wire::u32_at(bytes.data() + off);
        if (di != d)
            throw FormatError(std::string(format) + " " + path + ": record dimension " +
                              std::to_string(int32_t(di)) + " does not match first record's " +
                              std::to_string(d), off);
        const unsigned char* coords = bytes.data() + off + 4;
        for (std::uint32_t j = 0; j < d; ++j)
            points[i * d + j] = read_coord(coords, j);
    }
    return Dataset(d, std::move(points));
}

} // namespace

Dataset load_fvecs(const std::string& path) {
    return load_vecs(path, 4, "fvecs", [](const unsigned char* coords, std::uint32_t j) {
        return wire::f32_at(coords + 4 * std::size_t(j));
    });
}

Dataset load_bvecs(const std::string& path) {
    return load_vecs(path, 1, "bvecs", [](const unsigned char* coords, std::uint32_t j) {
        return float(coords[j]);
    });
}

void save_fvecs(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    for (std::uint32_t i = 0; i < data.size(); ++i) {
        wire::put_u32(out, data.dim());
        const float* x = data.row(i);
        for (std::uint32_t j = 0; j < data.dim(); ++j)
            wire::put_f32(out, x[j]);
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

void save_bvecs(const std::string& path, const Dataset& data) {
    for (std::uint32_t i = 0; i < data.size(); ++i) {
        const float* x = data.row(i);
        for (std::uint32_t j = 0; j < data.dim(); ++j) {
            const float v = x[j];
            if (!(v >= 0.0f && v <= 255.0f) || v != std::floor(v))
                throw UsageError("save_bvecs: coordinate " + std::to_string(v) +
                                 " is not an integer in [0, 255]");
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    for (std::uint32_t i = 0; i < data.size(); ++i) {
        wire::put_u32(out, data.dim());
        const float* x = data.row(i);
        for (std::uint32_t j = 0; j < data.dim(); ++j)
            wire::put_u8(out, static_cast<std::uint8_t>(x[j]));
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace geraf
