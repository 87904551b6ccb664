#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "taxfuse/classifier.hpp"
#include "taxfuse/error.hpp"

namespace taxfuse {

// Model file: "TAXF", version u32, feature_dim u32, node_count u32,
// taxonomy fingerprint (32 raw bytes), weights row-major f64, bias f64.
// All integers and floats little-endian.
inline constexpr std::uint32_t kModelFormatVersion = 1;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

inline std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline double get_f64(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

inline std::string hex_to_bytes(const std::string& hex) {
    if (hex.size() != 64) raise(Errc::FormatError, "fingerprint must be 64 hex digits");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        raise(Errc::FormatError, "bad hex digit in fingerprint");
    };
    std::string out;
    out.reserve(32);
    for (std::size_t i = 0; i < 64; i += 2) {
        out.push_back(static_cast<char>((nib(hex[i]) << 4) | nib(hex[i + 1])));
    }
    return out;
}

inline std::string bytes_to_hex(const unsigned char* p, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back(digits[p[i] >> 4]);
        s.push_back(digits[p[i] & 0xF]);
    }
    return s;
}

}  // namespace detail

inline std::string serialize_model(const ClassifierModel& m) {
    std::string out = "TAXF";
    out.reserve(48 + 8 * (m.weights.size() + m.bias.size()));
    detail::put_u32(out, kModelFormatVersion);
    detail::put_u32(out, m.feature_dim);
    detail::put_u32(out, static_cast<std::uint32_t>(m.node_count));
    out += detail::hex_to_bytes(m.taxonomy_fingerprint);
    for (double v : m.weights) detail::put_f64(out, v);
    for (double v : m.bias) detail::put_f64(out, v);
    return out;
}

inline void save_model(const ClassifierModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::IoError, "cannot write '" + path + "'");
    std::string bytes = serialize_model(m);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) raise(Errc::IoError, "short write to '" + path + "'");
}

inline ClassifierModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
    unsigned char header[48];
    if (!in.read(reinterpret_cast<char*>(header), sizeof header)) {
        raise(Errc::FormatError, "'" + path + "': truncated header");
    }
    if (std::memcmp(header, "TAXF", 4) != 0) raise(Errc::FormatError, "'" + path + "': bad magic");
    std::uint32_t version = detail::get_u32(header + 4);
    if (version != kModelFormatVersion) {
        raise(Errc::VersionError, "'" + path + "': unsupported format version " + std::to_string(version));
    }
    ClassifierModel m;
    m.feature_dim = detail::get_u32(header + 8);
    m.node_count = static_cast<int>(detail::get_u32(header + 12));
    if (m.feature_dim == 0 || m.node_count <= 0) raise(Errc::FormatError, "'" + path + "': bad dimensions");
    m.taxonomy_fingerprint = detail::bytes_to_hex(header + 16, 32);

    const std::size_t n_weights = static_cast<std::size_t>(m.node_count) * m.feature_dim;
    m.weights.resize(n_weights);
    m.bias.resize(static_cast<std::size_t>(m.node_count));
    std::vector<unsigned char> buf(1 << 20);
    auto read_doubles = [&](std::vector<double>& dst) {
        std::size_t i = 0;
        while (i < dst.size()) {
            std::size_t want = std::min(buf.size() / 8, dst.size() - i) * 8;
            if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(want))) {
                raise(Errc::FormatError, "'" + path + "': truncated payload");
            }
            for (std::size_t off = 0; off < want; off += 8) dst[i++] = detail::get_f64(buf.data() + off);
        }
    };
    read_doubles(m.weights);
    read_doubles(m.bias);
    if (in.peek() != std::ifstream::traits_type::eof()) {
        raise(Errc::FormatError, "'" + path + "': trailing bytes");
    }
    for (double v : m.weights) {
        if (!std::isfinite(v)) raise(Errc::FormatError, "'" + path + "': non-finite weight");
    }
    for (double v : m.bias) {
        if (!std::isfinite(v)) raise(Errc::FormatError, "'" + path + "': non-finite bias");
    }
    return m;
}

}  // namespace taxfuse
