#include "zygwave/fieldio.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace zyg {

namespace {

constexpr char kMagic[4] = {'Z', 'Y', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kDtypeComplex128 = 0;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_field(const std::string& path, const ScalarField& u) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    require(os.good(), "write_field: cannot open " + path);
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(u.grid().n));
    put_u32(os, static_cast<std::uint32_t>(u.grid().dim));
    put_u32(os, kDtypeComplex128);
    for (const cplx& z : u.samples()) {
        put_f64(os, z.real());
        put_f64(os, z.imag());
    }
    require(os.good(), "write_field: write failure on " + path);
}

ScalarField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), "read_field: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    require(is.good() && std::memcmp(magic, kMagic, 4) == 0,
            "read_field: bad magic in " + path);
    const std::uint32_t version = get_u32(is);
    require(version == kVersion, "read_field: unsupported version in " + path);
    const std::uint32_t n = get_u32(is);
    const std::uint32_t dim = get_u32(is);
    const std::uint32_t dtype = get_u32(is);
    require(dtype == kDtypeComplex128, "read_field: unsupported dtype in " + path);
    const PeriodicGrid g = make_grid(static_cast<int>(n), static_cast<int>(dim));
    std::vector<cplx> samples(g.size());
    for (std::size_t m = 0; m < samples.size(); ++m) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        samples[m] = cplx(re, im);
    }
    require(is.good(), "read_field: truncated payload in " + path);
    return ScalarField::from_samples(g, std::move(samples));
}

}  // namespace zyg
