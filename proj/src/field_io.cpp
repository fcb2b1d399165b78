#include "thinslab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "thinslab/error.hpp"

namespace thinslab {

static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");

namespace {

template <class T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T value{};
    if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw FormatError("truncated field header");
    return value;
}

}  // namespace

void write_field(std::ostream& out, const Field& f) {
    out.write(kFieldMagic, 4);
    put<std::uint16_t>(out, kFieldFormatVersion);
    put<std::uint16_t>(out, std::uint16_t(f.grid().dim));
    put<std::uint32_t>(out, std::uint32_t(f.grid().n_points));
    put<std::uint32_t>(out, 0u);
    put<double>(out, f.grid().period);
    for (const Complex& v : f.values()) {
        put<double>(out, v.real());
        put<double>(out, v.imag());
    }
}

void write_field(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot open " + path.string() + " for writing");
    write_field(out, f);
}

Field read_field(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kFieldMagic, 4) != 0) throw FormatError("bad magic, expected TSLB");
    const auto version = get<std::uint16_t>(in);
    if (version != kFieldFormatVersion) throw FormatError("unsupported field format version " + std::to_string(version));
    Grid grid;
    grid.dim = get<std::uint16_t>(in);
    grid.n_points = int(get<std::uint32_t>(in));
    const auto kind = get<std::uint32_t>(in);
    if (kind != 0) throw FormatError("payload is not a field (kind " + std::to_string(kind) + ")");
    grid.period = get<double>(in);
    try {
        grid.validate();
    } catch (const GridError& e) {
        throw FormatError(std::string("invalid grid in header: ") + e.what());
    }
    std::vector<Complex> values(grid.size());
    for (Complex& v : values) {
        double re = 0.0;
        double im = 0.0;
        if (!in.read(reinterpret_cast<char*>(&re), 8) || !in.read(reinterpret_cast<char*>(&im), 8))
            throw FormatError("truncated field payload");
        v = {re, im};
    }
    return Field(grid, std::move(values));
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open " + path.string());
    return read_field(in);
}

void write_magnitude_csv(std::ostream& out, const Field& f) {
    const Grid& g = f.grid();
    out << (g.dim == 1 ? "x,abs_u\n" : "x0,x1,abs_u\n");
    char buf[128];
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Coord x = g.position(i);
        if (g.dim == 1)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x[0], std::abs(f[i]));
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x[0], x[1], std::abs(f[i]));
        out << buf;
    }
}

}  // namespace thinslab
