#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "thinslab/spectral.hpp"

namespace thinslab {

/// Binary layout, little-endian:
///
///   offset  size  content
///        0     4  magic "TSLB"
///        4     2  version (u16, currently 1)
///        6     2  dim (u16)
///        8     4  n_points per axis (u32)
///       12     4  payload kind (u32): 0 = field, 1 = row-major matrix
///       16     8  period (f64)
///       24     -  interleaved (re, im) f64 pairs
///
/// A field payload holds grid.size() values; a matrix payload holds
/// grid.size()^2 values, row by row.
inline constexpr char kFieldMagic[4] = {'T', 'S', 'L', 'B'};
inline constexpr std::uint16_t kFieldFormatVersion = 1;

void write_field(std::ostream& out, const Field& f);
void write_field(const std::filesystem::path& path, const Field& f);
/// Throws FormatError on bad magic, version, kind or truncated payload.
Field read_field(std::istream& in);
Field read_field(const std::filesystem::path& path);

/// CSV with columns x, abs_u (1D) or x0, x1, abs_u (2D); 17 significant digits.
void write_magnitude_csv(std::ostream& out, const Field& f);

}  // namespace thinslab
