#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace thinslab {

using Complex = std::complex<double>;

/// Point in space or frequency. One-dimensional problems leave the second
/// component at zero so that |xi| and <xi> need no special casing.
using Coord = std::array<double, 2>;

/// Multi-index of derivative orders, one entry per axis.
using MultiIndex = std::array<int, 2>;

inline constexpr double kPi = std::numbers::pi;

inline double norm(const Coord& v) { return std::hypot(v[0], v[1]); }

/// <xi> = (1 + |xi|^2)^{1/2}
inline double bracket(const Coord& xi) { return std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]); }

inline int order(const MultiIndex& a) { return a[0] + a[1]; }

}  // namespace thinslab
