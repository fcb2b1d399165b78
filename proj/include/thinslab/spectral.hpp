#pragma once

#include <functional>
#include <span>
#include <vector>

#include "thinslab/types.hpp"

namespace thinslab {

/// Periodic grid on [0, period)^dim with n_points samples per axis.
///
/// Flat index is i0 + n * i1 (axis 0 fastest). Spectral coefficients use the
/// same flat layout in FFT order: per-axis index j carries the signed
/// wavenumber k = j for j < n/2 and k = j - n otherwise, so the lattice is
/// k in {-n/2, ..., n/2 - 1} with frequency xi_k = 2 pi k / period.
struct Grid {
    int n_points = 64;
    double period = 2.0 * kPi;
    int dim = 1;

    /// Throws GridError unless n_points is a power of two >= 8, period > 0
    /// and dim is 1 or 2.
    void validate() const;

    std::size_t size() const { return dim == 1 ? std::size_t(n_points) : std::size_t(n_points) * n_points; }
    double spacing() const { return period / n_points; }
    int wavenumber(int axis_index) const { return axis_index < n_points / 2 ? axis_index : axis_index - n_points; }

    Coord position(std::size_t flat) const;
    Coord frequency(std::size_t flat) const;

    bool operator==(const Grid&) const = default;
};

/// Sampled complex function on a Grid.
class Field {
public:
    Field() = default;
    /// Zero field.
    explicit Field(const Grid& grid);
    /// Throws GridError on length mismatch and ArgumentError on non-finite values.
    Field(const Grid& grid, std::vector<Complex> values);

    static Field sample(const Grid& grid, const std::function<Complex(const Coord&)>& f);

    const Grid& grid() const { return grid_; }
    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    std::size_t size() const { return values_.size(); }
    Complex operator[](std::size_t i) const { return values_[i]; }
    Complex& operator[](std::size_t i) { return values_[i]; }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(Complex factor);

private:
    Grid grid_;
    std::vector<Complex> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Complex factor, Field a);

/// Unitary discrete Fourier image of a Field.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(const Grid& grid, std::vector<Complex> coeffs);

    const Grid& grid() const { return grid_; }
    std::span<const Complex> coeffs() const { return coeffs_; }
    std::span<Complex> coeffs() { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    Complex operator[](std::size_t i) const { return coeffs_[i]; }
    Complex& operator[](std::size_t i) { return coeffs_[i]; }

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

/// coeffs_k = N^{-1/2} sum_j u_j exp(-i xi_k . x_j)
SpectralField forward(const Field& f);
/// u_j = N^{-1/2} sum_k coeffs_k exp(i xi_k . x_j)
Field inverse(const SpectralField& F);

enum class FftDirection { Forward, Inverse };

/// In-place unitary transform of raw data laid out on `grid`.
void fft_inplace(const Grid& grid, std::span<Complex> data, FftDirection direction);

/// Euclidean norm of the sample vector (equals the s = 0 Sobolev norm).
double l2_norm(const Field& f);

/// (sum_k <xi_k>^{2s} |coeffs_k|^2)^{1/2}
double sobolev_norm(const SpectralField& F, double s);
double sobolev_norm(const Field& f, double s);

/// Fourier multiplier by <xi>^r.
Field apply_weight(const Field& f, double r);
SpectralField apply_weight(const SpectralField& F, double r);

/// Throws ArgumentError unless both fields live on the same grid.
void require_same_grid(const Grid& a, const Grid& b);

}  // namespace thinslab
