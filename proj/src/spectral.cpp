#include "thinslab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "thinslab/error.hpp"

namespace thinslab {

void Grid::validate() const {
    std::ostringstream os;
    if (dim != 1 && dim != 2) {
        os << "grid dimension must be 1 or 2, got " << dim;
        throw GridError(os.str());
    }
    if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
        os << "grid needs a power of two >= 8 points per axis, got " << n_points;
        throw GridError(os.str());
    }
    if (!(period > 0.0) || !std::isfinite(period)) {
        os << "grid period must be positive and finite, got " << period;
        throw GridError(os.str());
    }
}

Coord Grid::position(std::size_t flat) const {
    const double h = spacing();
    if (dim == 1) return {h * double(flat), 0.0};
    return {h * double(flat % n_points), h * double(flat / n_points)};
}

Coord Grid::frequency(std::size_t flat) const {
    const double unit = 2.0 * kPi / period;
    if (dim == 1) return {unit * wavenumber(int(flat)), 0.0};
    return {unit * wavenumber(int(flat % n_points)), unit * wavenumber(int(flat / n_points))};
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) {
        std::ostringstream os;
        os << "grid mismatch: (n=" << a.n_points << ", period=" << a.period << ", dim=" << a.dim << ") vs (n="
           << b.n_points << ", period=" << b.period << ", dim=" << b.dim << ")";
        throw ArgumentError(os.str());
    }
}

Field::Field(const Grid& grid) : grid_(grid), values_(grid.size()) { grid_.validate(); }

Field::Field(const Grid& grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.size()) {
        std::ostringstream os;
        os << "field has " << values_.size() << " samples, grid expects " << grid_.size();
        throw GridError(os.str());
    }
    for (const Complex& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ArgumentError("field contains non-finite values");
}

Field Field::sample(const Grid& grid, const std::function<Complex(const Coord&)>& f) {
    Field out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.position(i));
    return out;
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(Complex factor) {
    for (Complex& v : values_) v *= factor;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Complex factor, Field a) { return a *= factor; }

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    grid_.validate();
    if (coeffs_.size() != grid_.size()) throw GridError("spectral coefficient count does not match grid");
}

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (n, dim, sign) and never destroyed.
fftw_plan plan_for(const Grid& grid, int sign) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, fftw_plan> plans;
    const std::lock_guard lock(mutex);
    const auto key = std::make_tuple(grid.n_points, grid.dim, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;

    std::vector<Complex> scratch(grid.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = grid.dim == 1 ? fftw_plan_dft_1d(grid.n_points, buf, buf, sign, flags)
                                   : fftw_plan_dft_2d(grid.n_points, grid.n_points, buf, buf, sign, flags);
    plans.emplace(key, plan);
    return plan;
}

}  // namespace

void fft_inplace(const Grid& grid, std::span<Complex> data, FftDirection direction) {
    if (data.size() != grid.size()) throw GridError("transform buffer does not match grid");
    const int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan_for(grid, sign), buf, buf);
    const double scale = 1.0 / std::sqrt(double(grid.size()));
    for (Complex& v : data) v *= scale;
}

SpectralField forward(const Field& f) {
    std::vector<Complex> data(f.values().begin(), f.values().end());
    fft_inplace(f.grid(), data, FftDirection::Forward);
    return SpectralField(f.grid(), std::move(data));
}

Field inverse(const SpectralField& F) {
    std::vector<Complex> data(F.coeffs().begin(), F.coeffs().end());
    fft_inplace(F.grid(), data, FftDirection::Inverse);
    Field out(F.grid());
    std::copy(data.begin(), data.end(), out.values().begin());
    return out;
}

double l2_norm(const Field& f) {
    double sum = 0.0;
    for (const Complex& v : f.values()) sum += std::norm(v);
    return std::sqrt(sum);
}

double sobolev_norm(const SpectralField& F, double s) {
    double sum = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double w = s == 0.0 ? 1.0 : std::pow(bracket(F.grid().frequency(k)), 2.0 * s);
        sum += w * std::norm(F[k]);
    }
    return std::sqrt(sum);
}

double sobolev_norm(const Field& f, double s) { return sobolev_norm(forward(f), s); }

SpectralField apply_weight(const SpectralField& F, double r) {
    SpectralField out = F;
    if (r == 0.0) return out;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] *= std::pow(bracket(F.grid().frequency(k)), r);
    return out;
}

Field apply_weight(const Field& f, double r) {
    if (r == 0.0) return f;
    return inverse(apply_weight(forward(f), r));
}

}  // namespace thinslab
