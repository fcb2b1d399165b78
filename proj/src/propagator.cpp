#include "thinslab/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "thinslab/error.hpp"
#include "thinslab/field_io.hpp"
#include "thinslab/parallel.hpp"

namespace thinslab {

std::string to_string(const SlabVariant& v) {
    if (std::holds_alternative<Frozen>(v)) return "frozen";
    return "averaged(" + std::to_string(std::get<Averaged>(v).quadrature_order) + ")";
}

void SlabSpec::validate(const PropagatorConfig& config) const {
    std::ostringstream os;
    if (!(z >= 0.0) || !(z_prime > z)) {
        os << "slab [" << z << ", " << z_prime << "] must satisfy 0 <= z < z'";
        throw InvalidSlabError(os.str());
    }
    // Subdivision points are computed as i*Z/N; allow the last ulp.
    if (thickness() > config.max_thickness * (1.0 + 1e-12)) {
        os << "slab thickness " << thickness() << " exceeds Delta_max = " << config.max_thickness;
        throw SlabTooThickError(os.str());
    }
}

Complex slab_exponent(const SlabSpec& slab, const Coord& x, const Coord& xi) {
    const double width = slab.thickness();
    if (std::holds_alternative<Frozen>(slab.variant)) return -width * eval(slab.symbol, slab.z, x, xi);
    const int order = std::get<Averaged>(slab.variant).quadrature_order;
    return -width * averaged(slab.symbol, slab.z, slab.z_prime, x, xi, order);
}

namespace {

struct Lattice {
    std::vector<Coord> positions;
    std::vector<Coord> frequencies;
};

Lattice lattice_of(const Grid& grid) {
    Lattice l;
    l.positions.resize(grid.size());
    l.frequencies.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        l.positions[i] = grid.position(i);
        l.frequencies[i] = grid.frequency(i);
    }
    return l;
}

// out_j = scale * sum_k term(j, k) coeffs_k, rows in parallel.
template <class Term>
Field summation(const SpectralField& coeffs, Term&& term) {
    const Grid& grid = coeffs.grid();
    const std::size_t n = grid.size();
    const Lattice lat = lattice_of(grid);
    const double scale = 1.0 / std::sqrt(double(n));
    Field out(grid);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const Coord& x = lat.positions[j];
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                if (coeffs[k] == Complex{0.0, 0.0}) continue;
                acc += term(x, lat.frequencies[k]) * coeffs[k];
            }
            out[j] = scale * acc;
        }
    });
    for (const Complex& v : out.values())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("multiplier", "operator application produced non-finite values");
    return out;
}

double phase(const Coord& x, const Coord& xi) { return x[0] * xi[0] + x[1] * xi[1]; }

}  // namespace

Field apply_exponential_symbol(const SpectralField& coeffs, const ExponentFn& exponent) {
    return summation(coeffs, [&](const Coord& x, const Coord& xi) {
        const Complex e = exponent(x, xi);
        return std::exp(Complex{e.real(), e.imag() + phase(x, xi)});
    });
}

Field apply_symbol_operator(const SpectralField& coeffs, const ExponentFn& multiplier) {
    return summation(coeffs, [&](const Coord& x, const Coord& xi) {
        return multiplier(x, xi) * std::polar(1.0, phase(x, xi));
    });
}

Field thin_slab_apply(const SlabSpec& slab, const Field& u, const PropagatorConfig& config) {
    slab.validate(config);
    return apply_exponential_symbol(forward(u), [&slab](const Coord& x, const Coord& xi) {
        return slab_exponent(slab, x, xi);
    });
}

Field apply_symbol(const SymbolSpec& spec, double z, const Field& u) {
    return apply_symbol_operator(forward(u),
                                 [&spec, z](const Coord& x, const Coord& xi) { return eval(spec, z, x, xi); });
}

Field exact_multiplier_evolution(const SymbolSpec& spec, double z0, double z1, const Field& u, int quadrature_order) {
    if (!spec.x_independent)
        throw ContractError("exact multiplier evolution needs an x-independent symbol; '" + spec.name + "' is not");
    if (!(z1 > z0)) {
        std::ostringstream os;
        os << "evolution interval [" << z0 << ", " << z1 << "] is empty or reversed";
        throw InvalidSlabError(os.str());
    }
    SpectralField coeffs = forward(u);
    const Coord origin{0.0, 0.0};
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const Complex mean = averaged(spec, z0, z1, origin, coeffs.grid().frequency(k), quadrature_order);
        coeffs[k] *= std::exp(-(z1 - z0) * mean);
    }
    return inverse(coeffs);
}

Field PropagatorMatrix::apply(const Field& u) const {
    require_same_grid(grid, u.grid());
    const Eigen::Map<const Eigen::VectorXcd> in(u.values().data(), Eigen::Index(u.size()));
    const Eigen::VectorXcd out = entries * in;
    return Field(grid, std::vector<Complex>(out.data(), out.data() + out.size()));
}

PropagatorMatrix assemble_matrix(const SlabSpec& slab, const Grid& grid, const PropagatorConfig& config) {
    grid.validate();
    slab.validate(config);
    const std::size_t n = grid.size();
    if (n > kMaxMatrixPoints) {
        std::ostringstream os;
        os << "dense assembly limited to " << kMaxMatrixPoints << " grid points, got " << n;
        throw SizeError(os.str());
    }
    const Lattice lat = lattice_of(grid);
    const double scale = 1.0 / std::sqrt(double(n));

    PropagatorMatrix m{grid, Eigen::MatrixXcd(Eigen::Index(n), Eigen::Index(n))};
    // M_jl = N^{-1/2} [F_unitary(E_j)]_l with E_jk = exp(i xi_k x_j + exponent).
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        std::vector<Complex> row(n);
        for (std::size_t j = begin; j < end; ++j) {
            const Coord& x = lat.positions[j];
            for (std::size_t k = 0; k < n; ++k) {
                const Complex e = slab_exponent(slab, x, lat.frequencies[k]);
                row[k] = std::exp(Complex{e.real(), e.imag() + phase(x, lat.frequencies[k])});
            }
            fft_inplace(grid, row, FftDirection::Forward);
            for (std::size_t l = 0; l < n; ++l) m.entries(Eigen::Index(j), Eigen::Index(l)) = scale * row[l];
        }
    });
    return m;
}

void write_matrix(const std::filesystem::path& path, const PropagatorMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot open " + path.string() + " for writing");
    auto put = [&out](auto v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
    out.write(kFieldMagic, 4);
    put(std::uint16_t(kFieldFormatVersion));
    put(std::uint16_t(m.grid.dim));
    put(std::uint32_t(m.grid.n_points));
    put(std::uint32_t(1));
    put(double(m.grid.period));
    for (Eigen::Index j = 0; j < m.entries.rows(); ++j)
        for (Eigen::Index l = 0; l < m.entries.cols(); ++l) {
            put(m.entries(j, l).real());
            put(m.entries(j, l).imag());
        }
}

namespace {

// Conjugates M by the unitary DFT, F M F^{-1}, then weights rows by <xi_k>^s
// and columns by <xi_l>^{-s}.
Eigen::MatrixXcd weighted_spectral_form(const PropagatorMatrix& matrix, double s) {
    const Grid& grid = matrix.grid;
    const Eigen::Index n = matrix.entries.rows();
    Eigen::MatrixXcd t = matrix.entries;
    std::vector<Complex> buf(static_cast<std::size_t>(n));
    auto transform_columns = [&](Eigen::MatrixXcd& a) {
        for (Eigen::Index c = 0; c < n; ++c) {
            for (Eigen::Index r = 0; r < n; ++r) buf[std::size_t(r)] = a(r, c);
            fft_inplace(grid, buf, FftDirection::Forward);
            for (Eigen::Index r = 0; r < n; ++r) a(r, c) = buf[std::size_t(r)];
        }
    };
    transform_columns(t);                // F M
    Eigen::MatrixXcd u = t.adjoint();    // (F M)^*
    transform_columns(u);                // F (F M)^*
    Eigen::MatrixXcd b = u.adjoint();    // F M F^*
    if (s != 0.0) {
        Eigen::VectorXd w(n);
        for (Eigen::Index k = 0; k < n; ++k) w(k) = std::pow(bracket(grid.frequency(std::size_t(k))), s);
        b = w.asDiagonal() * b * w.cwiseInverse().asDiagonal();
    }
    return b;
}

int squarings_for(Eigen::Index n) {
    if (n <= 512) return 10;
    if (n <= 1024) return 4;
    return 0;
}

}  // namespace

double operator_norm_hs(const PropagatorMatrix& matrix, double s, const NormOptions& options) {
    if (!(options.tol > 0.0)) throw ArgumentError("operator norm tolerance must be positive");
    if (options.max_iter < 1) throw ArgumentError("operator norm needs max_iter >= 1");
    const Eigen::MatrixXcd b = weighted_spectral_form(matrix, s);
    const Eigen::MatrixXcd gram = b.adjoint() * b;
    const double gram_scale = gram.norm();
    if (gram_scale == 0.0) return 0.0;

    Eigen::MatrixXcd power = gram / gram_scale;
    for (int i = 0; i < squarings_for(b.rows()); ++i) {
        Eigen::MatrixXcd next = power * power;
        const double nrm = next.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
        power = next / nrm;
    }

    // Block iteration with a Rayleigh-Ritz step: leading singular values of
    // these operators come in close pairs, which stall single-vector iteration.
    const Eigen::Index block = std::min<Eigen::Index>(b.rows(), kNormBlockSize);
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd v(b.rows(), block);
    for (Eigen::Index j = 0; j < block; ++j)
        for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = {normal(rng), normal(rng)};

    // Largest Ritz value of G on span(x); x is replaced by the Ritz vectors.
    auto ritz = [&b, block](Eigen::MatrixXcd& x) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
        const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(x.rows(), block);
        const Eigen::MatrixXcd bq = b * q;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(bq.adjoint() * bq);
        x = q * eig.eigenvectors();
        return eig.eigenvalues()(block - 1);
    };
    double previous = ritz(v);
    for (int it = 1; it <= options.max_iter; ++it) {
        v = power * v;
        const double current = ritz(v);
        if (std::abs(current - previous) <= options.tol * std::max(std::abs(current), 1e-300))
            return std::sqrt(std::max(current, 0.0));
        previous = current;
    }
    throw ConvergenceError("power iteration did not converge", std::sqrt(std::max(previous, 0.0)), options.max_iter);
}

double semigroup_defect(const SymbolSpec& spec, double z, double z_mid, double z_end, double s, const Grid& grid,
                        const SlabVariant& variant, const PropagatorConfig& config, const NormOptions& options) {
    if (!(z < z_mid && z_mid < z_end)) throw InvalidSlabError("semigroup defect needs z < z' < z''");
    const PropagatorMatrix whole = assemble_matrix({z, z_end, spec, variant}, grid, config);
    const PropagatorMatrix first = assemble_matrix({z, z_mid, spec, variant}, grid, config);
    const PropagatorMatrix second = assemble_matrix({z_mid, z_end, spec, variant}, grid, config);
    PropagatorMatrix defect{grid, whole.entries - second.entries * first.entries};
    return operator_norm_hs(defect, s, options);
}

NormSweep norm_sweep(const SymbolSpec& spec, const Grid& grid, double s, const std::vector<double>& deltas, double z0,
                     const SlabVariant& variant, const PropagatorConfig& config, const NormOptions& options) {
    if (deltas.empty()) throw ArgumentError("norm sweep needs at least one thickness");
    NormSweep sweep;
    sweep.s = s;
    sweep.contractive = true;
    for (double delta : deltas) {
        const double nrm = operator_norm_hs(assemble_matrix({z0, z0 + delta, spec, variant}, grid, config), s, options);
        sweep.points.push_back({delta, nrm, (nrm - 1.0) / delta});
        if (nrm > 1.0 + kContractionSlack) sweep.contractive = false;
    }
    if (sweep.contractive) return sweep;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const NormSweepPoint& p : sweep.points) {
        lo = std::min(lo, p.growth);
        hi = std::max(hi, p.growth);
    }
    sweep.growth_ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    return sweep;
}

}  // namespace thinslab
