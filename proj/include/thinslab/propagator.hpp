#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "thinslab/spectral.hpp"
#include "thinslab/symbols.hpp"

namespace thinslab {

/// Symbol frozen at the bottom of the slab.
struct Frozen {};
/// Symbol replaced by its mean over the slab.
struct Averaged {
    int quadrature_order = 4;
};
using SlabVariant = std::variant<Frozen, Averaged>;

std::string to_string(const SlabVariant& v);

inline constexpr double kDefaultMaxThickness = 1.0 / 8.0;

struct PropagatorConfig {
    /// Largest admissible slab thickness Delta_max.
    double max_thickness = kDefaultMaxThickness;
};

/// One slab [z, z_prime] of the propagator.
struct SlabSpec {
    double z = 0.0;
    double z_prime = 0.0;
    SymbolSpec symbol;
    SlabVariant variant = Frozen{};

    double thickness() const { return z_prime - z; }

    /// Throws InvalidSlabError unless 0 <= z < z_prime, and SlabTooThickError
    /// when the thickness exceeds config.max_thickness.
    void validate(const PropagatorConfig& config) const;
};

/// Exponent of the slab multiplier at (x, xi): -Delta a(z, x, xi) for the
/// frozen variant, -int_z^{z'} a(s, x, xi) ds for the averaged one.
Complex slab_exponent(const SlabSpec& slab, const Coord& x, const Coord& xi);

/// u'(x') = N^{-1/2} sum_k exp(i xi_k x') exp(E(x', xi_k)) coeffs_k, the
/// x'-dependent multiplier applied by direct frequency summation, O(N^2).
using ExponentFn = std::function<Complex(const Coord& x, const Coord& xi)>;
Field apply_exponential_symbol(const SpectralField& coeffs, const ExponentFn& exponent);

/// Same summation with a plain multiplier m(x', xi) instead of exp(E).
Field apply_symbol_operator(const SpectralField& coeffs, const ExponentFn& multiplier);

/// Thin-slab operator for either variant. Throws as SlabSpec::validate.
Field thin_slab_apply(const SlabSpec& slab, const Field& u, const PropagatorConfig& config = {});

/// a(z, x, D_x) u by the same direct summation.
Field apply_symbol(const SymbolSpec& spec, double z, const Field& u);

/// Exact solution operator for an x-independent symbol:
/// coeffs_k <- exp(-int_{z0}^{z1} a(s, xi_k) ds) coeffs_k.
/// Throws ContractError when the spec is not flagged x-independent and
/// InvalidSlabError unless z0 < z1.
Field exact_multiplier_evolution(const SymbolSpec& spec, double z0, double z1, const Field& u,
                                 int quadrature_order = 8);

/// Dense matrix of one slab on a grid.
struct PropagatorMatrix {
    Grid grid;
    Eigen::MatrixXcd entries;

    Field apply(const Field& u) const;
};

inline constexpr std::size_t kMaxMatrixPoints = 4096;

/// Column j is the slab operator applied to the j-th unit field. Throws
/// SizeError when the grid has more than kMaxMatrixPoints points.
PropagatorMatrix assemble_matrix(const SlabSpec& slab, const Grid& grid, const PropagatorConfig& config = {});

/// Row-major export in the field binary layout (payload kind 1).
void write_matrix(const std::filesystem::path& path, const PropagatorMatrix& m);

struct NormOptions {
    double tol = 1e-13;
    int max_iter = 20000;
};

inline constexpr Eigen::Index kNormBlockSize = 8;

/// Largest singular value of D_s M D_s^{-1}, D_s being <xi>^s conjugated
/// through the DFT: the H^(s) -> H^(s) norm of the discrete operator.
///
/// Block power iteration (kNormBlockSize vectors) on the Gram matrix
/// G = B^* B of the weighted operator, with a Rayleigh-Ritz step after each
/// multiplication. G is first raised to a power 2^p by repeated squaring (p
/// shrinks with the matrix size). Iteration stops once successive leading
/// Ritz values differ by less than tol * value. The seed block is fixed, so
/// results are deterministic.
/// Throws ConvergenceError carrying the last estimate after max_iter steps.
double operator_norm_hs(const PropagatorMatrix& matrix, double s, const NormOptions& options = {});

/// H^(s) norm of M(z'', z) - M(z'', z') M(z', z).
double semigroup_defect(const SymbolSpec& spec, double z, double z_mid, double z_end, double s, const Grid& grid,
                        const SlabVariant& variant = Frozen{}, const PropagatorConfig& config = {},
                        const NormOptions& options = {});

struct NormSweepPoint {
    double delta = 0.0;
    double norm = 0.0;
    /// (norm - 1) / delta
    double growth = 0.0;
};

inline constexpr double kContractionSlack = 1e-9;

struct NormSweep {
    double s = 0.0;
    std::vector<NormSweepPoint> points;
    /// Every norm is at most 1 + kContractionSlack.
    bool contractive = false;
    /// max / min of growth over the sweep; infinite when some growth is not
    /// positive while the sweep is not contractive.
    double growth_ratio = 0.0;
};

/// operator_norm_hs of the slab [z0, z0 + delta] for every delta.
NormSweep norm_sweep(const SymbolSpec& spec, const Grid& grid, double s, const std::vector<double>& deltas,
                     double z0 = 0.0, const SlabVariant& variant = Frozen{}, const PropagatorConfig& config = {},
                     const NormOptions& options = {});

}  // namespace thinslab
