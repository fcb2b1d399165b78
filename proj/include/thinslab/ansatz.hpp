#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thinslab/propagator.hpp"
#include "thinslab/spectral.hpp"
#include "thinslab/symbols.hpp"

namespace thinslab {

/// Constant-step partition 0 = z_0 < z_1 < ... < z_N = Z.
struct Subdivision {
    double Z = 1.0;
    int N = 1;

    /// Throws SubdivisionError unless Z > 0 and N >= 1.
    static Subdivision uniform(double Z, int N);

    double step() const { return Z / N; }
    /// z_i, with z_N returned as exactly Z.
    double point(int i) const { return i >= N ? Z : Z * i / N; }
    std::vector<double> points() const;

    /// Throws SubdivisionError when the step exceeds config.max_thickness.
    void require_admissible(const PropagatorConfig& config) const;
};

/// Called after every full slab with the slab index k (1-based), z_k and the
/// field there.
using SlabObserver = std::function<void(int k, double z, const Field& u)>;

/// Left-to-right composition of thin-slab operators: all full slabs up to the
/// last z_k <= z, then one partial slab [z_k, z] unless z coincides with z_k.
Field apply_ansatz(const SymbolSpec& spec, const Subdivision& subdivision, const SlabVariant& variant,
                   const Field& u0, double z, const PropagatorConfig& config = {},
                   const SlabObserver& observer = {});

struct ReferenceMode {
    enum class Kind { ExactMultiplier, FineStep };
    Kind kind = Kind::ExactMultiplier;
    int n_ref = 0;

    static ReferenceMode exact() { return {Kind::ExactMultiplier, 0}; }
    static ReferenceMode fine_step(int n_ref) { return {Kind::FineStep, n_ref}; }
    std::string describe() const;
};

/// ExactMultiplier: exact_multiplier_evolution over [0, z]. FineStep: the
/// averaged Ansatz with n_ref slabs over [0, z].
Field reference_solution(const SymbolSpec& spec, const Field& u0, double z, const ReferenceMode& mode,
                         const PropagatorConfig& config = {}, int quadrature_order = 4);

/// H^(s) norm of (d_z + a(z, x, D_x)) W_{P,z} u0. The z-derivative of the
/// partial slab is taken in closed form from its exponent. Throws
/// PositionError when z lies within Delta_P / 64 of a slab boundary, where
/// the derivative jumps.
double residual_norm(const SymbolSpec& spec, const Subdivision& subdivision, const SlabVariant& variant,
                     const Field& u0, double z, double s, const PropagatorConfig& config = {});

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual of the fit.
    double residual = 0.0;
};

/// Ordinary least squares y = intercept + slope x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

inline constexpr double kExactThreshold = 1e-10;
inline constexpr double kMaxFitResidual = 0.1;

struct ConvergenceReport {
    double s = 0.0;
    double Z = 1.0;
    std::string scenario;
    std::string variant;
    std::vector<int> Ns;
    std::vector<double> deltas;
    /// ||W_{P,Z} u0 - u_ref||_{H^s}
    std::vector<double> errors;
    /// errors / ||u0||_{H^{s+1}}
    std::vector<double> normalized_errors;
    /// Unset when the run is exact or an error vanished.
    std::optional<double> fitted_slope;
    double fit_residual = 0.0;
    bool dropped_coarse = false;
    bool exact = false;
    ReferenceMode reference;
    /// FineStep only: ||u_ref(n_ref) - u_ref(n_ref/2)||_{H^s} / ||u0||_{H^{s+1}}.
    std::optional<double> reference_self_error;

    /// e_{i+1} <= (1 + tolerance) e_i for every consecutive pair.
    bool monotone(double tolerance = 0.05) const;
};

/// Errors of the Ansatz at z = Z against a reference for every N, and the
/// log-log slope of normalized error against Delta_P. The two coarsest
/// points are dropped from the fit when the fit residual exceeds
/// kMaxFitResidual (recorded in dropped_coarse).
ConvergenceReport convergence_study(const SymbolSpec& spec, const Field& u0, double s, std::span<const int> Ns,
                                    const SlabVariant& variant, const ReferenceMode& reference, double Z = 1.0,
                                    const PropagatorConfig& config = {});

struct UniformBoundReport {
    double sup_ratio = 0.0;
    std::vector<int> Ns;
    /// Supremum for each N over slab endpoints and the family.
    std::vector<double> per_n;

    /// (max - min) / min of per_n.
    double spread() const;
};

/// sup over N, slab endpoints z_k (k = 0..N) and u0 in the family of
/// ||W_{P,z_k} u0||_{H^s} / ||u0||_{H^s}.
UniformBoundReport uniform_bound_check(const SymbolSpec& spec, std::span<const Field> family, double s,
                                       std::span<const int> Ns, double Z = 1.0,
                                       const SlabVariant& variant = Frozen{}, const PropagatorConfig& config = {});

/// exp(-|x - x0|^2 / (2 sigma^2)) exp(i k0 x_0) on the grid.
Field wave_packet(const Grid& grid, double x0, double sigma, double k0);
/// Packet centred at period/2 with sigma = period/40 and k0 = 8 (2 pi / period).
Field default_packet(const Grid& grid);
/// Deterministic family of packets with centres and carrier wavenumbers drawn from `seed`.
std::vector<Field> packet_family(const Grid& grid, int count, std::uint64_t seed);

}  // namespace thinslab
