#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thinslab/symbols.hpp"
#include "thinslab/types.hpp"

namespace thinslab {

/// Symbol with z frozen, evaluated at (x, xi).
using PointSymbol = std::function<Complex(const Coord& x, const Coord& xi)>;
using RealPointSymbol = std::function<double(const Coord& x, const Coord& xi)>;

/// Sample lattice for the symbol-class checkers.
///
/// x runs over one period with `x_points` per axis. |xi| is log-spaced,
/// xi_j = expm1(j log(1 + xi_max) / (xi_points - 1)), so the lattice covers
/// both the smoothed region near the origin and the homogeneous regime.
/// Finite-difference steps are h_x along x and h_xi_relative (1 + |xi|)
/// along xi; third and fourth derivatives use wider steps (see step_for_order).
struct LatticeSpec {
    int dim = 1;
    int x_points = 64;
    double x_period = 2.0 * kPi;
    int xi_points = 64;
    double xi_max = 64.0;
    bool symmetric_xi = false;
    double h_x = 1e-4;
    double h_xi_relative = 1e-4;

    /// Lattice with every interval halved; contains all points of *this.
    LatticeSpec refined() const;

    std::vector<double> x_samples() const;
    std::vector<double> xi_samples() const;
    std::string describe() const;
};

/// Central-difference step for a derivative of order n along one axis, given
/// the base step. Orders above two are widened to keep roundoff below the
/// truncation error.
double step_for_order(double base, int n);

/// d_x^alpha d_xi^beta f at (x, xi) by tensor-product central differences.
Complex mixed_derivative(const PointSymbol& f, const Coord& x, const Coord& xi, const MultiIndex& alpha,
                         const MultiIndex& beta, const LatticeSpec& lattice);

struct SeminormEstimate {
    MultiIndex alpha{};
    MultiIndex beta{};
    double m = 0.0;
    double rho = 1.0;
    double delta = 0.0;
    double value = 0.0;
    LatticeSpec lattice;
};

/// Lattice supremum of (1+|xi|)^{-m + rho|beta| - delta|alpha|} |d_x^alpha d_xi^beta a|.
/// Throws GridError for lattices with fewer than five points per axis and
/// ArgumentError for |alpha| + |beta| > 4 or malformed class parameters.
SeminormEstimate estimate_seminorm(const PointSymbol& a, const MultiIndex& alpha, const MultiIndex& beta,
                                   double m, double rho, double delta, const LatticeSpec& lattice);

struct PLReport {
    double worst_ratio = 0.0;
    bool pass = true;
    MultiIndex worst_alpha{};
    MultiIndex worst_beta{};
    std::map<std::pair<MultiIndex, MultiIndex>, double> ratios;
};

inline constexpr double kDefaultPLConstant = 50.0;

/// Checks the refined damping estimate
///   |d_y^alpha d_eta^beta q| <= C (1+|eta|)^{-|beta| + (|alpha|+|beta|)/L} (1+q)^{1 - (|alpha|+|beta|)/L}
/// for every |alpha| + |beta| <= max_order on the lattice, reporting the
/// largest observed ratio of the two sides. pass means the ratio is finite
/// and at most c_max. Throws PreconditionError if q < 0 anywhere on the lattice.
PLReport check_PL(const RealPointSymbol& q, int L, const LatticeSpec& lattice, int max_order = 2,
                  double c_max = kDefaultPLConstant);

struct QLReport {
    double rho = 0.0;
    double delta = 0.0;
    /// Supremum over the Delta list, keyed by (alpha, beta).
    std::map<std::pair<MultiIndex, MultiIndex>, double> sup_seminorms;
    /// per_delta[i][j] is the seminorm for deltas[i] and indices[j].
    std::vector<std::pair<MultiIndex, MultiIndex>> indices;
    std::vector<std::vector<double>> per_delta;
    std::vector<double> deltas;
    bool uniform = true;
};

inline constexpr double kDefaultUniformityFactor = 10.0;

/// S^0_{1-1/L, 1/L} seminorms of exp(-Delta q) for each Delta. The family is
/// reported uniform when, for every multi-index, the supremum over the list
/// stays within `factor` of the value at the largest Delta.
QLReport check_QL_family(const RealPointSymbol& q, int L, std::span<const double> deltas,
                         const LatticeSpec& lattice, int max_order = 2,
                         double factor = kDefaultUniformityFactor);

/// All (alpha, beta) pairs with |alpha| + |beta| <= max_order in `dim` dimensions.
std::vector<std::pair<MultiIndex, MultiIndex>> multi_indices(int dim, int max_order);

/// Component of a spec frozen at z, as a real point symbol.
RealPointSymbol freeze(const ComponentFn& f, double z);

}  // namespace thinslab
