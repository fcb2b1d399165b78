#include "thinslab/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "thinslab/error.hpp"

namespace thinslab {

Subdivision Subdivision::uniform(double Z, int N) {
    if (!(Z > 0.0) || !std::isfinite(Z)) throw SubdivisionError("subdivision needs Z > 0");
    if (N < 1) throw SubdivisionError("subdivision needs N >= 1");
    return {Z, N};
}

std::vector<double> Subdivision::points() const {
    std::vector<double> p(std::size_t(N) + 1);
    for (int i = 0; i <= N; ++i) p[std::size_t(i)] = point(i);
    return p;
}

void Subdivision::require_admissible(const PropagatorConfig& config) const {
    if (step() > config.max_thickness * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "subdivision step Z/N = " << step() << " exceeds Delta_max = " << config.max_thickness;
        throw SubdivisionError(os.str());
    }
}

namespace {

// Index k of the last subdivision point with z_k <= z.
int slab_index(const Subdivision& sub, double z) {
    int k = std::clamp(int(std::floor(z / sub.step())), 0, sub.N);
    while (k < sub.N && sub.point(k + 1) <= z) ++k;
    while (k > 0 && sub.point(k) > z) --k;
    return k;
}

bool coincides(double a, double b, double Z) { return std::abs(a - b) <= 1e-12 * Z; }

}  // namespace

Field apply_ansatz(const SymbolSpec& spec, const Subdivision& sub, const SlabVariant& variant, const Field& u0,
                   double z, const PropagatorConfig& config, const SlabObserver& observer) {
    sub.require_admissible(config);
    if (!(z >= 0.0 && z <= sub.Z * (1.0 + 1e-14))) {
        std::ostringstream os;
        os << "Ansatz position z = " << z << " outside [0, " << sub.Z << "]";
        throw ArgumentError(os.str());
    }
    int k = slab_index(sub, z);
    if (k < sub.N && coincides(z, sub.point(k + 1), sub.Z)) ++k;

    Field u = u0;
    for (int i = 1; i <= k; ++i) {
        u = thin_slab_apply({sub.point(i - 1), sub.point(i), spec, variant}, u, config);
        if (observer) observer(i, sub.point(i), u);
    }
    if (!coincides(z, sub.point(k), sub.Z)) u = thin_slab_apply({sub.point(k), z, spec, variant}, u, config);
    return u;
}

std::string ReferenceMode::describe() const {
    if (kind == Kind::ExactMultiplier) return "exact";
    return "finestep:" + std::to_string(n_ref);
}

Field reference_solution(const SymbolSpec& spec, const Field& u0, double z, const ReferenceMode& mode,
                         const PropagatorConfig& config, int quadrature_order) {
    if (mode.kind == ReferenceMode::Kind::ExactMultiplier) {
        if (z == 0.0) return u0;
        return exact_multiplier_evolution(spec, 0.0, z, u0, std::max(quadrature_order, 8));
    }
    if (mode.n_ref < 1) throw ArgumentError("fine-step reference needs n_ref >= 1");
    if (z == 0.0) return u0;
    return apply_ansatz(spec, Subdivision::uniform(z, mode.n_ref), Averaged{quadrature_order}, u0, z, config);
}

double residual_norm(const SymbolSpec& spec, const Subdivision& sub, const SlabVariant& variant, const Field& u0,
                     double z, double s, const PropagatorConfig& config) {
    sub.require_admissible(config);
    const double h = sub.step() / 64.0;
    const int k = slab_index(sub, z);
    const double bottom = sub.point(k);
    const double top = sub.point(k + 1);
    if (k >= sub.N || !(z - h > bottom) || !(z + h < top)) {
        std::ostringstream os;
        os << "residual position z = " << z << " is within " << h << " of a slab boundary";
        throw PositionError(os.str());
    }
    const Field base = apply_ansatz(spec, sub, variant, u0, bottom, config);
    const SlabSpec slab{bottom, z, spec, variant};
    slab.validate(config);
    const SpectralField coeffs = forward(base);
    const bool frozen = std::holds_alternative<Frozen>(variant);
    // d/dz of exp(E(z)) with E the slab exponent: E' is -a at the slab bottom
    // (frozen) or at z (averaged).
    const Field derivative = apply_symbol_operator(coeffs, [&](const Coord& x, const Coord& xi) {
        const Complex rate = -eval(spec, frozen ? bottom : z, x, xi);
        return rate * std::exp(slab_exponent(slab, x, xi));
    });
    const Field here = apply_exponential_symbol(coeffs, [&](const Coord& x, const Coord& xi) {
        return slab_exponent(slab, x, xi);
    });

    Field residual = apply_symbol(spec, z, here);
    residual += derivative;
    return sobolev_norm(residual, s);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ArgumentError("line fit needs at least two paired points");
    const double n = double(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ArgumentError("line fit needs distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

bool ConvergenceReport::monotone(double tolerance) const {
    for (std::size_t i = 1; i < normalized_errors.size(); ++i)
        if (normalized_errors[i] > (1.0 + tolerance) * normalized_errors[i - 1]) return false;
    return true;
}

ConvergenceReport convergence_study(const SymbolSpec& spec, const Field& u0, double s, std::span<const int> Ns,
                                    const SlabVariant& variant, const ReferenceMode& reference, double Z,
                                    const PropagatorConfig& config) {
    if (Ns.empty()) throw ArgumentError("convergence study needs at least one N");
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] <= Ns[i - 1]) throw ArgumentError("Ns must be strictly increasing");
    for (int n : Ns) Subdivision::uniform(Z, n).require_admissible(config);
    if (reference.kind == ReferenceMode::Kind::FineStep && reference.n_ref < 8 * Ns.back()) {
        std::ostringstream os;
        os << "fine-step reference needs n_ref >= 8 * max(Ns) = " << 8 * Ns.back() << ", got " << reference.n_ref;
        throw ArgumentError(os.str());
    }

    ConvergenceReport report;
    report.s = s;
    report.Z = Z;
    report.scenario = spec.name;
    report.variant = to_string(variant);
    report.reference = reference;
    report.Ns.assign(Ns.begin(), Ns.end());

    const double data_norm = sobolev_norm(u0, s + 1.0);
    if (!(data_norm > 0.0)) throw ArgumentError("initial datum must be nonzero");
    const Field ref = reference_solution(spec, u0, Z, reference, config);

    for (int n : Ns) {
        const Subdivision sub = Subdivision::uniform(Z, n);
        const Field approx = apply_ansatz(spec, sub, variant, u0, Z, config);
        const double err = sobolev_norm(approx - ref, s);
        report.deltas.push_back(sub.step());
        report.errors.push_back(err);
        report.normalized_errors.push_back(err / data_norm);
    }

    if (reference.kind == ReferenceMode::Kind::FineStep) {
        const Field half = reference_solution(spec, u0, Z, ReferenceMode::fine_step(reference.n_ref / 2), config);
        report.reference_self_error = sobolev_norm(ref - half, s) / data_norm;
    }

    report.exact = std::all_of(report.normalized_errors.begin(), report.normalized_errors.end(),
                               [](double e) { return e < kExactThreshold; });
    const bool any_zero = std::any_of(report.errors.begin(), report.errors.end(), [](double e) { return e <= 0.0; });
    if (report.exact || any_zero || Ns.size() < 2) return report;

    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        lx.push_back(std::log(report.deltas[i]));
        ly.push_back(std::log(report.normalized_errors[i]));
    }
    LineFit fit = fit_line(lx, ly);
    if (fit.residual > kMaxFitResidual && lx.size() >= 4) {
        fit = fit_line(std::span(lx).subspan(2), std::span(ly).subspan(2));
        report.dropped_coarse = true;
    }
    report.fitted_slope = fit.slope;
    report.fit_residual = fit.residual;
    return report;
}

double UniformBoundReport::spread() const {
    if (per_n.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(per_n.begin(), per_n.end());
    return (*hi - *lo) / *lo;
}

UniformBoundReport uniform_bound_check(const SymbolSpec& spec, std::span<const Field> family, double s,
                                       std::span<const int> Ns, double Z, const SlabVariant& variant,
                                       const PropagatorConfig& config) {
    if (family.empty()) throw ArgumentError("uniform bound check needs at least one initial datum");
    UniformBoundReport report;
    report.Ns.assign(Ns.begin(), Ns.end());
    for (int n : Ns) {
        const Subdivision sub = Subdivision::uniform(Z, n);
        sub.require_admissible(config);
        double sup = 0.0;
        for (const Field& u0 : family) {
            const double base = sobolev_norm(u0, s);
            if (!(base > 0.0)) throw ArgumentError("initial data must be nonzero");
            sup = std::max(sup, 1.0);  // z_0 = 0
            apply_ansatz(spec, sub, variant, u0, Z, config,
                         [&](int, double, const Field& u) { sup = std::max(sup, sobolev_norm(u, s) / base); });
        }
        report.per_n.push_back(sup);
        report.sup_ratio = std::max(report.sup_ratio, sup);
    }
    return report;
}

Field wave_packet(const Grid& grid, double x0, double sigma, double k0) {
    return Field::sample(grid, [&](const Coord& x) {
        double r2 = (x[0] - x0) * (x[0] - x0);
        if (grid.dim == 2) r2 += (x[1] - x0) * (x[1] - x0);
        return std::exp(-r2 / (2.0 * sigma * sigma)) * std::polar(1.0, k0 * x[0]);
    });
}

Field default_packet(const Grid& grid) {
    const double unit = 2.0 * kPi / grid.period;
    return wave_packet(grid, grid.period / 2.0, grid.period / 40.0, 8.0 * unit);
}

std::vector<Field> packet_family(const Grid& grid, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(0.35, 0.65);
    std::uniform_int_distribution<int> carrier(2, 12);
    const double unit = 2.0 * kPi / grid.period;
    std::vector<Field> family;
    family.push_back(default_packet(grid));
    while (int(family.size()) < count)
        family.push_back(wave_packet(grid, centre(rng) * grid.period, grid.period / 40.0, carrier(rng) * unit));
    return family;
}

}  // namespace thinslab
