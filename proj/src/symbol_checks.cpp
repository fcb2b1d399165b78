#include "thinslab/symbol_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "thinslab/error.hpp"

namespace thinslab {

LatticeSpec LatticeSpec::refined() const {
    LatticeSpec r = *this;
    r.x_points = 2 * x_points;
    r.xi_points = 2 * xi_points - 1;
    return r;
}

std::vector<double> LatticeSpec::x_samples() const {
    std::vector<double> xs(x_points);
    for (int j = 0; j < x_points; ++j) xs[j] = x_period * j / x_points;
    return xs;
}

std::vector<double> LatticeSpec::xi_samples() const {
    std::vector<double> xs;
    const double top = std::log1p(xi_max);
    for (int j = 0; j < xi_points; ++j) xs.push_back(std::expm1(top * j / (xi_points - 1)));
    if (symmetric_xi) {
        for (int j = 1; j < xi_points; ++j) xs.push_back(-xs[j]);
    }
    return xs;
}

std::string LatticeSpec::describe() const {
    std::ostringstream os;
    os << "dim=" << dim << " x:" << x_points << "pts/[0," << x_period << ") xi:" << xi_points
       << "pts log-spaced [0," << xi_max << "]" << (symmetric_xi ? " symmetric" : "") << " h_x=" << h_x
       << " h_xi=" << h_xi_relative << "(1+|xi|)";
    return os.str();
}

double step_for_order(double base, int n) {
    if (n <= 2) return base;
    const double optimal = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (n + 2));
    return base * std::max(1.0, optimal / 1e-4);
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Axis layout: 0,1 -> x components, 2,3 -> xi components.
Complex difference(const PointSymbol& f, std::array<double, 4> point, const std::array<int, 4>& orders,
                   const std::array<double, 4>& steps, int axis) {
    while (axis < 4 && orders[axis] == 0) ++axis;
    if (axis == 4) return f(Coord{point[0], point[1]}, Coord{point[2], point[3]});
    const int n = orders[axis];
    const double h = steps[axis];
    const double centre = point[axis];
    Complex sum{0.0, 0.0};
    for (int j = 0; j <= n; ++j) {
        point[axis] = centre + (0.5 * n - j) * h;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binomial(n, j) * difference(f, point, orders, steps, axis + 1);
    }
    return sum / std::pow(h, n);
}

void require_lattice(const LatticeSpec& lattice) {
    if (lattice.dim != 1 && lattice.dim != 2) throw GridError("lattice dimension must be 1 or 2");
    if (lattice.x_points < 5 || lattice.xi_points < 5) {
        std::ostringstream os;
        os << "degenerate lattice: need at least 5 points per axis, got x=" << lattice.x_points
           << " xi=" << lattice.xi_points;
        throw GridError(os.str());
    }
    if (!(lattice.x_period > 0.0) || !(lattice.xi_max > 0.0)) throw GridError("lattice extents must be positive");
    if (!(lattice.h_x > 0.0) || !(lattice.h_xi_relative > 0.0)) throw GridError("finite-difference steps must be positive");
}

// Calls visit(x, xi) on every lattice point.
template <class Visit>
void for_each_point(const LatticeSpec& lattice, Visit&& visit) {
    const auto xs = lattice.x_samples();
    const auto xis = lattice.xi_samples();
    if (lattice.dim == 1) {
        for (double x : xs)
            for (double xi : xis) visit(Coord{x, 0.0}, Coord{xi, 0.0});
        return;
    }
    for (double x0 : xs)
        for (double x1 : xs)
            for (double k0 : xis)
                for (double k1 : xis) visit(Coord{x0, x1}, Coord{k0, k1});
}

}  // namespace

Complex mixed_derivative(const PointSymbol& f, const Coord& x, const Coord& xi, const MultiIndex& alpha,
                         const MultiIndex& beta, const LatticeSpec& lattice) {
    const std::array<int, 4> orders{alpha[0], alpha[1], beta[0], beta[1]};
    const double hxi = lattice.h_xi_relative * (1.0 + norm(xi));
    const std::array<double, 4> steps{step_for_order(lattice.h_x, alpha[0]), step_for_order(lattice.h_x, alpha[1]),
                                      step_for_order(hxi, beta[0]), step_for_order(hxi, beta[1])};
    return difference(f, {x[0], x[1], xi[0], xi[1]}, orders, steps, 0);
}

std::vector<std::pair<MultiIndex, MultiIndex>> multi_indices(int dim, int max_order) {
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    const int top1 = dim == 2 ? max_order : 0;
    for (int total = 0; total <= max_order; ++total)
        for (int a0 = 0; a0 <= total; ++a0)
            for (int a1 = 0; a1 <= std::min(top1, total - a0); ++a1)
                for (int b0 = 0; b0 <= total - a0 - a1; ++b0) {
                    const int b1 = total - a0 - a1 - b0;
                    if (b1 > top1) continue;
                    out.push_back({MultiIndex{a0, a1}, MultiIndex{b0, b1}});
                }
    return out;
}

SeminormEstimate estimate_seminorm(const PointSymbol& a, const MultiIndex& alpha, const MultiIndex& beta,
                                   double m, double rho, double delta, const LatticeSpec& lattice) {
    require_lattice(lattice);
    if (order(alpha) + order(beta) > 4) throw ArgumentError("seminorm estimates support |alpha|+|beta| <= 4");
    if (alpha[0] < 0 || alpha[1] < 0 || beta[0] < 0 || beta[1] < 0) throw ArgumentError("negative multi-index");
    if (lattice.dim == 1 && (alpha[1] != 0 || beta[1] != 0))
        throw ArgumentError("second-axis derivative requested on a 1D lattice");
    if (!(rho > 0.0 && rho <= 1.0) || !(delta >= 0.0 && delta < 1.0))
        throw ArgumentError("symbol class requires 0 < rho <= 1 and 0 <= delta < 1");

    const double exponent = -m + rho * order(beta) - delta * order(alpha);
    double sup = 0.0;
    for_each_point(lattice, [&](const Coord& x, const Coord& xi) {
        const double d = std::abs(mixed_derivative(a, x, xi, alpha, beta, lattice));
        sup = std::max(sup, std::pow(1.0 + norm(xi), exponent) * d);
    });
    return {alpha, beta, m, rho, delta, sup, lattice};
}

RealPointSymbol freeze(const ComponentFn& f, double z) {
    if (!f) return [](const Coord&, const Coord&) { return 0.0; };
    return [f, z](const Coord& x, const Coord& xi) { return f(z, x, xi); };
}

PLReport check_PL(const RealPointSymbol& q, int L, const LatticeSpec& lattice, int max_order, double c_max) {
    require_lattice(lattice);
    if (L < 2) throw ArgumentError("Property P_L needs L >= 2");
    if (max_order < 0 || max_order > 3) throw ArgumentError("check_PL supports max_order in [0,3]");

    for_each_point(lattice, [&](const Coord& x, const Coord& xi) {
        const double v = q(x, xi);
        if (!(v >= 0.0)) {
            std::ostringstream os;
            os << "P_L requires q >= 0; q(" << x[0] << "," << xi[0] << ") = " << v;
            throw PreconditionError(os.str());
        }
    });

    const PointSymbol qc = [&q](const Coord& x, const Coord& xi) { return Complex{q(x, xi), 0.0}; };
    PLReport report;
    for (const auto& [alpha, beta] : multi_indices(lattice.dim, max_order)) {
        const double k = order(alpha) + order(beta);
        double worst = 0.0;
        for_each_point(lattice, [&](const Coord& x, const Coord& xi) {
            const double d = std::abs(mixed_derivative(qc, x, xi, alpha, beta, lattice));
            const double bound = std::pow(1.0 + norm(xi), -order(beta) + k / L) * std::pow(1.0 + q(x, xi), 1.0 - k / L);
            worst = std::max(worst, d / bound);
        });
        report.ratios[{alpha, beta}] = worst;
        if (!(worst <= report.worst_ratio)) {
            report.worst_ratio = worst;
            report.worst_alpha = alpha;
            report.worst_beta = beta;
        }
    }
    report.pass = std::isfinite(report.worst_ratio) && report.worst_ratio <= c_max;
    return report;
}

QLReport check_QL_family(const RealPointSymbol& q, int L, std::span<const double> deltas,
                         const LatticeSpec& lattice, int max_order, double factor) {
    if (deltas.empty()) throw ArgumentError("check_QL_family needs at least one Delta");
    if (L < 2) throw ArgumentError("Property Q_L needs L >= 2");
    for (double d : deltas)
        if (!(d >= 0.0)) throw ArgumentError("Delta values must be nonnegative");

    QLReport report;
    report.rho = 1.0 - 1.0 / L;
    report.delta = 1.0 / L;
    report.deltas.assign(deltas.begin(), deltas.end());

    report.indices = multi_indices(lattice.dim, max_order);
    const auto& indices = report.indices;
    for (double d : deltas) {
        const PointSymbol family = [&q, d](const Coord& x, const Coord& xi) {
            return Complex{std::exp(-d * q(x, xi)), 0.0};
        };
        std::vector<double> row;
        for (const auto& [alpha, beta] : indices)
            row.push_back(estimate_seminorm(family, alpha, beta, 0.0, report.rho, report.delta, lattice).value);
        report.per_delta.push_back(std::move(row));
    }

    const auto largest = std::max_element(deltas.begin(), deltas.end()) - deltas.begin();
    constexpr double kNoise = 1e-8;
    for (std::size_t j = 0; j < indices.size(); ++j) {
        double sup = 0.0;
        for (const auto& row : report.per_delta) sup = std::max(sup, row[j]);
        report.sup_seminorms[indices[j]] = sup;
        if (sup > factor * report.per_delta[largest][j] + kNoise) report.uniform = false;
    }
    return report;
}

}  // namespace thinslab
