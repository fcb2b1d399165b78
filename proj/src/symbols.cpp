#include "thinslab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thinslab/error.hpp"
#include "thinslab/quadrature.hpp"

namespace thinslab {

ZRegularity ZRegularity::hoelder(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ArgumentError("Hoelder exponent must lie in (0,1), got " + std::to_string(alpha));
    return {ZRegularityKind::Hoelder, alpha};
}

std::string to_string(const ZRegularity& r) {
    switch (r.kind) {
        case ZRegularityKind::Continuous: return "continuous";
        case ZRegularityKind::Lipschitz: return "lipschitz";
        case ZRegularityKind::Hoelder: {
            std::ostringstream os;
            os << "hoelder(" << r.alpha << ")";
            return os.str();
        }
    }
    return "unknown";
}

namespace {

double component(const ComponentFn& f, const char* name, double z, const Coord& x, const Coord& xi) {
    if (!f) return 0.0;
    const double v = f(z, x, xi);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "symbol component " << name << " is not finite at z=" << z << ", x=(" << x[0] << ","
           << x[1] << "), xi=(" << xi[0] << "," << xi[1] << ")";
        throw EvaluationError(name, os.str());
    }
    return v;
}

}  // namespace

Complex eval(const SymbolSpec& spec, double z, const Coord& x, const Coord& xi) {
    const double b = component(spec.b1, "b1", z, x, xi) + component(spec.b0, "b0", z, x, xi);
    const double c = component(spec.c1, "c1", z, x, xi) + component(spec.c0, "c0", z, x, xi);
    return {c, -b};
}

Complex eval_principal(const SymbolSpec& spec, double z, const Coord& x, const Coord& xi) {
    return {component(spec.c1, "c1", z, x, xi), -component(spec.b1, "b1", z, x, xi)};
}

Complex averaged(const SymbolSpec& spec, double z, double z_prime, const Coord& x, const Coord& xi,
                 int quadrature_order) {
    if (!(z_prime > z)) {
        std::ostringstream os;
        os << "slab [" << z << ", " << z_prime << "] is empty or reversed";
        throw InvalidSlabError(os.str());
    }
    const double width = z_prime - z;
    if (spec.slab_integral) return spec.slab_integral(z, z_prime, x, xi) / width;
    if (spec.z_independent) return eval(spec, z, x, xi);

    const GaussRule& rule = gauss_legendre(quadrature_order);
    const double mid = 0.5 * (z + z_prime);
    const double half = 0.5 * width;
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * eval(spec, mid + half * rule.nodes[i], x, xi);
    return 0.5 * sum;
}

double quintic_ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smooth_abs(double r) {
    r = std::abs(r);
    return quintic_ramp((r - 0.25) / 0.75) * r;
}

double smooth_norm(const Coord& xi) { return smooth_abs(norm(xi)); }

double weierstrass(double z, double alpha, int terms) {
    double sum = 0.0;
    double amp = 1.0;
    double freq = kPi;
    const double decay = std::pow(2.0, -alpha);
    for (int k = 0; k < terms; ++k) {
        sum += amp * std::cos(freq * z);
        amp *= decay;
        freq *= 2.0;
    }
    return sum;
}

double weierstrass_antiderivative(double z, double alpha, int terms) {
    double sum = 0.0;
    double amp = 1.0;
    double freq = kPi;
    const double decay = std::pow(2.0, -alpha);
    for (int k = 0; k < terms; ++k) {
        sum += amp * std::sin(freq * z) / freq;
        amp *= decay;
        freq *= 2.0;
    }
    return sum;
}

std::vector<std::string> validate(const SymbolSpec& spec, double Z, int dim) {
    std::vector<std::string> problems;
    const int nz = 5;
    const int nx = 16;
    const double xi_samples[] = {0.0, 0.3, 0.8, 1.0, 2.5, 7.0, 31.0};
    const double lambdas[] = {2.0, 3.5};

    auto report = [&](const std::string& what, double z, const Coord& x, const Coord& xi) {
        std::ostringstream os;
        os << what << " at z=" << z << ", x=(" << x[0] << "," << x[1] << "), xi=(" << xi[0] << ","
           << xi[1] << ")";
        problems.push_back(os.str());
    };

    for (int iz = 0; iz < nz; ++iz) {
        const double z = Z * iz / (nz - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const Coord x{2.0 * kPi * ix / nx, dim == 2 ? 2.0 * kPi * ((ix * 5) % nx) / nx : 0.0};
            for (double r : xi_samples) {
                for (double sign : {1.0, -1.0}) {
                    const Coord xi{sign * r, dim == 2 ? 0.5 * r : 0.0};
                    try {
                        (void)eval(spec, z, x, xi);
                    } catch (const EvaluationError& e) {
                        problems.push_back(e.what());
                        continue;
                    }
                    if (spec.c1 && spec.c1(z, x, xi) < -1e-14) report("c1 negative", z, x, xi);
                    if (norm(xi) < spec.homogeneity_cutoff) continue;
                    for (double lam : lambdas) {
                        const Coord scaled{lam * xi[0], lam * xi[1]};
                        for (auto [f, name] : {std::pair{&spec.b1, "b1"}, std::pair{&spec.c1, "c1"}}) {
                            if (!*f) continue;
                            const double base = (*f)(z, x, xi);
                            const double big = (*f)(z, x, scaled);
                            if (std::abs(big - lam * base) > 1e-9 * (1.0 + std::abs(lam * base)))
                                report(std::string(name) + " not homogeneous of degree 1", z, x, xi);
                        }
                    }
                }
            }
        }
    }
    return problems;
}

namespace canned {

SymbolSpec zero() {
    SymbolSpec s;
    s.name = "zero";
    s.x_independent = true;
    s.z_independent = true;
    return s;
}

SymbolSpec translation() {
    SymbolSpec s;
    s.name = "translation";
    s.b1 = [](double, const Coord&, const Coord& xi) { return xi[0]; };
    s.x_independent = true;
    s.z_independent = true;
    return s;
}

SymbolSpec halfwave(double speed) {
    SymbolSpec s;
    s.name = "halfwave";
    s.b1 = [speed](double, const Coord&, const Coord& xi) { return speed * smooth_norm(xi); };
    s.x_independent = true;
    s.z_independent = true;
    return s;
}

SymbolSpec damped() {
    SymbolSpec s;
    s.name = "damped";
    s.c1 = [](double, const Coord&, const Coord& xi) { return smooth_norm(xi); };
    s.x_independent = true;
    s.z_independent = true;
    return s;
}

SymbolSpec constant_damping(double gamma) {
    SymbolSpec s;
    s.name = "constant-damping";
    s.c0 = [gamma](double, const Coord&, const Coord&) { return gamma; };
    s.x_independent = true;
    s.z_independent = true;
    return s;
}

SymbolSpec varspeed() {
    SymbolSpec s;
    s.name = "varspeed";
    s.b1 = [](double, const Coord& x, const Coord& xi) { return (1.0 + 0.3 * std::cos(x[0])) * xi[0]; };
    s.z_independent = true;
    return s;
}

SymbolSpec damped_varspeed() {
    SymbolSpec s = varspeed();
    s.name = "damped-varspeed";
    s.c1 = [](double, const Coord& x, const Coord& xi) {
        return 0.5 * (1.0 + 0.5 * std::sin(x[0])) * smooth_norm(xi);
    };
    return s;
}

SymbolSpec hoelder_z(double alpha, double amplitude) {
    SymbolSpec s;
    s.name = "hoelder-z";
    s.z_regularity = ZRegularity::hoelder(alpha);
    // The z-modulation is shared by every (x, xi) pair of a slab; remember the
    // last few values per thread.
    s.b1 = [alpha, amplitude](double z, const Coord& x, const Coord& xi) {
        // Shared by every closure of this type, so the key includes alpha.
        thread_local double last_z = std::nan("");
        thread_local double last_alpha = std::nan("");
        thread_local double last_w = 0.0;
        if (z != last_z || alpha != last_alpha) {
            last_w = weierstrass(z, alpha);
            last_z = z;
            last_alpha = alpha;
        }
        return (1.0 + 0.3 * std::cos(x[0])) * (1.0 + amplitude * last_w) * xi[0];
    };
    s.slab_integral = [alpha, amplitude](double z0, double z1, const Coord& x, const Coord& xi) {
        thread_local double last_z0 = std::nan("");
        thread_local double last_z1 = std::nan("");
        thread_local double last_alpha = std::nan("");
        thread_local double last_amplitude = std::nan("");
        thread_local double last_mean = 0.0;
        if (z0 != last_z0 || z1 != last_z1 || alpha != last_alpha || amplitude != last_amplitude) {
            last_mean = (z1 - z0) + amplitude * (weierstrass_antiderivative(z1, alpha) -
                                                 weierstrass_antiderivative(z0, alpha));
            last_z0 = z0;
            last_z1 = z1;
            last_alpha = alpha;
            last_amplitude = amplitude;
        }
        return Complex{0.0, -(1.0 + 0.3 * std::cos(x[0])) * last_mean * xi[0]};
    };
    return s;
}

SymbolSpec ramp_z() {
    SymbolSpec s;
    s.name = "ramp-z";
    s.b1 = [](double z, const Coord&, const Coord& xi) { return (1.0 + z) * xi[0]; };
    s.x_independent = true;
    return s;
}

}  // namespace canned

}  // namespace thinslab
