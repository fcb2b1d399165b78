#pragma once

#include <functional>
#include <string>
#include <vector>

#include "thinslab/types.hpp"

namespace thinslab {

/// One real-valued symbol component evaluated at (z, x, xi).
using ComponentFn = std::function<double(double z, const Coord& x, const Coord& xi)>;

/// Optional closed form of the slab integral of the full symbol,
/// int_{z0}^{z1} a(s, x, xi) ds. Used instead of quadrature when present.
using SlabIntegralFn = std::function<Complex(double z0, double z1, const Coord& x, const Coord& xi)>;

enum class ZRegularityKind { Continuous, Lipschitz, Hoelder };

struct ZRegularity {
    ZRegularityKind kind = ZRegularityKind::Lipschitz;
    double alpha = 1.0;  // Hoelder exponent, meaningful for Hoelder only

    static ZRegularity continuous() { return {ZRegularityKind::Continuous, 0.0}; }
    static ZRegularity lipschitz() { return {ZRegularityKind::Lipschitz, 1.0}; }
    static ZRegularity hoelder(double alpha);
};

std::string to_string(const ZRegularity& r);

/// a(z, x, xi) = -i (b1 + b0) + (c1 + c0).
///
/// b1 and c1 are the order-one parts, homogeneous of degree one in xi for
/// |xi| >= homogeneity_cutoff; c1 must be nonnegative. b0 and c0 are the
/// order-zero corrections. An empty component is identically zero.
struct SymbolSpec {
    std::string name;
    ComponentFn b1;
    ComponentFn b0;
    ComponentFn c1;
    ComponentFn c0;
    ZRegularity z_regularity = ZRegularity::lipschitz();
    double homogeneity_cutoff = 1.0;
    bool x_independent = false;
    bool z_independent = false;
    SlabIntegralFn slab_integral;
};

/// Full symbol at one point. Throws EvaluationError naming the component
/// that produced a non-finite value.
Complex eval(const SymbolSpec& spec, double z, const Coord& x, const Coord& xi);

/// Principal part a1 = -i b1 + c1 only.
Complex eval_principal(const SymbolSpec& spec, double z, const Coord& x, const Coord& xi);

/// Mean of the symbol over the slab [z, z_prime]. Uses the spec's closed-form
/// slab integral when one is attached, otherwise Gauss-Legendre with
/// `quadrature_order` nodes. Throws InvalidSlabError when z_prime <= z.
Complex averaged(const SymbolSpec& spec, double z, double z_prime, const Coord& x, const Coord& xi,
                 int quadrature_order);

// Smoothing helpers shared by the canned symbols.

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 clamped to [0,1]; C2 at both ends.
double quintic_ramp(double t);

/// eta(r) r with eta = 0 on [0, 1/4], eta = 1 on [1, inf).
double smooth_abs(double r);
double smooth_norm(const Coord& xi);

/// Truncated Weierstrass series sum_{k=0}^{terms-1} 2^{-alpha k} cos(2^k pi z).
double weierstrass(double z, double alpha, int terms = 11);
/// Antiderivative of weierstrass() vanishing at z = 0.
double weierstrass_antiderivative(double z, double alpha, int terms = 11);

/// Sampled invariant checks on a spec: c1 >= 0, homogeneity of b1 and c1 for
/// |xi| >= cutoff, finiteness of all components. Returns human readable
/// violations, empty when the spec is admissible.
std::vector<std::string> validate(const SymbolSpec& spec, double Z, int dim = 1);

namespace canned {

/// a = -i xi (1D). Exact translation by the slab thickness.
SymbolSpec translation();
/// a = -i |xi|_sm, the half-wave operator with unit constant speed.
SymbolSpec halfwave(double speed = 1.0);
/// a = |xi|_sm, pure damping.
SymbolSpec damped();
/// a = gamma, constant order-zero damping.
SymbolSpec constant_damping(double gamma);
/// b1 = (1 + 0.3 cos x) xi.
SymbolSpec varspeed();
/// varspeed plus c1 = 0.5 (1 + 0.5 sin x) |xi|_sm.
SymbolSpec damped_varspeed();
/// b1 = (1 + 0.3 cos x)(1 + amplitude W_alpha(z)) xi.
SymbolSpec hoelder_z(double alpha = 0.5, double amplitude = 0.1);
/// b1 = (1 + z) xi, x-independent but z-dependent.
SymbolSpec ramp_z();
/// a == 0.
SymbolSpec zero();

}  // namespace canned

}  // namespace thinslab
