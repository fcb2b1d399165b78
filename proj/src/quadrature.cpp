#include "thinslab/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "thinslab/error.hpp"
#include "thinslab/types.hpp"

namespace thinslab {

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    static const auto table = [] {
        std::array<GaussRule, kMaxQuadratureOrder + 1> t;
        for (int n = 1; n <= kMaxQuadratureOrder; ++n) t[n] = compute_rule(n);
        return t;
    }();
    if (order < 1 || order > kMaxQuadratureOrder)
        throw ArgumentError("quadrature order must lie in [1, " + std::to_string(kMaxQuadratureOrder) +
                            "], got " + std::to_string(order));
    return table[order];
}

}  // namespace thinslab
