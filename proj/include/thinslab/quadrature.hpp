#pragma once

#include <span>
#include <vector>

namespace thinslab {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline constexpr int kMaxQuadratureOrder = 64;

/// Cached rule with `order` nodes, 1 <= order <= kMaxQuadratureOrder.
const GaussRule& gauss_legendre(int order);

}  // namespace thinslab
