#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mlnl {

/// Nodes and weights of the k-point Gauss–Legendre rule on [-1,1], computed by
/// Newton iteration on the Legendre recurrence (machine-accurate for the
/// moderate k used by the weight tables).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussLegendre gauss_legendre(int k) {
    if (k < 1)
        throw std::invalid_argument("gauss_legendre: need at least one node");
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(k));
    rule.weights.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        // Tricomi initial guess, then Newton on P_k
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace mlnl
