#pragma once

#include <vector>

namespace bl {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points on [-1, 1]; integrates polynomials of
/// degree <= 2n-1 exactly. Nodes ascend.
QuadratureRule gauss_legendre(int n);

/// The same rule affinely mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace bl
