#pragma once

#include <cstdint>
#include <vector>

#include "bl/fv_transport.hpp"
#include "bl/grid.hpp"

namespace bl {

/// Dyadic multiwavelet representation of a saturation field on the
/// normalized interval [0,1]. Every node (level n, index i) covers
/// [i 2^-n, (i+1) 2^-n) and stores the coefficients of the function's L2
/// projection onto the orthonormal shifted-Legendre basis of degree < order
/// on that subinterval. Leaves tile [0,1]; interior blocks are the
/// coarse-space projections produced by the two-scale transform. Wavelet
/// functions are never materialized: detail magnitudes come from the
/// Parseval identity between parent and children blocks.
struct MWTree {
    int order = 0;  // k: polynomial degree < k per node
    int depth = 0;  // level of the original uniform leaf tiling

    // Heap layout: node (n,i) lives at id = 2^n + i, ids 1-based; block for
    // id starts at (id-1)*order.
    std::vector<double> blocks;
    std::vector<std::uint8_t> leaf;  // indexed by id

    // Compression bookkeeping.
    int pruned_subtrees = 0;
    double discarded_detail = 0.0;  // L2 norm of everything pruned

    int node_count() const { return (2 << depth) - 1; }
    const double* block(int id) const { return blocks.data() + (id - 1) * order; }
    double* block(int id) { return blocks.data() + (id - 1) * order; }
};

/// Orthonormal shifted Legendre values phi_j(y) = sqrt(2j+1) P_j(2y-1),
/// j = 0..k-1, y in [0,1].
void scaled_legendre(int order, double y, double* values);

/// Coarse-space projection: parent block from the two child blocks. The
/// filter matrices are computed once per order by exact quadrature and
/// cached.
void two_scale_restrict(int order, const double* left, const double* right,
                        double* parent);

/// Adjoint embedding of a parent block into the children's bases; together
/// with the restriction this reproduces any child pair exactly once the
/// residual (the detail) is added back.
void two_scale_lift(int order, const double* parent, double* left,
                    double* right);

/// Projects a dyadically aligned piecewise-constant cell-average field into
/// the multiwavelet hierarchy. The leaf scaling blocks are exact (only the
/// degree-0 coefficient is nonzero); coarser blocks come from the two-scale
/// transform. A positive epsilon compresses the result (see compress).
MWTree project_cell_averages(const std::vector<double>& averages, int order,
                             double epsilon);
MWTree project_cell_averages(const SaturationState& state, const Grid& grid,
                             int order, double epsilon);

/// Point value of the represented function; xi = 1 evaluates the last leaf
/// and interior dyadic breakpoints belong to the right cell.
double evaluate(const MWTree& tree, double xi);

/// Cell averages on a power-of-two grid by cellwise Gauss-Legendre
/// quadrature (8 nodes per leaf segment), exact whenever each cell meets
/// only whole leaf polynomials.
std::vector<double> reconstruct_cell_averages(const MWTree& tree, int cells);

/// Per-level detail energies: entry n sums, over the level-n parents, the
/// squared norm of what coarsening discards (by Parseval this equals
/// ||children||^2 - ||parent||^2; it is evaluated from the explicit lift
/// residual so exact-zero details stay at round-off).
std::vector<double> detail_norms(const MWTree& tree);

/// Prunes every maximal subtree whose cumulative detail norm is <= epsilon,
/// leaving the subtree root as a leaf carrying its coarse projection. The
/// L2 reconstruction error is bounded by epsilon * sqrt(pruned_subtrees).
MWTree compress(const MWTree& tree, double epsilon);

/// Relaxed post-filter (1-theta) fv + theta mw, clipped to [lo, hi].
std::vector<double> post_filter(const std::vector<double>& fv,
                                const std::vector<double>& mw, double theta,
                                double lo, double hi);

}  // namespace bl
