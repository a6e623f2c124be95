#include "bl/mw_interval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "bl/quadrature.hpp"

namespace bl {

namespace {

int log2_exact(int n) {
    if (!is_power_of_two(n))
        throw std::invalid_argument("mw_interval: cell count must be a power of two");
    int m = 0;
    while ((1 << m) < n) ++m;
    return m;
}

// Two-scale restriction filters for order k. h0[p*k+c] (resp. h1) is the
// inner product of parent basis function p with child basis function c on
// the left (resp. right) half, so that
//   parent = H0 * left_child + H1 * right_child.
// Level independence follows from the self-similarity of the basis.
struct TwoScaleFilters {
    std::vector<double> h0;
    std::vector<double> h1;
};

const TwoScaleFilters& filters_for(int k) {
    static std::mutex mutex;
    static std::map<int, TwoScaleFilters> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;

    TwoScaleFilters f;
    f.h0.assign(k * k, 0.0);
    f.h1.assign(k * k, 0.0);

    // H0[p][c] = (1/sqrt2) int_0^1 phi_p(z/2) phi_c(z) dz and H1 likewise
    // with phi_p((z+1)/2); the integrand has degree <= 2k-2.
    const QuadratureRule rule = gauss_legendre(2 * k, 0.0, 1.0);
    std::vector<double> parent_left(k), parent_right(k), child(k);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double z = rule.nodes[q];
        const double w = rule.weights[q];
        scaled_legendre(k, 0.5 * z, parent_left.data());
        scaled_legendre(k, 0.5 * (z + 1.0), parent_right.data());
        scaled_legendre(k, z, child.data());
        for (int p = 0; p < k; ++p) {
            for (int c = 0; c < k; ++c) {
                f.h0[p * k + c] += inv_sqrt2 * w * parent_left[p] * child[c];
                f.h1[p * k + c] += inv_sqrt2 * w * parent_right[p] * child[c];
            }
        }
    }
    return cache.emplace(k, std::move(f)).first->second;
}

// Integral of the leaf polynomial of `id` (covering [a,b]) over
// [lo,hi] x subset of [a,b], by 8-point Gauss-Legendre per segment.
double integrate_leaf(const MWTree& tree, int id, double a, double b,
                      double lo, double hi, const QuadratureRule& unit_rule) {
    const int k = tree.order;
    const int level = std::bit_width(static_cast<unsigned>(id)) - 1;
    const double scale = std::exp2(0.5 * level);
    const double* s = tree.block(id);
    std::vector<double> phi(k);

    double acc = 0.0;
    const double width = hi - lo;
    for (std::size_t q = 0; q < unit_rule.nodes.size(); ++q) {
        const double xi = lo + width * unit_rule.nodes[q];
        const double y = (xi - a) / (b - a);  // local coordinate on the leaf
        scaled_legendre(k, y, phi.data());
        double value = 0.0;
        for (int j = 0; j < k; ++j) value += s[j] * phi[j];
        acc += width * unit_rule.weights[q] * scale * value;
    }
    return acc;
}

// Accumulates int over [lo,hi] of the piecewise leaf representation,
// splitting at leaf boundaries so each quadrature sees one polynomial.
double integrate_tree(const MWTree& tree, int id, double a, double b,
                      double lo, double hi, const QuadratureRule& unit_rule) {
    lo = std::max(lo, a);
    hi = std::min(hi, b);
    if (hi <= lo) return 0.0;
    if (tree.leaf[id]) return integrate_leaf(tree, id, a, b, lo, hi, unit_rule);
    const double mid = 0.5 * (a + b);
    return integrate_tree(tree, 2 * id, a, mid, lo, hi, unit_rule) +
           integrate_tree(tree, 2 * id + 1, mid, b, lo, hi, unit_rule);
}

// Squared norm of the detail lost when the two child blocks are replaced
// by the parent's coarse projection. Formed from the explicit lift
// residual rather than the Parseval norm difference: the difference of the
// two near-equal energies cancels catastrophically and would put a ~1e-8
// noise floor under exactly-representable (e.g. constant) data.
double node_detail_sq(const MWTree& tree, int id) {
    const int k = tree.order;
    std::vector<double> lift_l(k), lift_r(k);
    two_scale_lift(k, tree.block(id), lift_l.data(), lift_r.data());
    const double* cl = tree.block(2 * id);
    const double* cr = tree.block(2 * id + 1);
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
        const double rl = cl[j] - lift_l[j];
        const double rr = cr[j] - lift_r[j];
        acc += rl * rl + rr * rr;
    }
    return acc;
}

double subtree_detail_sq(const MWTree& tree, int id) {
    if (tree.leaf[id]) return 0.0;
    return node_detail_sq(tree, id) + subtree_detail_sq(tree, 2 * id) +
           subtree_detail_sq(tree, 2 * id + 1);
}

void zero_descendants(MWTree& tree, int id) {
    if (2 * id + 1 >= static_cast<int>(tree.leaf.size())) return;
    for (int child : {2 * id, 2 * id + 1}) {
        std::fill(tree.block(child), tree.block(child) + tree.order, 0.0);
        tree.leaf[child] = 0;
        zero_descendants(tree, child);
    }
}

// Prunes maximal subtrees with cumulative detail norm <= epsilon.
void prune(MWTree& tree, int id, double epsilon) {
    if (tree.leaf[id]) return;
    const double detail_sq = subtree_detail_sq(tree, id);
    if (detail_sq <= epsilon * epsilon) {
        tree.leaf[id] = 1;
        zero_descendants(tree, id);
        tree.pruned_subtrees += 1;
        tree.discarded_detail =
            std::sqrt(tree.discarded_detail * tree.discarded_detail + detail_sq);
        return;
    }
    prune(tree, 2 * id, epsilon);
    prune(tree, 2 * id + 1, epsilon);
}

}  // namespace

void two_scale_restrict(int order, const double* left, const double* right,
                        double* parent) {
    const TwoScaleFilters& f = filters_for(order);
    for (int p = 0; p < order; ++p) {
        double acc = 0.0;
        for (int c = 0; c < order; ++c) {
            acc += f.h0[p * order + c] * left[c] + f.h1[p * order + c] * right[c];
        }
        parent[p] = acc;
    }
}

void two_scale_lift(int order, const double* parent, double* left,
                    double* right) {
    const TwoScaleFilters& f = filters_for(order);
    for (int c = 0; c < order; ++c) {
        double acc_l = 0.0;
        double acc_r = 0.0;
        for (int p = 0; p < order; ++p) {
            acc_l += f.h0[p * order + c] * parent[p];
            acc_r += f.h1[p * order + c] * parent[p];
        }
        left[c] = acc_l;
        right[c] = acc_r;
    }
}

void scaled_legendre(int order, double y, double* values) {
    const double z = 2.0 * y - 1.0;
    double p0 = 1.0;
    double p1 = z;
    for (int j = 0; j < order; ++j) {
        double pj;
        if (j == 0) {
            pj = p0;
        } else if (j == 1) {
            pj = p1;
        } else {
            const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
            pj = p2;
        }
        values[j] = std::sqrt(2.0 * j + 1.0) * pj;
    }
}

MWTree project_cell_averages(const std::vector<double>& averages, int order,
                             double epsilon) {
    if (order < 1) throw std::invalid_argument("project_cell_averages: order must be >= 1");
    if (epsilon < 0.0)
        throw std::invalid_argument("project_cell_averages: epsilon must be >= 0");
    const int n = static_cast<int>(averages.size());
    const int depth = log2_exact(n);

    MWTree tree;
    tree.order = order;
    tree.depth = depth;
    tree.blocks.assign(static_cast<std::size_t>(tree.node_count()) * order, 0.0);
    tree.leaf.assign(tree.node_count() + 1, 0);

    // Exact leaf projection of the aligned piecewise-constant input: only
    // the degree-0 coefficient survives, scaled by 2^{-depth/2}.
    const double scale = std::exp2(-0.5 * depth);
    for (int j = 0; j < n; ++j) {
        const int id = (1 << depth) + j;
        tree.block(id)[0] = averages[j] * scale;
        tree.leaf[id] = 1;
    }

    // Two-scale transform, children to parents.
    for (int level = depth - 1; level >= 0; --level) {
        for (int i = 0; i < (1 << level); ++i) {
            const int id = (1 << level) + i;
            two_scale_restrict(order, tree.block(2 * id), tree.block(2 * id + 1),
                               tree.block(id));
        }
    }

    if (epsilon > 0.0) return compress(tree, epsilon);
    return tree;
}

MWTree project_cell_averages(const SaturationState& state, const Grid& grid,
                             int order, double epsilon) {
    if (static_cast<int>(state.averages.size()) != grid.cells)
        throw std::invalid_argument("project_cell_averages: state/grid mismatch");
    return project_cell_averages(state.averages, order, epsilon);
}

double evaluate(const MWTree& tree, double xi) {
    if (xi < 0.0 || xi > 1.0)
        throw std::domain_error("evaluate: coordinate outside [0,1]");
    int id = 1;
    double a = 0.0;
    double b = 1.0;
    int level = 0;
    while (!tree.leaf[id]) {
        const double mid = 0.5 * (a + b);
        if (xi >= mid) {  // breakpoints belong to the right cell
            id = 2 * id + 1;
            a = mid;
        } else {
            id = 2 * id;
            b = mid;
        }
        ++level;
    }
    const int k = tree.order;
    std::vector<double> phi(k);
    scaled_legendre(k, (xi - a) / (b - a), phi.data());
    const double* s = tree.block(id);
    double value = 0.0;
    for (int j = 0; j < k; ++j) value += s[j] * phi[j];
    return std::exp2(0.5 * level) * value;
}

std::vector<double> reconstruct_cell_averages(const MWTree& tree, int cells) {
    if (!is_power_of_two(cells))
        throw std::invalid_argument(
            "reconstruct_cell_averages: cell count must be a power of two");
    // 8 nodes integrate degree <= 15 exactly, enough for order <= 16.
    const int points = std::max(8, tree.order / 2 + 1);
    const QuadratureRule rule = gauss_legendre(points, 0.0, 1.0);

    std::vector<double> out(cells);
    const double h = 1.0 / cells;
    for (int j = 0; j < cells; ++j) {
        out[j] = cells * integrate_tree(tree, 1, 0.0, 1.0, j * h, (j + 1) * h, rule);
    }
    return out;
}

std::vector<double> detail_norms(const MWTree& tree) {
    std::vector<double> norms(tree.depth, 0.0);
    for (int level = 0; level < tree.depth; ++level) {
        double acc = 0.0;
        for (int i = 0; i < (1 << level); ++i) {
            const int id = (1 << level) + i;
            if (tree.leaf[id]) continue;
            acc += node_detail_sq(tree, id);
        }
        norms[level] = acc;
    }
    return norms;
}

MWTree compress(const MWTree& tree, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("compress: epsilon must be >= 0");
    MWTree out = tree;
    prune(out, 1, epsilon);
    return out;
}

std::vector<double> post_filter(const std::vector<double>& fv,
                                const std::vector<double>& mw, double theta,
                                double lo, double hi) {
    if (fv.size() != mw.size())
        throw std::invalid_argument("post_filter: vector lengths differ");
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("post_filter: theta must lie in [0,1]");
    std::vector<double> out(fv.size());
    for (std::size_t j = 0; j < fv.size(); ++j) {
        out[j] = std::clamp((1.0 - theta) * fv[j] + theta * mw[j], lo, hi);
    }
    return out;
}

}  // namespace bl
