#pragma once

#include <stdexcept>
#include <vector>

namespace bl {

constexpr bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Uniform finite-volume mesh on [0, length]. The cell count must be a
/// power of two so that states embed in the dyadic multiresolution
/// hierarchy used downstream.
struct Grid {
    Grid(double length_, int cells_) : length(length_), cells(cells_) {
        if (length <= 0.0) throw std::invalid_argument("Grid: length must be positive");
        if (!is_power_of_two(cells))
            throw std::invalid_argument("Grid: cell count must be a power of two");
        dx = length / cells;
    }

    double length;
    int cells;
    double dx;

    double center(int j) const { return (j + 0.5) * dx; }
    double interface(int j) const { return j * dx; }

    std::vector<double> centers() const {
        std::vector<double> x(cells);
        for (int j = 0; j < cells; ++j) x[j] = center(j);
        return x;
    }
};

}  // namespace bl
