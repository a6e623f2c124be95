#include "bl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bl {

ErrorMetrics error_metrics(const std::vector<double>& num,
                           const std::vector<double>& ref) {
    if (num.size() != ref.size())
        throw std::invalid_argument("error_metrics: vector lengths differ");
    if (num.empty()) return {};
    ErrorMetrics m;
    double sum_sq = 0.0;
    double sum_abs = 0.0;
    for (std::size_t j = 0; j < num.size(); ++j) {
        const double e = num[j] - ref[j];
        sum_sq += e * e;
        sum_abs += std::abs(e);
        m.linf = std::max(m.linf, std::abs(e));
    }
    const double n = static_cast<double>(num.size());
    m.rmse = std::sqrt(sum_sq / n);
    m.l1 = sum_abs / n;
    return m;
}

double fv_mw_rmse(const std::vector<double>& fv, const std::vector<double>& mw) {
    return error_metrics(fv, mw).rmse;
}

std::optional<double> front_location(const std::vector<double>& profile,
                                     const Grid& grid, double threshold) {
    const int n = static_cast<int>(profile.size());
    if (n != grid.cells)
        throw std::invalid_argument("front_location: profile/grid mismatch");
    for (int j = n - 2; j >= 0; --j) {
        const double a = profile[j] - threshold;
        const double b = profile[j + 1] - threshold;
        if (a * b > 0.0) continue;
        if (a == 0.0 && b == 0.0) return grid.center(j + 1);
        if (a == b) continue;
        const double frac = a / (a - b);
        return grid.center(j) + frac * grid.dx;
    }
    return std::nullopt;
}

double mass_balance_defect(const SaturationState& initial,
                           const SaturationState& final_state,
                           const FluxLedger& ledger, const Grid& grid) {
    if (initial.averages.size() != final_state.averages.size() ||
        static_cast<int>(initial.averages.size()) != grid.cells)
        throw std::invalid_argument("mass_balance_defect: dimension mismatch");
    double stored = 0.0;
    for (int j = 0; j < grid.cells; ++j) {
        stored += (final_state.averages[j] - initial.averages[j]) * grid.dx;
    }
    return std::abs(stored -
                    (ledger.integrated_inlet - ledger.integrated_outlet));
}

std::vector<double> detail_energies(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    if (!is_power_of_two(n))
        throw std::invalid_argument("detail_energies: length must be a power of two");
    int m = 0;
    while ((1 << m) < n) ++m;

    std::vector<double> energies(m, 0.0);
    std::vector<double> work = values;
    for (int s = 1; s <= m; ++s) {
        const int half = static_cast<int>(work.size()) / 2;
        double energy = 0.0;
        for (int j = 0; j < half; ++j) {
            const double coarse = 0.5 * (work[2 * j] + work[2 * j + 1]);
            const double detail = 0.5 * (work[2 * j] - work[2 * j + 1]);
            energy += detail * detail;
            work[j] = coarse;
        }
        work.resize(half);
        energies[m - s] = energy;  // finest split gets the highest level
    }
    return energies;
}

double total_variation(const std::vector<double>& values) {
    if (values.empty())
        throw std::invalid_argument("total_variation: empty input");
    double tv = 0.0;
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        tv += std::abs(values[j + 1] - values[j]);
    }
    return tv;
}

}  // namespace bl
