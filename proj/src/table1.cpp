#include "modelspec/table1.hpp"

#include "modelspec/bounds.hpp"
#include "modelspec/errors.hpp"
#include "modelspec/profiles.hpp"

#include "parallel.hpp"

#include <numbers>

namespace modelspec::table1 {

namespace {

// Values as printed, n = 2, alpha = pi/2 for case 3.
constexpr double kGolden[kCases][kExponents.size()][kDeltaNumerators.size()] = {
    {
        {27.1285, 12.5875, 5.76216, 3.615235, 2.63716, 2.18278},
        {129.804, 45.6551, 15.8426, 8.43068, 5.41996, 3.98597},
        {633.49, 157.585, 38.6834, 16.7921, 9.29658, 6.02468},
        {2643.65, 465.081, 80.7606, 28.6185, 13.6868, 7.87571},
        {7788.71, 1038.53, 136.711, 41.1932, 17.5401, 9.19918},
    },
    {
        {27.3318, 12.9637, 6.43987, 4.52941, 3.69959, 3.27638},
        {130.731, 46.9574, 17.6385, 10.5314, 7.67446, 6.24665},
        {637.815, 161.89, 42.9072, 20.8735, 13.1648, 9.60296},
        {2661.1, 477.379, 89.3207, 35.4141, 19.3209, 12.609},
        {7839.06, 1065.42, 150.92, 50.8147, 24.6856, 14.7308},
    },
    {
        {27.1916, 12.7303, 6.13046, 4.27308, 3.53423, 3.17492},
        {130.086, 46.1295, 16.7496, 9.8136, 7.1877, 5.93221},
        {634.785, 159.108, 40.7077, 19.3037, 12.1299, 8.9332},
        {2648.82, 469.358, 84.735, 32.6294, 17.6292, 11.5564},
        {7803.57, 1047.8, 143.195, 46.7425, 22.4114, 13.3865},
    },
};

} // namespace

double delta(std::size_t k) { return kDeltaNumerators.at(k) * std::numbers::pi / 24.0; }

double golden(int c, std::size_t i, std::size_t k) {
    detail::require(c >= 1 && c <= kCases, "table1: case must be 1, 2 or 3");
    detail::require(i < kExponents.size() && k < kDeltaNumerators.size(), "table1: index out of range");
    return kGolden[c - 1][i][k];
}

std::vector<Cell> compute(unsigned threads) {
    std::vector<ModelManifold> models;
    models.reserve(kCases);
    for (int c = 1; c <= kCases; ++c) {
        const auto prof = torus_profile(c);
        models.push_back(make_model(prof, 2, prof.recommended_end));
    }

    const std::size_t per_case = kExponents.size() * kDeltaNumerators.size();
    std::vector<Cell> cells(kCases * per_case);
    detail::parallel_for(cells.size(), threads, [&](std::size_t idx) {
        const int c = static_cast<int>(idx / per_case) + 1;
        const std::size_t i = (idx % per_case) / kDeltaNumerators.size();
        const std::size_t k = idx % kDeltaNumerators.size();
        Cell& cell = cells[idx];
        cell.torus_case = c;
        cell.p = kExponents[i];
        cell.delta = delta(k);
        const auto g = grigoryan_mp(models[static_cast<std::size_t>(c - 1)], cell.p, cell.delta);
        cell.value = g.m_p;
        cell.argmax_r = g.argmax_r;
        cell.golden = golden(c, i, k);
        cell.deviation = (cell.value - cell.golden) / cell.golden;
    });
    return cells;
}

} // namespace modelspec::table1
