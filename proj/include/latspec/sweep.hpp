#pragma once

#include <cstddef>
#include <stdexcept>
#include <thread>
#include <vector>

#include "latspec/classify.hpp"
#include "latspec/params.hpp"

namespace latspec {

/// Rectangular grid in the (delta, sigma) plane at fixed alpha; endpoints
/// are included.
struct SweepGrid {
    double delta_min = -4.0, delta_max = 4.0;
    double sigma_min = -4.0, sigma_max = 4.0;
    int resolution = 400;  // points per axis
};

struct RasterCell {
    double delta = 0.0, sigma = 0.0;
    RegionTag tag = RegionTag::Unclassified;
    CaseLabel label = CaseLabel::None;
    int count = -1;  // mandated discrete-eigenvalue count
};

/// Region raster over the grid, row-major with sigma as the slow index.
/// Rows are distributed over up to `threads` workers (hardware default when
/// zero); cells are written into a preallocated buffer so the output order
/// is deterministic regardless of scheduling.
inline std::vector<RasterCell> sweep_raster(double alpha, const SweepGrid& grid,
                                            double tol = 0.0, unsigned threads = 0) {
    if (grid.resolution < 2)
        throw std::invalid_argument("sweep resolution must be at least 2");
    const int res = grid.resolution;
    const double dspan = grid.delta_max - grid.delta_min;
    const double sspan = grid.sigma_max - grid.sigma_min;

    std::vector<RasterCell> cells(static_cast<std::size_t>(res) * res);
    // multiply before dividing so representable fractions of the span (the
    // midpoint in particular) land exactly on the grid
    auto run_rows = [&](int row_begin, int row_end) {
        for (int r = row_begin; r < row_end; ++r) {
            const double sigma = grid.sigma_min + (r * sspan) / (res - 1);
            for (int c = 0; c < res; ++c) {
                const double delta = grid.delta_min + (c * dspan) / (res - 1);
                RasterCell& cell = cells[static_cast<std::size_t>(r) * res + c];
                cell.delta = delta;
                cell.sigma = sigma;
                const Region reg = classify(make_normalized(alpha, delta, sigma), tol);
                cell.tag = reg.tag;
                cell.label = reg.label;
                cell.count = expected_eigenvalue_count(reg);
            }
        }
    };

    unsigned workers = threads ? threads : std::thread::hardware_concurrency();
    if (workers < 1) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(res));
    if (workers == 1) {
        run_rows(0, res);
        return cells;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (res + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const int b = static_cast<int>(w) * chunk;
        const int e = std::min(res, b + chunk);
        if (b >= e) break;
        pool.emplace_back(run_rows, b, e);
    }
    for (auto& th : pool) th.join();
    return cells;
}

}  // namespace latspec
