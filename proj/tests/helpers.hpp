#pragma once

#include <cstddef>
#include <cstdint>

#include "sqeiar/config.hpp"
#include "sqeiar/control.hpp"
#include "sqeiar/grid.hpp"

namespace sqeiar::testing {

/// Default scenario on a coarse grid.
inline Problem small_problem(std::size_t nx = 21, std::size_t nt = 300) {
    ScenarioConfig cfg;
    cfg.grid.nx = nx;
    cfg.grid.nt = nt;
    return make_problem(cfg);
}

inline ControlPair constant_controls(const Problem& pb, double u, double v_fraction) {
    ControlPair w = ControlPair::zero(pb.grid);
    const auto mask = region_mask(pb.grid, pb.regions);
    for (std::size_t m = 0; m < pb.grid.rows(); ++m) {
        for (std::size_t j = 0; j < pb.grid.nx; ++j) {
            w.u(m, j) = u;
            if (mask[j]) w.v(m, j) = v_fraction * pb.regions.quarantine_bound();
        }
    }
    return w;
}

inline InitialState zero_initial(const Grid& grid) {
    InitialState init;
    for (auto& v : init) v.assign(grid.nx, 0.0);
    return init;
}

}  // namespace sqeiar::testing
