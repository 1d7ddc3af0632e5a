#pragma once

#include "cwlab/grid.hpp"

namespace cwlab {

/// Nodal gas state (specific volume, velocity, temperature) at time t.
struct GasState {
    double t = 0.0;
    Field v, u, theta;
};

inline bool positive(const GasState& s) {
    return s.v.minCoeff() > 0.0 && s.theta.minCoeff() > 0.0;
}

inline bool finite(const GasState& s) {
    return s.v.isFinite().all() && s.u.isFinite().all() && s.theta.isFinite().all();
}

} // namespace cwlab
