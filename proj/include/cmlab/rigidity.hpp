#pragma once

#include "cmlab/scaling.hpp"
#include "cmlab/sweep.hpp"

namespace cmlab {

// two-sided bracket for the rigidity constant of a non-simply-connected
// domain: c/lambda from below, 1 from above
struct RigidityBounds {
    cplx z;
    double lower = 0.0;
    double upper = 1.0;
};

RigidityBounds omega_bounds(const AnnulusSpec& spec, const SzegoSystem& sys, cplx z);

// lower bound along |z| = 1 - delta on the annulus, extrapolated toward 1
SweepTable rigidity_boundary_sweep(const AnnulusSpec& spec, const std::vector<double>& deltas,
                                   int node_cap = 8192);

} // namespace cmlab
