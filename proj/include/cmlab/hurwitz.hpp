#pragma once

#include "cmlab/scaling.hpp"
#include "cmlab/sweep.hpp"

namespace cmlab {

// the metric built from maps of the punctured disk; on simply connected
// domains the extremal covering factors through the Riemann map, so the
// density coincides with the hyperbolic one and is transported the same way
double eta_density(const SzegoSystem& sys, cplx z, cplx base);
double eta_density_disk(cplx z);
double eta_density_halfplane(const HalfPlane& hp, cplx z);

DensityEvaluator make_hurwitz_evaluator(std::shared_ptr<SzegoSystem> sys, cplx base);

struct BilipschitzReport {
    double min_ratio = 0.0; // min of eta * dist over the points
    double max_ratio = 0.0;
    std::size_t checked = 0;
    std::vector<cplx> violations; // points where eta * dist leaves [1/8, 2]
};

// 1/(8 dist) <= eta <= 2/dist at every point
BilipschitzReport bilipschitz_check(const PlanarDomain& domain, const std::vector<cplx>& points,
                                    int node_cap = 8192);

// rows (delta, eta * delta) with the extrapolated limit
SweepTable eta_boundary_sweep(const PlanarDomain& domain, double t,
                              const std::vector<double>& deltas, int node_cap = 8192);

// modulus-of-continuity table: max over 8 compass directions of
// |eta(a + r dir) - eta(a)| for each radius
SweepTable continuity_probe(const PlanarDomain& domain, cplx a, const std::vector<double>& radii,
                            int node_cap = 8192);

} // namespace cmlab
