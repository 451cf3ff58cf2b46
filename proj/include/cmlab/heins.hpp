#pragma once

#include "cmlab/scaling.hpp"
#include "cmlab/sweep.hpp"

namespace cmlab {

struct HeinsSample {
    cplx a;
    double r = 0.0;
    int quadrature_nodes = 0;
    double value = 0.0;
};

// generalized curvature of a continuous conformal density by circle averages:
//   T(rho, a, r) = -(4/r^2) [ mean_theta log rho(a + r e^{i theta}) - log rho(a) ] / rho(a)^2
// with an M-point periodic trapezoid mean; when a domain is supplied, the
// closed circle must lie inside it
HeinsSample generalized_T(const DensityEvaluator& rho, cplx a, double r, int quadrature_nodes = 256,
                          const PlanarDomain* domain = nullptr);

// exact affine invariance: T(rho, p_j, r |psi(p_j)|) = T((T_j)_* rho, 0, r);
// returns the defect of the two evaluations
double scaling_invariance_check(const ScalingSequence& seq, int j, const DensityEvaluator& rho,
                                double r, int quadrature_nodes = 256);

// rows (delta_j, T(rho, p_j, r0 delta_j)) for the transported density of the
// requested kind, with the extrapolated limit appended
SweepTable heins_boundary_sweep(const PlanarDomain& domain, double t, const std::string& rho_kind,
                                double r0, const std::vector<double>& deltas,
                                int quadrature_nodes = 256, int node_cap = 8192);

} // namespace cmlab
