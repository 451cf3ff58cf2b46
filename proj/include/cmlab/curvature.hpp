#pragma once

#include "cmlab/szego.hpp"
#include "cmlab/sweep.hpp"

namespace cmlab {

// (n+1) x (n+1) matrix of mixed partials d^j_z d^k_zbar c_D(z), j,k = 0..n
struct CurvatureMatrix {
    int n = 0;
    cplx z;
    Matrix entries;
    double hermitian_defect = 0.0;
    double h_used = 0.0; // finite-difference step when that path produced the entries
};

enum class CurvatureMethod { kernel_derivative, finite_difference };

struct CurvatureReport {
    cplx z;
    int n = 0;
    double kappa = 0.0;
    CurvatureMethod method = CurvatureMethod::kernel_derivative;
    double error_estimate = 0.0;
};

// entries via 2 pi * the Szego kernel mixed partials
CurvatureMatrix mixed_partials(const SzegoSystem& sys, cplx z, int n);

// central finite differences of c_D with two-level Richardson
CurvatureMatrix mixed_partials_fd(const SzegoSystem& sys, cplx z, int n);

// kappa_n = -4 c^{-(n+1)^2} det((d^{j kbar} c))
CurvatureReport kappa_n(const SzegoSystem& sys, cplx z, int n,
                        CurvatureMethod method = CurvatureMethod::kernel_derivative);

// curvature through -c^{-2} Laplacian(log c) with finite differences of c;
// an independent route to kappa_1
double kappa1_laplacian_fd(const SzegoSystem& sys, cplx z);

// max relative deviation between kernel-derivative and finite-difference entries
double fd_cross_check(const SzegoSystem& sys, cplx z, int n);

// rows (delta, kappa_n at the normal probe) plus the extrapolated limit;
// node counts grow with shrinking delta through the shared system cache
SweepTable kappa_boundary_sweep(const PlanarDomain& domain, const BoundaryPointData& p,
                                const std::vector<int>& orders, const std::vector<double>& deltas,
                                int node_cap = 8192);

// same sweep on one prebuilt system; fails with the minimal node estimate if
// any probe is degraded at this resolution
SweepTable kappa_boundary_sweep_fixed(const SzegoSystem& sys, const BoundaryPointData& p,
                                      const std::vector<int>& orders,
                                      const std::vector<double>& deltas);

} // namespace cmlab
