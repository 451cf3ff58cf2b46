#pragma once

#include <functional>
#include <variant>

#include "cmlab/halfplane.hpp"
#include "cmlab/szego.hpp"

namespace cmlab {

// a positive density z -> rho(z), tagged with the metric it represents and
// how it is computed
struct DensityEvaluator {
    std::string kind;       // caratheodory | hyperbolic | sugawa | hurwitz
    std::string provenance; // oracle | solver | transport
    std::function<double(cplx)> eval;

    double operator()(cplx z) const { return eval(z); }
};

// base point p on the boundary, probes p_j = p - delta_j * normal, affine
// blow-ups T_j(z) = (z - p_j)/delta_j, and the limit half plane
struct ScalingSequence {
    PlanarDomain domain;
    BoundaryPointData p;
    std::vector<double> deltas;
    std::vector<cplx> points;
    HalfPlane limit;

    cplx forward(int j, cplx z) const { return (z - points[j]) / deltas[j]; }
    cplx inverse(int j, cplx z) const { return points[j] + deltas[j] * z; }
};

// deltas are delta0 * 2^-j for j = 0..count-1
ScalingSequence make_sequence(const PlanarDomain& domain, double t, double delta0, int count);

// T_j(D): Fourier coefficients mapped affinely, orientation preserved
PlanarDomain scaled_domain(const ScalingSequence& seq, int j);

// regions compared by the local Hausdorff distance
using Region = std::variant<PlanarDomain, HalfPlane>;

struct HausdorffReport {
    double R = 0.0;
    double d = 0.0;
    double sample_resolution = 0.0;
};

// d_H of the two closed regions clipped to the ball |z| <= R, from dense
// boundary samples and nearest-neighbour search; the sampling step is refined
// until it resolves the reported distance (d >= 10 h or d below 2 h)
HausdorffReport local_hausdorff(const Region& a, const Region& b, double R,
                                double initial_resolution = 0.0, Exec exec = Exec::parallel);

// rho(p_j) * delta_j, the quantity every boundary limit constrains
double pullback_density(const ScalingSequence& seq, int j, const DensityEvaluator& rho);

struct KernelConvergenceReport {
    int j = 0;
    double delta = 0.0;
    double sup_szego = 0.0;
    double sup_ahlfors = 0.0;
    double sup_garabedian = 0.0;
    int nodes = 0;
    bool degraded = false;
};

// sup over the grid of |S_{D_j} - S_H|, |f_{D_j} - f_H|, |L_{D_j} - L_H|
// with the kernels of D_j from a Kerzman-Stein solve on the scaled domain;
// node_override forces the node count, otherwise it grows like 1/delta_j
KernelConvergenceReport kernel_convergence_report(const ScalingSequence& seq, int j, cplx a,
                                                  const std::vector<cplx>& grid,
                                                  int node_override = 0, int node_cap = 8192);

} // namespace cmlab
