#pragma once

#include "cmlab/quadrature.hpp"
#include "cmlab/scaling.hpp"
#include "cmlab/sweep.hpp"

namespace cmlab {

// holomorphic quadratic differential pinned to a base point
struct QuadraticDifferentialEval {
    std::string domain_tag; // disk | halfplane | fourier
    cplx base_point;
    std::function<cplx(cplx)> eval;

    // decay data for tail bounds: |phi(z)| <= decay_constant / |z - pole|^4
    bool has_pole_decay = false;
    cplx pole;
    double decay_constant = 0.0;

    cplx operator()(cplx z) const { return eval(z); }
};

// density of the metric built from integrable quadratic differentials;
// 1/(1-|z|^2) on the disk, transported through the Riemann map elsewhere
double q_density_disk(cplx z);
double q_density_halfplane(const HalfPlane& hp, cplx z);

// simply connected Fourier domains: q(z) = |F'(z)| / (1 - |F(z)|^2) for the
// Riemann map F = f(., base)
double q_density(const SzegoSystem& sys, cplx z, cplx base);

DensityEvaluator make_sugawa_evaluator(std::shared_ptr<SzegoSystem> sys, cplx base);

// extremal differentials: phi = 1 on the disk at 0, Moebius pullbacks at
// other base points, the closed form on the half plane, and the Riemann-map
// pullback (F')^2 conj(F'(z0))/F'(z0) on Fourier domains
QuadraticDifferentialEval extremal_differential_disk(cplx z0);
QuadraticDifferentialEval extremal_differential_halfplane(const HalfPlane& hp, cplx z0);
QuadraticDifferentialEval extremal_differential(std::shared_ptr<SzegoSystem> sys, cplx z0);

struct L1Result {
    double value = 0.0;
    double tail_bound = 0.0;
    long cells = 0;
};

// integral of |phi| over the half plane, truncated at the given radius around
// the pole, with the quartic-decay tail bound
L1Result l1_norm_halfplane(const HalfPlane& hp, const QuadraticDifferentialEval& phi,
                           double truncation_radius, double rel_tol = 1e-6);

// integral of |phi| over a bounded domain, optionally clipped to |z| <= clip_radius
// (the clip must then be covered by the differential's decay data)
L1Result l1_norm_domain(const PlanarDomain& domain, const QuadraticDifferentialEval& phi,
                        double clip_radius = 0.0, double abs_tol = 5e-4,
                        Exec exec = Exec::parallel, double eval_clearance = 0.0);

// rows (delta, q * delta) along the inward normal at parameter t, with the
// extrapolated limit appended
SweepTable q_boundary_sweep(const PlanarDomain& domain, double t,
                            const std::vector<double>& deltas, int node_cap = 8192);

} // namespace cmlab
