#pragma once

#include <functional>

#include "cmlab/halfplane.hpp"
#include "cmlab/linalg.hpp"

namespace cmlab {

struct QuadratureResult {
    double value = 0.0;
    double tail_bound = 0.0; // bound on the truncated mass, when a truncation applies
    long cells = 0;
};

// adaptive cell quadrature of a nonnegative integrand over domain ∩ {|z| <= clip_radius};
// cells are classified inside/outside through the signed distance, boundary
// cells are split down to a resolution floor and estimated by subsampling.
// When eval_clearance > 0, the integrand is only evaluated at points at least
// that far inside the domain (shallower points are clamped to that depth along
// the inward normal); the induced error is of order clearance^2 * perimeter
// times the gradient of f near the boundary.
QuadratureResult integrate_over_domain(const PlanarDomain& domain,
                                       const std::function<double(cplx)>& f, double abs_tol,
                                       double clip_radius = 0.0, Exec exec = Exec::parallel,
                                       double eval_clearance = 0.0);

// polar panels around the given exterior pole over halfplane ∩ {|z - pole| <= truncation_radius};
// the tail bound comes from a |z - pole|^-4 majorant fitted on the outer ring
QuadratureResult integrate_over_halfplane(const HalfPlane& hp,
                                          const std::function<double(cplx)>& f, cplx pole,
                                          double truncation_radius, double rel_tol = 1e-6);

} // namespace cmlab
