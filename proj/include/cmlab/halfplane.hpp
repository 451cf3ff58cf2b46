#pragma once

#include "cmlab/geometry.hpp"

namespace cmlab {

// Half plane H = { z : Re(conj(omega) z) < 1 }.  The origin is interior and
// the boundary is the line Re(conj(omega) z) = 1.
struct HalfPlane {
    cplx omega;

    explicit HalfPlane(cplx w) : omega(w) {
        if (std::abs(w) == 0.0)
            throw error("half plane requires nonzero omega");
    }

    bool contains(cplx z) const { return std::real(std::conj(omega) * z) < 1.0; }
    // signed distance to the boundary line, negative inside
    double psi(cplx z) const { return (std::real(std::conj(omega) * z) - 1.0) / std::abs(omega); }
};

struct AnnulusSpec {
    double inner_radius;

    explicit AnnulusSpec(double r) : inner_radius(r) {
        if (!(r > 0.0 && r < 1.0))
            throw error("annulus inner radius must lie strictly between 0 and 1");
    }
};

// closed-form kernels and metrics --------------------------------------

// Ahlfors map f(z,a) = |omega| (z-a) / (2 - omega conj(a) - conj(omega) z)
cplx hp_ahlfors(const HalfPlane& hp, cplx z, cplx a);

// Szego kernel S(z,a) = (1/2pi) |omega| / (2 - omega conj(a) - conj(omega) z)
cplx hp_szego(const HalfPlane& hp, cplx z, cplx a);

// Garabedian kernel L(z,a) = (1/2pi) 1/(z-a)
cplx hp_garabedian(const HalfPlane& hp, cplx z, cplx a);

// common density |omega| / (2 - 2 Re(conj(omega) z)); equals the
// Caratheodory, hyperbolic, Sugawa and Hurwitz densities of the half plane
double hp_density(const HalfPlane& hp, cplx z);

// extremal quadratic differential at z0:
// phi(z) = |omega|^2 (2 - omega conj(z0) - conj(omega) z0)^2 / (2 - omega conj(z0) - conj(omega) z)^4
cplx hp_extremal_differential(const HalfPlane& hp, cplx z, cplx z0);

// pole of the extremal differential, Z0 = (2 - omega conj(z0)) / conj(omega);
// always lies outside the closed half plane
cplx hp_extremal_pole(const HalfPlane& hp, cplx z0);

// disk ------------------------------------------------------------------

// S(z,a) = 1 / (2pi (1 - conj(a) z)), |z| < 1, |a| < 1
cplx disk_szego(cplx z, cplx a);

// hyperbolic = Caratheodory density 1/(1-|z|^2); equals 2pi S(z,z)
double disk_density(cplx z);

// annulus ---------------------------------------------------------------

// hyperbolic density (curvature -4 normalization) of {r < |z| < 1}:
//   lambda(z) = pi / (2 log(1/r)) * 1 / (|z| sin(pi log|z| / log r))
// so that lambda * dist -> 1/2 at both boundary circles.
double annulus_hyperbolic(const AnnulusSpec& spec, cplx z);

// disk value of the n-th order curvature: -4 (prod_{k=1..n} k!)^2
double disk_kappa_n(int n);

} // namespace cmlab
