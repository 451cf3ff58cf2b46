#include "cmlab/halfplane.hpp"

#include <cmath>

namespace cmlab {

namespace {

cplx hp_denominator(const HalfPlane& hp, cplx z, cplx a) {
    const cplx den = 2.0 - hp.omega * std::conj(a) - std::conj(hp.omega) * z;
    if (std::abs(den) < 1e-14)
        throw error("half-plane kernel pole (z at the reflected base point)");
    return den;
}

} // namespace

cplx hp_ahlfors(const HalfPlane& hp, cplx z, cplx a) {
    if (!hp.contains(a))
        throw error("half-plane kernel base point must be interior");
    return std::abs(hp.omega) * (z - a) / hp_denominator(hp, z, a);
}

cplx hp_szego(const HalfPlane& hp, cplx z, cplx a) {
    if (!hp.contains(a))
        throw error("half-plane kernel base point must be interior");
    return std::abs(hp.omega) / (two_pi * hp_denominator(hp, z, a));
}

cplx hp_garabedian(const HalfPlane& hp, cplx z, cplx a) {
    if (!hp.contains(a))
        throw error("half-plane kernel base point must be interior");
    if (std::abs(z - a) < 1e-14)
        throw error("Garabedian kernel pole at z = a");
    return 1.0 / (two_pi * (z - a));
}

double hp_density(const HalfPlane& hp, cplx z) {
    const double den = 2.0 - 2.0 * std::real(std::conj(hp.omega) * z);
    if (den <= 0.0)
        throw error("half-plane density is infinite on the boundary and undefined outside");
    return std::abs(hp.omega) / den;
}

cplx hp_extremal_differential(const HalfPlane& hp, cplx z, cplx z0) {
    if (!hp.contains(z0))
        throw error("extremal differential base point must be interior");
    const cplx num = 2.0 - hp.omega * std::conj(z0) - std::conj(hp.omega) * z0;
    const cplx den = hp_denominator(hp, z, z0);
    const cplx den2 = den * den;
    const double w2 = std::norm(hp.omega);
    return w2 * num * num / (den2 * den2);
}

cplx hp_extremal_pole(const HalfPlane& hp, cplx z0) {
    return (2.0 - hp.omega * std::conj(z0)) / std::conj(hp.omega);
}

cplx disk_szego(cplx z, cplx a) {
    if (std::abs(z) >= 1.0 || std::abs(a) >= 1.0)
        throw error("disk Szego kernel requires |z| < 1 and |a| < 1");
    return 1.0 / (two_pi * (1.0 - std::conj(a) * z));
}

double disk_density(cplx z) {
    const double n = std::norm(z);
    if (n >= 1.0)
        throw error("disk density requires |z| < 1");
    return 1.0 / (1.0 - n);
}

double annulus_hyperbolic(const AnnulusSpec& spec, cplx z) {
    const double r = spec.inner_radius;
    const double az = std::abs(z);
    if (!(az > r && az < 1.0))
        throw error("annulus density requires r < |z| < 1");
    const double big_l = std::log(1.0 / r);
    const double s = std::sin(pi * std::log(az) / std::log(r));
    return pi / (2.0 * big_l) / (az * s);
}

double disk_kappa_n(int n) {
    if (n < 1)
        throw error("curvature order must be a positive integer");
    double prod = 1.0;
    double factorial = 1.0;
    for (int k = 1; k <= n; ++k) {
        factorial *= k;
        prod *= factorial;
    }
    return -4.0 * prod * prod;
}

} // namespace cmlab
