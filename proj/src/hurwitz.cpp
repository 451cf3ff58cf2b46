#include "cmlab/hurwitz.hpp"

#include <cmath>

namespace cmlab {

double eta_density(const SzegoSystem& sys, cplx z, cplx base) {
    if (sys.domain().hole_count() > 0)
        throw error("this metric is computed on simply connected domains only");
    if (std::abs(z - base) < 1e-12)
        return sys.caratheodory(z);
    const cplx fz = sys.ahlfors(z, base).value;
    const cplx dfz = sys.ahlfors_deriv1(z, base);
    const double m = std::norm(fz);
    if (m >= 1.0)
        throw error("Riemann-map transport left the disk (raise N or move inward)");
    return std::abs(dfz) / (1.0 - m);
}

double eta_density_disk(cplx z) {
    // the extremal map through the punctured disk extends to the Moebius
    // automorphism, so the density is the hyperbolic one
    return disk_density(z);
}

double eta_density_halfplane(const HalfPlane& hp, cplx z) { return hp_density(hp, z); }

DensityEvaluator make_hurwitz_evaluator(std::shared_ptr<SzegoSystem> sys, cplx base) {
    return DensityEvaluator{"hurwitz", "transport",
                            [sys, base](cplx z) { return eta_density(*sys, z, base); }};
}

BilipschitzReport bilipschitz_check(const PlanarDomain& domain, const std::vector<cplx>& points,
                                    int node_cap) {
    if (points.empty())
        throw error("bilipschitz check needs at least one point");
    BilipschitzReport rep;
    rep.min_ratio = 1e300;
    rep.max_ratio = -1e300;
    const cplx base = domain.anchor();
    for (const cplx& z : points) {
        const double dist = -domain.signed_distance(z).psi;
        if (!(dist > 0.0))
            throw error("bilipschitz check points must be interior");
        const auto sys = shared_system(domain, recommended_nodes(domain, dist, node_cap));
        const double ratio = eta_density(*sys, z, base) * dist;
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        ++rep.checked;
        if (ratio < 0.125 || ratio > 2.0)
            rep.violations.push_back(z);
    }
    return rep;
}

SweepTable eta_boundary_sweep(const PlanarDomain& domain, double t,
                              const std::vector<double>& deltas, int node_cap) {
    if (domain.hole_count() > 0)
        throw error("boundary sweep of this metric needs a simply connected domain");
    const BoundaryPointData p = domain.boundary_point(t);
    const cplx base = domain.anchor();

    SweepTable table;
    table.columns = {"delta", "eta_times_delta", "is_extrapolated"};
    std::vector<double> values;
    for (double delta : deltas) {
        const cplx z = normal_probe(domain, p, delta);
        const auto sys = shared_system(domain, recommended_nodes(domain, delta, node_cap));
        const double v = eta_density(*sys, z, base) * delta;
        values.push_back(v);
        table.add_row({delta, v, 0.0});
    }
    table.add_row({0.0, extrapolate_linear(deltas, values), 1.0});
    table.metadata["experiment"] = "metric_sweep";
    table.metadata["metric"] = "hurwitz";
    table.metadata["domain_hash"] = domain_hash(domain);
    table.metadata["t"] = t;
    table.metadata["extrapolation"] = "least-squares L + C*delta on the last 4 rows";
    return table;
}

SweepTable continuity_probe(const PlanarDomain& domain, cplx a, const std::vector<double>& radii,
                            int node_cap) {
    if (!domain.contains(a))
        throw error("continuity probe centre must be interior");
    const cplx base = domain.anchor();
    const double dist_a = -domain.signed_distance(a).psi;
    for (double r : radii)
        if (r >= dist_a)
            throw error("continuity probe radius reaches the boundary");

    const double clearance = dist_a - *std::max_element(radii.begin(), radii.end());
    const auto sys = shared_system(domain, recommended_nodes(domain, clearance, node_cap));
    const double eta_a = eta_density(*sys, a, base);

    SweepTable table;
    table.columns = {"radius", "max_difference"};
    for (double r : radii) {
        double worst = 0.0;
        for (int k = 0; k < 8; ++k) {
            const cplx dir = std::polar(1.0, two_pi * k / 8.0);
            worst = std::max(worst, std::abs(eta_density(*sys, a + r * dir, base) - eta_a));
        }
        table.add_row({r, worst});
    }
    table.metadata["experiment"] = "continuity_probe";
    table.metadata["domain_hash"] = domain_hash(domain);
    table.metadata["a"] = {std::real(a), std::imag(a)};
    return table;
}

} // namespace cmlab
