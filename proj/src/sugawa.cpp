#include "cmlab/sugawa.hpp"

#include <cmath>

namespace cmlab {

double q_density_disk(cplx z) { return disk_density(z); }

double q_density_halfplane(const HalfPlane& hp, cplx z) { return hp_density(hp, z); }

double q_density(const SzegoSystem& sys, cplx z, cplx base) {
    if (sys.domain().hole_count() > 0)
        throw error("quadratic-differential density is computed on simply connected domains only");
    if (std::abs(z - base) < 1e-12)
        return sys.caratheodory(z);
    const cplx fz = sys.ahlfors(z, base).value;
    const cplx dfz = sys.ahlfors_deriv1(z, base);
    const double m = std::norm(fz);
    if (m >= 1.0)
        throw error("Riemann-map transport left the disk (raise N or move inward)");
    return std::abs(dfz) / (1.0 - m);
}

DensityEvaluator make_sugawa_evaluator(std::shared_ptr<SzegoSystem> sys, cplx base) {
    return DensityEvaluator{"sugawa", "transport",
                            [sys, base](cplx z) { return q_density(*sys, z, base); }};
}

QuadraticDifferentialEval extremal_differential_disk(cplx z0) {
    if (std::abs(z0) >= 1.0)
        throw error("extremal differential base point must be interior");
    QuadraticDifferentialEval out;
    out.domain_tag = "disk";
    out.base_point = z0;
    // pullback of phi = 1 at 0 under the Moebius map vanishing at z0
    const double s = 1.0 - std::norm(z0);
    out.eval = [z0, s](cplx z) {
        const cplx den = 1.0 - std::conj(z0) * z;
        const cplx d = s / (den * den); // M'(z), with M'(z0) = 1/s > 0
        return d * d;
    };
    return out;
}

QuadraticDifferentialEval extremal_differential_halfplane(const HalfPlane& hp, cplx z0) {
    if (!hp.contains(z0))
        throw error("extremal differential base point must be interior");
    QuadraticDifferentialEval out;
    out.domain_tag = "halfplane";
    out.base_point = z0;
    out.eval = [hp, z0](cplx z) { return hp_extremal_differential(hp, z, z0); };
    out.has_pole_decay = true;
    out.pole = hp_extremal_pole(hp, z0);
    const double num = std::norm(2.0 - hp.omega * std::conj(z0) - std::conj(hp.omega) * z0);
    out.decay_constant = num / std::norm(hp.omega);
    return out;
}

QuadraticDifferentialEval extremal_differential(std::shared_ptr<SzegoSystem> sys, cplx z0) {
    if (sys->domain().hole_count() > 0)
        throw error("extremal differential transport needs a simply connected domain");
    if (!sys->domain().contains(z0))
        throw error("extremal differential base point must be interior");
    QuadraticDifferentialEval out;
    out.domain_tag = "fourier";
    out.base_point = z0;
    const double c0 = sys->caratheodory(z0); // F'(z0) > 0 for the normalized map
    const cplx unimodular = std::conj(cplx(c0, 0.0)) / cplx(c0, 0.0);
    out.eval = [sys, z0, unimodular](cplx z) {
        const cplx d = (std::abs(z - z0) < 1e-12) ? cplx(sys->caratheodory(z0), 0.0)
                                                  : sys->ahlfors_deriv1(z, z0);
        return d * d * unimodular;
    };
    return out;
}

L1Result l1_norm_halfplane(const HalfPlane& hp, const QuadraticDifferentialEval& phi,
                           double truncation_radius, double rel_tol) {
    const cplx pole = phi.has_pole_decay ? phi.pole : hp_extremal_pole(hp, phi.base_point);
    const auto f = [&phi](cplx z) { return std::abs(phi(z)); };
    const QuadratureResult r = integrate_over_halfplane(hp, f, pole, truncation_radius, rel_tol);
    return {r.value, r.tail_bound, r.cells};
}

L1Result l1_norm_domain(const PlanarDomain& domain, const QuadraticDifferentialEval& phi,
                        double clip_radius, double abs_tol, Exec exec, double eval_clearance) {
    const auto f = [&phi](cplx z) { return std::abs(phi(z)); };
    const QuadratureResult r =
        integrate_over_domain(domain, f, abs_tol, clip_radius, exec, eval_clearance);
    L1Result out{r.value, 0.0, r.cells};
    if (clip_radius > 0.0) {
        if (!phi.has_pole_decay)
            throw error("clipped integral needs decay data for the tail bound");
        const double margin = clip_radius - std::abs(phi.pole);
        if (!(margin > 0.0))
            throw error("truncation radius must move past the differential pole");
        out.tail_bound = pi * phi.decay_constant / (margin * margin);
    }
    return out;
}

SweepTable q_boundary_sweep(const PlanarDomain& domain, double t,
                            const std::vector<double>& deltas, int node_cap) {
    if (domain.hole_count() > 0)
        throw error("boundary sweep of this metric needs a simply connected domain");
    const BoundaryPointData p = domain.boundary_point(t);
    const cplx base = domain.anchor();

    SweepTable table;
    table.columns = {"delta", "q_times_delta", "is_extrapolated"};
    std::vector<double> values;
    for (double delta : deltas) {
        const cplx z = normal_probe(domain, p, delta);
        const auto sys = shared_system(domain, recommended_nodes(domain, delta, node_cap));
        const double v = q_density(*sys, z, base) * delta;
        values.push_back(v);
        table.add_row({delta, v, 0.0});
    }
    table.add_row({0.0, extrapolate_linear(deltas, values), 1.0});
    table.metadata["experiment"] = "metric_sweep";
    table.metadata["metric"] = "sugawa";
    table.metadata["domain_hash"] = domain_hash(domain);
    table.metadata["t"] = t;
    table.metadata["extrapolation"] = "least-squares L + C*delta on the last 4 rows";
    return table;
}

} // namespace cmlab
