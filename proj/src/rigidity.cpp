#include "cmlab/rigidity.hpp"

#include <cmath>

namespace cmlab {

RigidityBounds omega_bounds(const AnnulusSpec& spec, const SzegoSystem& sys, cplx z) {
    const double az = std::abs(z);
    if (!(az > spec.inner_radius && az < 1.0))
        throw error("rigidity bounds need a point inside the annulus");
    if (sys.domain().hole_count() != 1)
        throw error("rigidity bounds need the Kerzman-Stein system of the annulus");
    RigidityBounds out;
    out.z = z;
    out.lower = sys.caratheodory(z) / annulus_hyperbolic(spec, z);
    out.upper = 1.0;
    if (!(out.lower > 0.0) || out.lower > 1.0 + 1e-9)
        throw error("rigidity lower bound left (0, 1]");
    return out;
}

SweepTable rigidity_boundary_sweep(const AnnulusSpec& spec, const std::vector<double>& deltas,
                                   int node_cap) {
    const PlanarDomain annulus = make_annulus(spec.inner_radius);
    SweepTable table;
    table.columns = {"delta", "omega_lower_bound", "omega_upper_bound", "is_extrapolated"};
    std::vector<double> values;
    for (double delta : deltas) {
        if (!(delta > 0.0 && delta < 1.0 - spec.inner_radius))
            throw error("rigidity sweep probes must stay inside the annulus");
        const cplx z(1.0 - delta, 0.0);
        const auto sys = shared_system(annulus, recommended_nodes(annulus, delta, node_cap));
        const RigidityBounds b = omega_bounds(spec, *sys, z);
        values.push_back(b.lower);
        table.add_row({delta, b.lower, 1.0, 0.0});
    }
    table.add_row({0.0, extrapolate_linear(deltas, values), 1.0, 1.0});
    table.metadata["experiment"] = "rigidity_sweep";
    table.metadata["r"] = spec.inner_radius;
    table.metadata["extrapolation"] = "least-squares L + C*delta on the last 4 rows";
    return table;
}

} // namespace cmlab
