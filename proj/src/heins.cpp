#include "cmlab/heins.hpp"

#include <cmath>

#include "cmlab/hurwitz.hpp"
#include "cmlab/sugawa.hpp"

namespace cmlab {

HeinsSample generalized_T(const DensityEvaluator& rho, cplx a, double r, int quadrature_nodes,
                          const PlanarDomain* domain) {
    if (!(r > 0.0))
        throw error("circle average radius must be positive");
    if (quadrature_nodes < 64 || (quadrature_nodes & (quadrature_nodes - 1)) != 0)
        throw error("circle average node count must be a power of two >= 64");
    if (domain) {
        // conservative containment of the closed circle
        for (int k = 0; k < 16; ++k)
            if (domain->signed_distance(a + std::polar(r, two_pi * k / 16.0)).psi >= 0.0)
                throw error("circle average leaves the domain");
    }
    const double rho_a = rho(a);
    if (!(rho_a > 0.0))
        throw error("density must be positive at the centre");
    double mean = 0.0;
    for (int k = 0; k < quadrature_nodes; ++k) {
        const double v = rho(a + std::polar(r, two_pi * k / quadrature_nodes));
        if (!(v > 0.0))
            throw error("density must be positive on the circle");
        mean += std::log(v);
    }
    mean /= quadrature_nodes;

    HeinsSample out;
    out.a = a;
    out.r = r;
    out.quadrature_nodes = quadrature_nodes;
    out.value = -(4.0 / (r * r)) * (mean - std::log(rho_a)) / (rho_a * rho_a);
    return out;
}

double scaling_invariance_check(const ScalingSequence& seq, int j, const DensityEvaluator& rho,
                                double r, int quadrature_nodes) {
    const double delta = seq.deltas.at(j);
    const HeinsSample lhs = generalized_T(rho, seq.points[j], r * delta, quadrature_nodes);

    DensityEvaluator pushed{rho.kind, rho.provenance,
                            [&seq, j, delta, &rho](cplx w) { return rho(seq.inverse(j, w)) * delta; }};
    const HeinsSample rhs = generalized_T(pushed, cplx(0.0, 0.0), r, quadrature_nodes);
    return std::abs(lhs.value - rhs.value);
}

SweepTable heins_boundary_sweep(const PlanarDomain& domain, double t, const std::string& rho_kind,
                                double r0, const std::vector<double>& deltas, int quadrature_nodes,
                                int node_cap) {
    if (rho_kind != "sugawa" && rho_kind != "hurwitz")
        throw error("generalized-curvature sweep supports the sugawa and hurwitz densities");
    if (!(r0 > 0.0 && r0 <= 0.5))
        throw error("sweep circle factor r0 must lie in (0, 1/2]");
    const BoundaryPointData p = domain.boundary_point(t);
    const cplx base = domain.anchor();

    SweepTable table;
    table.columns = {"delta", "generalized_curvature", "is_extrapolated"};
    std::vector<double> values;
    for (double delta : deltas) {
        const cplx center = normal_probe(domain, p, delta);
        const double clearance = delta * (1.0 - r0);
        const auto sys = shared_system(domain, recommended_nodes(domain, clearance, node_cap));
        const DensityEvaluator rho = (rho_kind == "sugawa") ? make_sugawa_evaluator(sys, base)
                                                            : make_hurwitz_evaluator(sys, base);
        const HeinsSample s = generalized_T(rho, center, r0 * delta, quadrature_nodes);
        values.push_back(s.value);
        table.add_row({delta, s.value, 0.0});
    }
    table.add_row({0.0, extrapolate_linear(deltas, values), 1.0});
    table.metadata["experiment"] = "heins_sweep";
    table.metadata["metric"] = rho_kind;
    table.metadata["r0"] = r0;
    table.metadata["quadrature_nodes"] = quadrature_nodes;
    table.metadata["domain_hash"] = domain_hash(domain);
    table.metadata["t"] = t;
    table.metadata["extrapolation"] = "least-squares L + C*delta on the last 4 rows";
    return table;
}

} // namespace cmlab
