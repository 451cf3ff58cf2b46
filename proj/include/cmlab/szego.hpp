#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cmlab/geometry.hpp"
#include "cmlab/linalg.hpp"

namespace cmlab {

struct KernelValue {
    cplx value;
    bool degraded = false; // evaluation point within 3 node spacings of the boundary
};

struct BoundaryNode {
    cplx pos;
    cplx unit_tangent;
    double speed = 0.0;
    double weight = 0.0; // arclength weight |gamma'| 2pi/N
    double t = 0.0;
    int curve = 0;
};

// Nystrom discretization of the Kerzman-Stein equation
//   S(z,a) + int_bdD A(z,w) S(w,a) ds(w) = conj(T(z) / (2 pi i (z - a)))
// with the smooth skew-hermitian kernel
//   A(z,w) = (1/2pi i) [ conj(T(z))/(conj(w)-conj(z)) - T(w)/(w-z) ],  A(z,z) = 0.
// Periodic trapezoid nodes per curve; the weighted system is solved by LU for
// small systems that are reused and by GMRES otherwise (I + A is normal with
// spectrum on the line Re = 1).
class SzegoSystem {
public:
    SzegoSystem(PlanarDomain domain, int nodes_per_curve, Exec exec = Exec::parallel);

    const PlanarDomain& domain() const { return domain_; }
    int nodes_per_curve() const { return n_per_curve_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<BoundaryNode>& nodes() const { return nodes_; }

    double max_node_spacing() const { return max_spacing_; }
    // max |A(z_p,z_q) + conj(A(z_q,z_p))| over a sample of node pairs
    double skew_defect() const { return skew_defect_; }
    // max |A| over the grid; identically zero for circles
    double kernel_sup() const { return kernel_sup_; }

    bool degraded_at(cplx z) const;

    // boundary values S(w_i, a); solved once per base point and cached
    std::shared_ptr<const std::vector<cplx>> boundary_density(cplx a) const;

    KernelValue szego(cplx z, cplx a) const;
    KernelValue garabedian(cplx z, cplx a) const;
    KernelValue ahlfors(cplx z, cplx a) const;

    // c_D(z) = 2 pi S(z,z)
    double caratheodory(cplx z) const;

    // d^m/dz^m of S(.,a), L(.,a), f(.,a) in the first slot
    cplx szego_deriv1(cplx z, cplx a, int m) const;
    cplx garabedian_deriv1(cplx z, cplx a, int m) const;
    cplx ahlfors_deriv1(cplx z, cplx a) const;

    // mixed partials d^j_z d^k_zbar S(z,z) for all j <= max_j, k <= max_k,
    // by Cauchy integrals over a two-circle tensor grid around z
    Matrix szego_partials_all(cplx z, int max_j, int max_k) const;
    cplx szego_partials(cplx z, int j, int k) const;

private:
    std::vector<cplx> solve_density(cplx a) const;
    cplx cauchy_eval(const std::vector<cplx>& boundary_values, cplx z, int deriv_order) const;
    cplx weighted_entry(std::size_t p, std::size_t q) const;
    void apply_system(const std::vector<cplx>& x, std::vector<cplx>& y) const;

    PlanarDomain domain_;
    int n_per_curve_ = 0;
    std::vector<BoundaryNode> nodes_;
    std::vector<double> sqrt_w_;
    Matrix system_; // I + weighted Kerzman-Stein matrix; empty above the storage cap
    bool stored_ = false;
    double max_spacing_ = 0.0;
    double skew_defect_ = 0.0;
    double kernel_sup_ = 0.0;

    mutable std::mutex mutex_;
    mutable std::map<std::pair<double, double>, std::shared_ptr<const std::vector<cplx>>> cache_;
    mutable std::unique_ptr<LuFactorization> lu_;
    mutable int solve_count_ = 0;
};

// smallest power-of-two node count that keeps an evaluation at the given
// clearance from the boundary out of the degraded band (with the 2x margin
// used by the derivative circles)
int recommended_nodes(const PlanarDomain& domain, double clearance, int cap = 8192);

// process-wide cache of built systems keyed by (domain hash, N)
std::shared_ptr<SzegoSystem> shared_system(const PlanarDomain& domain, int nodes_per_curve);

} // namespace cmlab
