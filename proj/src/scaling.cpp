#include "cmlab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cmlab {

ScalingSequence make_sequence(const PlanarDomain& domain, double t, double delta0, int count) {
    if (count < 1)
        throw error("scaling sequence needs count >= 1");
    if (!(delta0 > 0.0) || delta0 >= domain.reach())
        throw error("scaling sequence requires 0 < delta0 < reach");
    const BoundaryPointData p = domain.boundary_point(t);
    ScalingSequence seq{domain, p, {}, {}, HalfPlane(p.outward_normal)};
    for (int j = 0; j < count; ++j) {
        const double d = delta0 * std::pow(2.0, -j);
        seq.deltas.push_back(d);
        seq.points.push_back(p.position - d * p.outward_normal);
    }
    return seq;
}

PlanarDomain scaled_domain(const ScalingSequence& seq, int j) {
    if (j < 0 || j >= static_cast<int>(seq.deltas.size()))
        throw error("scaled domain index out of range");
    return seq.domain.affine(seq.points[j], seq.deltas[j]);
}

namespace {

bool region_member(const Region& region, cplx z) {
    if (std::holds_alternative<HalfPlane>(region))
        return std::get<HalfPlane>(region).psi(z) <= 0.0;
    return std::get<PlanarDomain>(region).contains(z);
}

// boundary of (region ∩ ball) = (region boundary inside the ball) together
// with the circle arcs inside the region
std::vector<cplx> clipped_boundary_samples(const Region& region, double R, double h) {
    std::vector<cplx> samples;

    if (std::holds_alternative<HalfPlane>(region)) {
        const HalfPlane& hp = std::get<HalfPlane>(region);
        const double aw = std::abs(hp.omega);
        const double line_dist = 1.0 / aw;
        if (line_dist < R) {
            const cplx foot = hp.omega / (aw * aw);
            const cplx dir = cplx(0.0, 1.0) * hp.omega / aw;
            const double half = std::sqrt(R * R - line_dist * line_dist);
            const int n = std::max(2, static_cast<int>(std::ceil(2.0 * half / h)));
            for (int i = 0; i <= n; ++i)
                samples.push_back(foot + dir * (-half + 2.0 * half * i / n));
        }
        const int narc = std::max(8, static_cast<int>(std::ceil(two_pi * R / h)));
        for (int i = 0; i < narc; ++i) {
            const cplx z = std::polar(R, two_pi * i / narc);
            if (hp.psi(z) <= 0.0)
                samples.push_back(z);
        }
        return samples;
    }

    const PlanarDomain& dom = std::get<PlanarDomain>(region);
    for (const BoundaryCurve& curve : dom.curves()) {
        // locate the parameter intervals with |gamma| <= R from a fine scan
        const int scan = 8192;
        std::vector<double> radius(scan);
        for (int i = 0; i < scan; ++i)
            radius[i] = std::abs(curve.point(two_pi * i / scan));
        auto refine_crossing = [&](double t_in, double t_out) {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (t_in + t_out);
                if (std::abs(curve.point(mid)) <= R)
                    t_in = mid;
                else
                    t_out = mid;
            }
            return t_in;
        };
        std::vector<std::pair<double, double>> intervals;
        bool all_inside = true, all_outside = true;
        for (int i = 0; i < scan; ++i) {
            (radius[i] <= R ? all_outside : all_inside) = false;
        }
        if (all_outside)
            continue;
        if (all_inside) {
            intervals.emplace_back(0.0, two_pi);
        } else {
            const double step = two_pi / scan;
            for (int i = 0; i < scan; ++i) {
                const int next = (i + 1) % scan;
                if (!(radius[i] > R && radius[next] <= R))
                    continue;
                // entry between t_i and t_{i+1}; walk inside samples to the exit
                const double t_entry = refine_crossing((i + 1) * step, i * step);
                long long k = i + 1;
                while (radius[(k + 1) % scan] <= R)
                    ++k;
                const double t_exit = refine_crossing(k * step, (k + 1) * step);
                intervals.emplace_back(t_entry, t_exit);
            }
        }
        for (const auto& [lo, hi] : intervals) {
            double t = lo;
            samples.push_back(curve.point(t));
            while (t < hi) {
                const double speed = std::max(std::abs(curve.deriv1(t)), 1e-12);
                t += std::min(h / speed, two_pi / 64.0);
                samples.push_back(curve.point(std::min(t, hi)));
            }
        }
    }
    const int narc = std::max(8, static_cast<int>(std::ceil(two_pi * R / h)));
    for (int i = 0; i < narc; ++i) {
        const cplx z = std::polar(R, two_pi * i / narc);
        if (dom.contains(z))
            samples.push_back(z);
    }
    return samples;
}

// uniform-grid nearest-neighbour accelerator over [-R,R]^2
class NearestGrid {
public:
    NearestGrid(const std::vector<cplx>& points, double R, double cell)
        : points_(points), R_(R), cell_(cell) {
        n_ = std::max(1, static_cast<int>(std::ceil(2.0 * R / cell_)));
        buckets_.resize(static_cast<std::size_t>(n_) * n_);
        for (std::size_t i = 0; i < points_.size(); ++i)
            buckets_[index_of(points_[i])].push_back(i);
    }

    double nearest_distance(cplx z) const {
        const int cx = coord(std::real(z));
        const int cy = coord(std::imag(z));
        double best = std::numeric_limits<double>::max();
        for (int ring = 0; ring <= 2 * n_; ++ring) {
            for (int iy = cy - ring; iy <= cy + ring; ++iy) {
                for (int ix = cx - ring; ix <= cx + ring; ++ix) {
                    if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring)
                        continue;
                    if (ix < 0 || iy < 0 || ix >= n_ || iy >= n_)
                        continue;
                    for (std::size_t pi : buckets_[static_cast<std::size_t>(iy) * n_ + ix])
                        best = std::min(best, std::abs(points_[pi] - z));
                }
            }
            // cells on farther rings hold points at distance >= ring * cell
            if (best <= cell_ * ring)
                break;
        }
        return best;
    }

private:
    int coord(double x) const {
        return std::clamp(static_cast<int>(std::floor((x + R_) / cell_)), 0, n_ - 1);
    }
    std::size_t index_of(cplx z) const {
        return static_cast<std::size_t>(coord(std::imag(z))) * n_ + coord(std::real(z));
    }

    const std::vector<cplx>& points_;
    double R_;
    double cell_;
    int n_ = 0;
    std::vector<std::vector<std::size_t>> buckets_;
};

double directed_sup(const std::vector<cplx>& from, const Region& to_region,
                    const NearestGrid& to_grid, double R, Exec exec) {
    std::vector<double> dist(from.size(), 0.0);
    const auto run = [&](std::size_t i) {
        const cplx z = from[i];
        if (region_member(to_region, z) && std::abs(z) <= R + 1e-12) {
            dist[i] = 0.0;
            return;
        }
        dist[i] = to_grid.nearest_distance(z);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(from.size()); ++i)
            run(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < from.size(); ++i)
            run(i);
    }
    double sup = 0.0;
    for (double d : dist)
        sup = std::max(sup, d);
    return sup;
}

} // namespace

HausdorffReport local_hausdorff(const Region& a, const Region& b, double R,
                                double initial_resolution, Exec exec) {
    if (!(R > 0.0))
        throw error("local Hausdorff distance needs R > 0");
    double h = initial_resolution > 0.0 ? initial_resolution : R / 2000.0;

    for (int attempt = 0; attempt < 4; ++attempt) {
        const std::vector<cplx> sa = clipped_boundary_samples(a, R, h);
        const std::vector<cplx> sb = clipped_boundary_samples(b, R, h);
        if (sa.empty() || sb.empty())
            throw error("local Hausdorff distance undefined: a clipped region is empty");
        const double cell = std::max(2.0 * h, R / 256.0);
        const NearestGrid ga(sa, R, cell);
        const NearestGrid gb(sb, R, cell);
        const double d1 = directed_sup(sa, b, gb, R, exec);
        const double d2 = directed_sup(sb, a, ga, R, exec);
        const double d = std::max(d1, d2);
        if (h <= d / 10.0 || d < 2.0 * h)
            return {R, d, h};
        h /= 2.0;
    }
    throw error("local Hausdorff distance could not be resolved at the sampling floor");
}

double pullback_density(const ScalingSequence& seq, int j, const DensityEvaluator& rho) {
    if (j < 0 || j >= static_cast<int>(seq.deltas.size()))
        throw error("pullback index out of range");
    return rho(seq.points[j]) * seq.deltas[j];
}

KernelConvergenceReport kernel_convergence_report(const ScalingSequence& seq, int j, cplx a,
                                                  const std::vector<cplx>& grid,
                                                  int node_override, int node_cap) {
    KernelConvergenceReport rep;
    rep.j = j;
    rep.delta = seq.deltas.at(j);

    const PlanarDomain dj = scaled_domain(seq, j);
    const HalfPlane& hp = seq.limit;

    auto require_inside = [&](cplx z, const char* who) {
        if (!hp.contains(z)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s point (%.6g, %.6g) is not in the half plane", who,
                          std::real(z), std::imag(z));
            throw error(buf);
        }
        if (!dj.contains(z)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "%s point (%.6g, %.6g) is not yet absorbed by the scaled domain (j = %d)",
                          who, std::real(z), std::imag(z), j);
            throw error(buf);
        }
    };
    require_inside(a, "base");
    for (const cplx& z : grid)
        require_inside(z, "grid");

    int nodes = node_override;
    if (nodes == 0) {
        // clearance of the evaluation set inside the scaled domain
        double clearance = std::abs(dj.signed_distance(a).psi);
        for (const cplx& z : grid)
            clearance = std::min(clearance, std::abs(dj.signed_distance(z).psi));
        // resolution is set by the analyticity strip of the near-boundary
        // parameterization, which shrinks like delta_j
        const double speed_local = std::abs(seq.domain.outer().deriv1(seq.p.t));
        const double needed = 16.0 * speed_local / (seq.deltas[j] * clearance);
        nodes = 256;
        while (nodes < needed && nodes < node_cap)
            nodes *= 2;
    }
    rep.nodes = nodes;

    const auto sys = shared_system(dj, nodes);
    rep.degraded = sys->degraded_at(a);

    for (const cplx& z : grid) {
        rep.degraded = rep.degraded || sys->degraded_at(z);
        const cplx s = sys->szego(z, a).value;
        rep.sup_szego = std::max(rep.sup_szego, std::abs(s - hp_szego(hp, z, a)));
        const cplx f = sys->ahlfors(z, a).value;
        rep.sup_ahlfors = std::max(rep.sup_ahlfors, std::abs(f - hp_ahlfors(hp, z, a)));
        if (std::abs(z - a) > 1e-9) {
            const cplx l = sys->garabedian(z, a).value;
            rep.sup_garabedian = std::max(rep.sup_garabedian, std::abs(l - hp_garabedian(hp, z, a)));
        }
    }
    return rep;
}

} // namespace cmlab
