#include "cmlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cmlab {

namespace {

// 4-point Gauss-Legendre on [-1, 1]
constexpr double kG4x[4] = {-0.86113631159405258, -0.33998104358485626, 0.33998104358485626,
                            0.86113631159405258};
constexpr double kG4w[4] = {0.34785484513745386, 0.65214515486254614, 0.65214515486254614,
                            0.34785484513745386};
constexpr double kG2x[2] = {-0.57735026918962576, 0.57735026918962576};
constexpr double kG2w[2] = {1.0, 1.0};

struct Cell {
    cplx center;
    double half = 0.0;
};

double tensor_gauss(const std::function<double(cplx)>& f, const Cell& c, const double* xs,
                    const double* ws, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            acc += ws[i] * ws[j] *
                   f(c.center + cplx(c.half * xs[i], c.half * xs[j]));
    return acc * c.half * c.half;
}

} // namespace

QuadratureResult integrate_over_domain(const PlanarDomain& domain,
                                       const std::function<double(cplx)>& f, double abs_tol,
                                       double clip_radius, Exec exec, double eval_clearance) {
    if (!(abs_tol > 0.0))
        throw error("quadrature tolerance must be positive");

    const auto clamp_depth = [&](cplx z) {
        if (eval_clearance <= 0.0)
            return z;
        const SignedDistanceResult sd = domain.signed_distance(z);
        if (sd.psi <= -eval_clearance)
            return z;
        const cplx n = domain.boundary_point(sd.nearest_t, sd.curve_index).outward_normal;
        return sd.nearest_point - eval_clearance * n;
    };

    // bounding box of the boundary, clipped
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& curve : domain.curves())
        for (const cplx& p : curve.polyline()) {
            xmin = std::min(xmin, std::real(p));
            xmax = std::max(xmax, std::real(p));
            ymin = std::min(ymin, std::imag(p));
            ymax = std::max(ymax, std::imag(p));
        }
    const bool clipped = clip_radius > 0.0;
    if (clipped) {
        xmin = std::max(xmin, -clip_radius);
        xmax = std::min(xmax, clip_radius);
        ymin = std::max(ymin, -clip_radius);
        ymax = std::min(ymax, clip_radius);
    }
    if (!(xmax > xmin) || !(ymax > ymin))
        throw error("quadrature region is empty");

    const double box_w = xmax - xmin, box_h = ymax - ymin;
    const double box_area = box_w * box_h;
    const double size_floor = std::max(box_w, box_h) / (1 << 20);

    // square tiling that covers the box (edge cells may stick out; the
    // exterior part contributes nothing)
    std::vector<Cell> wave;
    const double cell_size = std::min(box_w, box_h) / 8.0;
    const int nx = static_cast<int>(std::ceil(box_w / cell_size));
    const int ny = static_cast<int>(std::ceil(box_h / cell_size));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            wave.push_back(Cell{cplx(xmin + (i + 0.5) * cell_size, ymin + (j + 0.5) * cell_size),
                                0.5 * cell_size});

    QuadratureResult result;
    const double kSqrt2 = std::sqrt(2.0);

    while (!wave.empty()) {
        std::vector<double> partial(wave.size(), 0.0);
        std::vector<signed char> action(wave.size(), 0); // 0 accept, 1 split
        const auto process = [&](std::size_t i) {
            const Cell& c = wave[i];
            const double halfdiag = c.half * kSqrt2;
            if (clipped) {
                if (std::abs(c.center) - halfdiag > clip_radius) {
                    partial[i] = 0.0;
                    return;
                }
                if (std::abs(c.center) + halfdiag > clip_radius && c.half > size_floor) {
                    action[i] = 1; // straddles the clip circle
                    return;
                }
            }
            const double psi = domain.signed_distance(c.center).psi;
            if (psi - halfdiag >= 0.0) {
                partial[i] = 0.0; // fully outside
                return;
            }
            if (psi + halfdiag <= 0.0) {
                if (psi + halfdiag > -eval_clearance) {
                    // inside the evaluation band: depth-clamped one-point rule
                    if (c.half > 0.5 * eval_clearance && c.half > size_floor) {
                        action[i] = 1;
                        return;
                    }
                    partial[i] = f(clamp_depth(c.center)) * 4.0 * c.half * c.half;
                    return;
                }
                // fully inside: embedded Gauss comparison drives refinement
                const double g4 = tensor_gauss(f, c, kG4x, kG4w, 4);
                const double g2 = tensor_gauss(f, c, kG2x, kG2w, 2);
                const double tol_cell = abs_tol * (4.0 * c.half * c.half) / box_area;
                if (std::abs(g4 - g2) <= std::max(tol_cell, 1e-16 * std::abs(g4)) ||
                    c.half <= size_floor)
                    partial[i] = g4;
                else
                    action[i] = 1;
                return;
            }
            // boundary cell: linearize the boundary through the signed
            // distance at the centre and estimate the inside fraction
            const SignedDistanceResult sd = domain.signed_distance(c.center);
            const cplx normal =
                domain.boundary_point(sd.nearest_t, sd.curve_index).outward_normal;
            const cplx clip_dir = (clipped && std::abs(c.center) > 0.0)
                                      ? c.center / std::abs(c.center)
                                      : cplx(0.0, 0.0);
            const double clip_psi = clipped ? std::abs(c.center) - clip_radius : -1.0;

            int inside = 0;
            double deepest = 0.0;
            cplx eval_at = c.center;
            for (int p = 0; p < 8; ++p)
                for (int q = 0; q < 8; ++q) {
                    const cplx u(((p + 0.5) / 4.0 - 1.0) * c.half,
                                 ((q + 0.5) / 4.0 - 1.0) * c.half);
                    const double psi_lin = sd.psi + std::real(std::conj(normal) * u);
                    const double clip_lin =
                        clipped ? clip_psi + std::real(std::conj(clip_dir) * u) : -1.0;
                    if (psi_lin < 0.0 && clip_lin < 0.0) {
                        ++inside;
                        if (psi_lin < deepest) {
                            deepest = psi_lin;
                            eval_at = c.center + u;
                        }
                    }
                }
            if (inside == 0) {
                partial[i] = 0.0;
                return;
            }
            // the pick must actually be evaluable before f sees it
            eval_at = clamp_depth(eval_at);
            if (domain.signed_distance(eval_at).psi >= 0.0 ||
                (clipped && std::abs(eval_at) > clip_radius && eval_clearance <= 0.0)) {
                if (c.half > size_floor)
                    action[i] = 1;
                else
                    partial[i] = 0.0; // degenerate sliver below the floor
                return;
            }
            const double area = 4.0 * c.half * c.half;
            const double f_in = f(eval_at);
            // uncertainty is a few percent of the straddled mass
            const double tol_cell = abs_tol * (2.0 * c.half) / std::max(box_w, box_h) * 0.25;
            const double refine_floor = std::max(size_floor, 0.5 * eval_clearance);
            if (c.half > refine_floor && 0.05 * f_in * area > tol_cell) {
                action[i] = 1;
                return;
            }
            partial[i] = f_in * area * (inside / 64.0);
        };

        std::exception_ptr failure;
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
            for (long long i = 0; i < static_cast<long long>(wave.size()); ++i) {
                try {
                    process(static_cast<std::size_t>(i));
                } catch (...) {
#pragma omp critical
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        } else {
            for (std::size_t i = 0; i < wave.size(); ++i)
                process(i);
        }
        if (failure)
            std::rethrow_exception(failure);

        std::vector<Cell> next;
        for (std::size_t i = 0; i < wave.size(); ++i) {
            if (action[i] == 0) {
                result.value += partial[i];
                ++result.cells;
            } else {
                const Cell& c = wave[i];
                const double h2 = 0.5 * c.half;
                for (int dx = -1; dx <= 1; dx += 2)
                    for (int dy = -1; dy <= 1; dy += 2)
                        next.push_back(Cell{c.center + cplx(dx * h2, dy * h2), h2});
            }
        }
        if (result.cells + static_cast<long>(next.size()) > 40'000'000)
            throw error("quadrature cell budget exhausted");
        wave = std::move(next);
    }
    return result;
}

QuadratureResult integrate_over_halfplane(const HalfPlane& hp,
                                          const std::function<double(cplx)>& f, cplx pole,
                                          double truncation_radius, double rel_tol) {
    if (hp.contains(pole))
        throw error("half-plane quadrature expects the pole outside the region");
    const double d0 = hp.psi(pole); // positive: distance of the pole to the line
    if (!(truncation_radius > 4.0 * d0))
        throw error("half-plane quadrature needs a truncation radius well beyond the pole distance");

    const double theta_center = std::arg(-hp.omega);
    // 24-point Gauss in the angular variable over the arc inside the half plane
    static const int kNtheta = 24;
    std::vector<double> gx(kNtheta), gw(kNtheta);
    {
        // nodes of Legendre-24 by Newton on the recurrence
        for (int i = 0; i < kNtheta; ++i) {
            double x = std::cos(pi * (i + 0.75) / (kNtheta + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= kNtheta; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = kNtheta * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15)
                    break;
            }
            gx[i] = x;
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= kNtheta; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = kNtheta * (x * p1 - p0) / (x * x - 1.0);
            gw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    auto ring_integrand = [&](double rho) {
        if (rho <= d0)
            return 0.0;
        const double beta = std::acos(std::clamp(d0 / rho, -1.0, 1.0));
        double acc = 0.0;
        for (int i = 0; i < kNtheta; ++i) {
            const double theta = theta_center + beta * gx[i];
            acc += gw[i] * f(pole + std::polar(rho, theta));
        }
        return acc * beta * rho;
    };

    // adaptive panels in rho with an embedded 8-point rule
    static const double kG8x[8] = {-0.96028985649753623, -0.79666647741362674,
                                   -0.52553240991632899, -0.18343464249564980,
                                   0.18343464249564980,  0.52553240991632899,
                                   0.79666647741362674,  0.96028985649753623};
    static const double kG8w[8] = {0.10122853629037626, 0.22238103445337447,
                                   0.31370664587788729, 0.36268378337836198,
                                   0.36268378337836198, 0.31370664587788729,
                                   0.22238103445337447, 0.10122853629037626};
    auto panel = [&](double a, double b, const double* xs, const double* ws, int n) {
        double acc = 0.0;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < n; ++i)
            acc += ws[i] * ring_integrand(mid + half * xs[i]);
        return acc * half;
    };

    QuadratureResult result;
    std::vector<std::pair<double, double>> stack;
    // geometric initial panels track the rho^-3 decay
    double lo = d0;
    while (lo < truncation_radius) {
        const double hi = std::min(truncation_radius, 2.0 * lo);
        stack.emplace_back(lo, hi);
        lo = hi;
    }
    double total_estimate = 0.0;
    for (const auto& [a, b] : stack)
        total_estimate += std::abs(panel(a, b, kG8x, kG8w, 8));
    while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        const double coarse = panel(a, b, kG4x, kG4w, 4);
        const double fine = panel(a, b, kG8x, kG8w, 8);
        ++result.cells;
        if (std::abs(fine - coarse) <= rel_tol * std::max(total_estimate, 1e-30) ||
            (b - a) < 1e-12 * truncation_radius) {
            result.value += fine;
        } else {
            const double mid = 0.5 * (a + b);
            stack.emplace_back(a, mid);
            stack.emplace_back(mid, b);
        }
        if (result.cells > 2'000'000)
            throw error("half-plane quadrature panel budget exhausted");
    }

    // majorant C / |z-pole|^4 fitted on the outer ring
    double ring_max = 0.0;
    for (int i = 0; i < 64; ++i) {
        const cplx z = pole + std::polar(truncation_radius, two_pi * i / 64.0);
        if (hp.contains(z))
            ring_max = std::max(ring_max, f(z));
    }
    const double c_tail = ring_max * std::pow(truncation_radius, 4);
    result.tail_bound = pi * c_tail / (truncation_radius * truncation_radius);
    return result;
}

} // namespace cmlab
