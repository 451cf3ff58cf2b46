#include "cmlab/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace cmlab {

namespace {

// Fornberg weights for the m-th derivative at 0 on the symmetric stencil
// {-r h, ..., r h} with unit spacing; scaled by h^-m at the call site
std::vector<double> fd_weights(int m, int r) {
    const int n = 2 * r + 1;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = i - r;
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = x[0];
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j)
        w[j] = c[j][m];
    return w;
}

double small_det_and_defect(const Matrix& entries, int n, cplx& det_out) {
    // hermitian defect relative to the entry scale
    double defect = 0.0;
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            const double scale = std::max(1.0, std::abs(entries(j, k)));
            defect = std::max(defect,
                              std::abs(entries(j, k) - std::conj(entries(k, j))) / scale);
        }
    // determinant by Gaussian elimination with partial pivoting
    Matrix a = entries;
    cplx det = 1.0;
    for (int col = 0; col <= n; ++col) {
        int piv = col;
        for (int i = col + 1; i <= n; ++i)
            if (std::norm(a(i, col)) > std::norm(a(piv, col)))
                piv = i;
        if (std::norm(a(piv, col)) == 0.0) {
            det_out = 0.0;
            return defect;
        }
        if (piv != col) {
            for (int j = 0; j <= n; ++j)
                std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (int i = col + 1; i <= n; ++i) {
            const cplx l = a(i, col) / a(col, col);
            for (int j = col; j <= n; ++j)
                a(i, j) -= l * a(col, j);
        }
    }
    det_out = det;
    return defect;
}

} // namespace

CurvatureMatrix mixed_partials(const SzegoSystem& sys, cplx z, int n) {
    if (n < 1 || n > 3)
        throw error("curvature order must be 1, 2 or 3");
    const Matrix s = sys.szego_partials_all(z, n, n);
    CurvatureMatrix out;
    out.n = n;
    out.z = z;
    out.entries = Matrix(n + 1, n + 1);
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
            out.entries(j, k) = two_pi * s(j, k);
    cplx det;
    out.hermitian_defect = small_det_and_defect(out.entries, n, det);
    if (!(std::real(out.entries(0, 0)) > 0.0))
        throw error("mixed partials: non-positive density at the evaluation point");
    return out;
}

CurvatureMatrix mixed_partials_fd(const SzegoSystem& sys, cplx z, int n) {
    if (n < 1 || n > 3)
        throw error("curvature order must be 1, 2 or 3");
    const double dist = -sys.domain().signed_distance(z).psi;
    if (!(dist > 0.0))
        throw error("finite-difference point must be interior");
    const double h = std::max(1e-4, 0.02 * dist);
    const int r = n + 1;
    const int grid = 2 * r + 1;

    auto sample = [&](double step) {
        Matrix vals(grid, grid);
        for (int iy = -r; iy <= r; ++iy)
            for (int ix = -r; ix <= r; ++ix)
                vals(iy + r, ix + r) = sys.caratheodory(z + cplx(ix * step, iy * step));
        return vals;
    };
    auto level = [&](const Matrix& vals, double step) {
        // all d^a_x d^b_y up to a,b needed for Wirtinger orders <= n each slot
        Matrix dxy(2 * n + 1, 2 * n + 1);
        for (int a = 0; a <= 2 * n; ++a) {
            const auto wa = fd_weights(a, r);
            for (int b = 0; b <= 2 * n; ++b) {
                if (a + b > 2 * n)
                    continue;
                const auto wb = fd_weights(b, r);
                double acc = 0.0;
                for (int iy = 0; iy < grid; ++iy)
                    for (int ix = 0; ix < grid; ++ix)
                        acc += wb[iy] * wa[ix] * std::real(vals(iy, ix));
                dxy(a, b) = acc / std::pow(step, a + b);
            }
        }
        return dxy;
    };
    const Matrix d1 = level(sample(h), h);
    const Matrix d2 = level(sample(h / 2), h / 2);

    CurvatureMatrix out;
    out.n = n;
    out.z = z;
    out.h_used = h;
    out.entries = Matrix(n + 1, n + 1);
    // d^j_z d^k_zbar = 2^-(j+k) (dx - i dy)^j (dx + i dy)^k
    auto binom = [](int m, int p) {
        double v = 1.0;
        for (int i = 0; i < p; ++i)
            v = v * (m - i) / (i + 1);
        return v;
    };
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            cplx acc = 0.0;
            for (int p = 0; p <= j; ++p)
                for (int q = 0; q <= k; ++q) {
                    // (-i)^(j-p) * (i)^(k-q)
                    cplx phase = 1.0;
                    for (int t = 0; t < j - p; ++t)
                        phase *= cplx(0.0, -1.0);
                    for (int t = 0; t < k - q; ++t)
                        phase *= cplx(0.0, 1.0);
                    const int a = p + q;
                    const int b = (j - p) + (k - q);
                    const double rich = std::real(4.0 * d2(a, b) - d1(a, b)) / 3.0;
                    acc += binom(j, p) * binom(k, q) * phase * rich;
                }
            out.entries(j, k) = acc / std::pow(2.0, j + k);
        }
    cplx det;
    out.hermitian_defect = small_det_and_defect(out.entries, n, det);
    return out;
}

CurvatureReport kappa_n(const SzegoSystem& sys, cplx z, int n, CurvatureMethod method) {
    const CurvatureMatrix m = (method == CurvatureMethod::kernel_derivative)
                                  ? mixed_partials(sys, z, n)
                                  : mixed_partials_fd(sys, z, n);
    cplx det;
    const double defect = small_det_and_defect(m.entries, n, det);
    const double c = std::real(m.entries(0, 0));
    CurvatureReport rep;
    rep.z = z;
    rep.n = n;
    rep.method = method;
    const double exponent = double(n + 1) * double(n + 1);
    rep.kappa = -4.0 * std::pow(c, -exponent) * std::real(det);
    rep.error_estimate =
        std::max(defect, std::abs(std::imag(det)) / std::max(std::abs(det), 1e-300));
    return rep;
}

double kappa1_laplacian_fd(const SzegoSystem& sys, cplx z) {
    const double dist = -sys.domain().signed_distance(z).psi;
    const double h = std::max(1e-4, 0.02 * dist);
    auto lap = [&](double step) {
        const double c0 = sys.caratheodory(z);
        const double ce = sys.caratheodory(z + cplx(step, 0.0));
        const double cw = sys.caratheodory(z - cplx(step, 0.0));
        const double cn = sys.caratheodory(z + cplx(0.0, step));
        const double cs = sys.caratheodory(z - cplx(0.0, step));
        return (std::log(ce) + std::log(cw) + std::log(cn) + std::log(cs) - 4.0 * std::log(c0)) /
               (step * step);
    };
    const double l1 = lap(h);
    const double l2 = lap(h / 2);
    const double lap_log = (4.0 * l2 - l1) / 3.0;
    const double c = sys.caratheodory(z);
    return -lap_log / (c * c);
}

double fd_cross_check(const SzegoSystem& sys, cplx z, int n) {
    const CurvatureMatrix kernel = mixed_partials(sys, z, n);
    const CurvatureMatrix fd = mixed_partials_fd(sys, z, n);
    double dev = 0.0;
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            const double scale = std::max(1.0, std::abs(kernel.entries(j, k)));
            dev = std::max(dev, std::abs(kernel.entries(j, k) - fd.entries(j, k)) / scale);
        }
    return dev;
}

namespace {

SweepTable kappa_sweep_impl(const PlanarDomain& domain, const BoundaryPointData& p,
                            const std::vector<int>& orders, const std::vector<double>& deltas,
                            const SzegoSystem* fixed_sys, int node_cap) {
    if (orders.empty() || deltas.empty())
        throw error("curvature sweep needs at least one order and one delta");
    SweepTable table;
    table.columns.push_back("delta");
    for (int n : orders)
        table.columns.push_back("kappa_" + std::to_string(n));
    table.columns.push_back("is_extrapolated");

    std::vector<std::vector<double>> series(orders.size());
    for (double delta : deltas) {
        const cplx z = normal_probe(domain, p, delta);
        std::vector<double> row{delta};
        const SzegoSystem* sys = fixed_sys;
        std::shared_ptr<SzegoSystem> holder;
        if (!sys) {
            holder = shared_system(domain, recommended_nodes(domain, delta, node_cap));
            sys = holder.get();
        }
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const CurvatureReport rep = kappa_n(*sys, z, orders[i]);
            row.push_back(rep.kappa);
            series[i].push_back(rep.kappa);
        }
        row.push_back(0.0);
        table.add_row(std::move(row));
    }
    std::vector<double> limit_row{0.0};
    for (std::size_t i = 0; i < orders.size(); ++i)
        limit_row.push_back(extrapolate_linear(deltas, series[i]));
    limit_row.push_back(1.0);
    table.add_row(std::move(limit_row));

    table.metadata["experiment"] = "kappa_sweep";
    table.metadata["domain_hash"] = domain_hash(domain);
    table.metadata["t"] = p.t;
    table.metadata["orders"] = orders;
    table.metadata["extrapolation"] = "least-squares L + C*delta on the last 4 rows";
    return table;
}

} // namespace

SweepTable kappa_boundary_sweep(const PlanarDomain& domain, const BoundaryPointData& p,
                                const std::vector<int>& orders, const std::vector<double>& deltas,
                                int node_cap) {
    return kappa_sweep_impl(domain, p, orders, deltas, nullptr, node_cap);
}

SweepTable kappa_boundary_sweep_fixed(const SzegoSystem& sys, const BoundaryPointData& p,
                                      const std::vector<int>& orders,
                                      const std::vector<double>& deltas) {
    return kappa_sweep_impl(sys.domain(), p, orders, deltas, &sys, 0);
}

} // namespace cmlab
