#include "cmlab/szego.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <list>

namespace cmlab {

namespace {

constexpr cplx kInv2PiI(0.0, -1.0 / two_pi); // 1/(2 pi i)
constexpr int kLuPromoteSolves = 3;
constexpr std::size_t kLuMaxNodes = 3072;
constexpr std::size_t kStoreCapNodes = 8192; // ~1 GB of matrix
constexpr int kPartialCircleNodes = 32;

} // namespace

cplx SzegoSystem::weighted_entry(std::size_t p, std::size_t q) const {
    const BoundaryNode& np = nodes_[p];
    const BoundaryNode& nq = nodes_[q];
    const cplx dz = nq.pos - np.pos;
    const cplx hz = kInv2PiI * nq.unit_tangent / dz;        // Cauchy kernel H(z_p, z_q)
    const cplx hw = kInv2PiI * np.unit_tangent / (-dz);     // H(z_q, z_p)
    return sqrt_w_[p] * (std::conj(hw) - hz) * sqrt_w_[q];
}

void SzegoSystem::apply_system(const std::vector<cplx>& x, std::vector<cplx>& y) const {
    const std::size_t n = nodes_.size();
    y.assign(n, cplx(0.0));
#pragma omp parallel for schedule(static)
    for (long long pp = 0; pp < static_cast<long long>(n); ++pp) {
        const std::size_t p = static_cast<std::size_t>(pp);
        cplx acc = x[p];
        for (std::size_t q = 0; q < n; ++q)
            if (q != p)
                acc += weighted_entry(p, q) * x[q];
        y[p] = acc;
    }
}

SzegoSystem::SzegoSystem(PlanarDomain domain, int nodes_per_curve, Exec exec)
    : domain_(std::move(domain)), n_per_curve_(nodes_per_curve) {
    if (n_per_curve_ < 64 || (n_per_curve_ & (n_per_curve_ - 1)) != 0)
        throw error("node count per curve must be a power of two >= 64");

    const auto& curves = domain_.curves();
    nodes_.reserve(curves.size() * n_per_curve_);
    for (std::size_t c = 0; c < curves.size(); ++c) {
        for (int i = 0; i < n_per_curve_; ++i) {
            const double t = two_pi * i / n_per_curve_;
            BoundaryNode nd;
            nd.t = t;
            nd.curve = static_cast<int>(c);
            nd.pos = curves[c].point(t);
            const cplx d1 = curves[c].deriv1(t);
            nd.speed = std::abs(d1);
            nd.unit_tangent = d1 / nd.speed;
            nd.weight = nd.speed * two_pi / n_per_curve_;
            nodes_.push_back(nd);
        }
    }
    const std::size_t n = nodes_.size();
    sqrt_w_.resize(n);
    max_spacing_ = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sqrt_w_[i] = std::sqrt(nodes_[i].weight);
        max_spacing_ = std::max(max_spacing_, nodes_[i].weight);
    }

    // nodes on distinct curves must stay resolvable
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            if (nodes_[p].curve != nodes_[q].curve &&
                std::abs(nodes_[p].pos - nodes_[q].pos) < 0.5 * max_spacing_)
                throw error("near-singular discretization: boundary curves too close for this node count");

    stored_ = n <= kStoreCapNodes;
    if (stored_) {
        system_ = Matrix(n, n);
        const auto fill_row = [&](std::size_t p) {
            cplx* row = system_.row(p);
            for (std::size_t q = 0; q < n; ++q)
                row[q] = (q == p) ? cplx(1.0) : weighted_entry(p, q); // A vanishes on the diagonal
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (long long p = 0; p < static_cast<long long>(n); ++p)
                fill_row(static_cast<std::size_t>(p));
        } else {
            for (std::size_t p = 0; p < n; ++p)
                fill_row(p);
        }
    }

    // structure checks on a subsample of pairs
    skew_defect_ = 0.0;
    kernel_sup_ = 0.0;
    const std::size_t stride = std::max<std::size_t>(1, n / 128);
    for (std::size_t p = 0; p < n; p += stride)
        for (std::size_t q = 0; q < n; q += stride) {
            if (p == q)
                continue;
            const cplx apq = weighted_entry(p, q) / (sqrt_w_[p] * sqrt_w_[q]);
            const cplx aqp = weighted_entry(q, p) / (sqrt_w_[q] * sqrt_w_[p]);
            skew_defect_ = std::max(skew_defect_, std::abs(apq + std::conj(aqp)));
            kernel_sup_ = std::max(kernel_sup_, std::abs(apq));
        }
    if (skew_defect_ > 1e-12)
        throw error("Kerzman-Stein kernel failed the skew-hermitian check");

    if (n <= 1024)
        lu_ = std::make_unique<LuFactorization>(system_, exec);
}

bool SzegoSystem::degraded_at(cplx z) const {
    const SignedDistanceResult sd = domain_.signed_distance(z);
    return std::abs(sd.psi) < 3.0 * max_spacing_;
}

std::vector<cplx> SzegoSystem::solve_density(cplx a) const {
    const std::size_t n = nodes_.size();
    std::vector<cplx> rhs(n);
    for (std::size_t p = 0; p < n; ++p) {
        const cplx g = std::conj(kInv2PiI * nodes_[p].unit_tangent / (nodes_[p].pos - a));
        rhs[p] = sqrt_w_[p] * g;
    }
    std::vector<cplx> v;
    if (lu_) {
        v = lu_->solve(rhs);
    } else {
        ++solve_count_;
        if (stored_ && solve_count_ >= kLuPromoteSolves && n <= kLuMaxNodes) {
            lu_ = std::make_unique<LuFactorization>(system_);
            v = lu_->solve(rhs);
        } else {
            GmresResult r =
                stored_ ? gmres(system_, rhs, 1e-13, 400)
                        : gmres([this](const std::vector<cplx>& x,
                                       std::vector<cplx>& y) { apply_system(x, y); },
                                n, rhs, 1e-13, 400);
            if (!r.converged)
                throw error("Kerzman-Stein solve did not converge");
            v = std::move(r.x);
        }
    }
    for (std::size_t p = 0; p < n; ++p)
        v[p] /= sqrt_w_[p];
    return v;
}

std::shared_ptr<const std::vector<cplx>> SzegoSystem::boundary_density(cplx a) const {
    if (!domain_.contains(a))
        throw error("kernel base point must be interior to the domain");
    const std::pair<double, double> key(std::real(a), std::imag(a));
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    auto density = std::make_shared<const std::vector<cplx>>(solve_density(a));
    cache_.emplace(key, density);
    return density;
}

cplx SzegoSystem::cauchy_eval(const std::vector<cplx>& boundary_values, cplx z,
                              int deriv_order) const {
    const std::size_t n = nodes_.size();
    double factorial = 1.0;
    for (int m = 2; m <= deriv_order; ++m)
        factorial *= m;
    cplx acc = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
        const cplx d = nodes_[q].pos - z;
        cplx dp = d;
        for (int m = 0; m < deriv_order; ++m)
            dp *= d;
        acc += boundary_values[q] * nodes_[q].unit_tangent * nodes_[q].weight / dp;
    }
    return acc * kInv2PiI * factorial;
}

KernelValue SzegoSystem::szego(cplx z, cplx a) const {
    if (!domain_.contains(z))
        throw error("kernel evaluation point must be interior to the domain");
    const auto density = boundary_density(a);
    return {cauchy_eval(*density, z, 0), degraded_at(z) || degraded_at(a)};
}

KernelValue SzegoSystem::garabedian(cplx z, cplx a) const {
    if (!domain_.contains(z))
        throw error("kernel evaluation point must be interior to the domain");
    if (std::abs(z - a) < 1e-14)
        throw error("Garabedian kernel pole at z = a");
    const auto density = boundary_density(a);
    const std::size_t n = nodes_.size();
    std::vector<cplx> regular(n);
    for (std::size_t q = 0; q < n; ++q) {
        const cplx lb = cplx(0.0, 1.0) * std::conj((*density)[q] * nodes_[q].unit_tangent);
        regular[q] = lb - 1.0 / (two_pi * (nodes_[q].pos - a));
    }
    const cplx val = 1.0 / (two_pi * (z - a)) + cauchy_eval(regular, z, 0);
    return {val, degraded_at(z) || degraded_at(a)};
}

KernelValue SzegoSystem::ahlfors(cplx z, cplx a) const {
    if (std::abs(z - a) < 1e-12) {
        // f(a,a) = 0 with derivative c_D(a) > 0
        const KernelValue s = szego(a, a);
        return {(z - a) * two_pi * s.value, s.degraded};
    }
    const KernelValue s = szego(z, a);
    const KernelValue l = garabedian(z, a);
    return {s.value / l.value, s.degraded || l.degraded};
}

double SzegoSystem::caratheodory(cplx z) const {
    const KernelValue s = szego(z, z);
    const double c = two_pi * std::real(s.value);
    if (!(c > 0.0))
        throw error("Caratheodory density evaluation failed (non-positive kernel diagonal)");
    return c;
}

cplx SzegoSystem::szego_deriv1(cplx z, cplx a, int m) const {
    const auto density = boundary_density(a);
    return cauchy_eval(*density, z, m);
}

cplx SzegoSystem::garabedian_deriv1(cplx z, cplx a, int m) const {
    const auto density = boundary_density(a);
    const std::size_t n = nodes_.size();
    std::vector<cplx> regular(n);
    for (std::size_t q = 0; q < n; ++q) {
        const cplx lb = cplx(0.0, 1.0) * std::conj((*density)[q] * nodes_[q].unit_tangent);
        regular[q] = lb - 1.0 / (two_pi * (nodes_[q].pos - a));
    }
    double factorial = 1.0;
    double sign = 1.0;
    cplx pole_pow = z - a;
    for (int k = 1; k <= m; ++k) {
        factorial *= k;
        sign = -sign;
        pole_pow *= (z - a);
    }
    const cplx pole_term = sign * factorial / (two_pi * pole_pow);
    return pole_term + cauchy_eval(regular, z, m);
}

cplx SzegoSystem::ahlfors_deriv1(cplx z, cplx a) const {
    if (std::abs(z - a) < 1e-12)
        return caratheodory(a);
    const cplx s = szego(z, a).value;
    const cplx l = garabedian(z, a).value;
    const cplx sp = szego_deriv1(z, a, 1);
    const cplx lp = garabedian_deriv1(z, a, 1);
    return (sp * l - s * lp) / (l * l);
}

Matrix SzegoSystem::szego_partials_all(cplx z, int max_j, int max_k) const {
    if (max_j > 4 || max_k > 4 || max_j + max_k > 8)
        throw error("unsupported derivative order (j,k <= 4 and j+k <= 8)");
    const SignedDistanceResult sd = domain_.signed_distance(z);
    if (sd.psi >= 0.0)
        throw error("kernel derivative point must be interior to the domain");
    const double dist = -sd.psi;
    if (dist < 3.0 * max_spacing_) {
        const int min_n = recommended_nodes(domain_, dist, 1 << 20);
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "point too close to the boundary at this resolution; raise N to at least %d",
                      min_n);
        throw error(buf);
    }
    const double r = 0.5 * dist;
    if (dist - r < 3.0 * max_spacing_) {
        const int min_n = recommended_nodes(domain_, dist, 1 << 20);
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "derivative circle too close to the boundary; raise N to at least %d", min_n);
        throw error(buf);
    }

    const int m = kPartialCircleNodes;
    // S on the tensor grid (z + r e^{i theta_p}, z + r e^{-i phi_q});
    // the density solve is per second-slot point, reused across the row
    Matrix tensor(m, m);
    for (int q = 0; q < m; ++q) {
        const double phi = two_pi * q / m;
        const cplx aq = z + r * std::polar(1.0, -phi);
        const auto density = boundary_density(aq);
        for (int p = 0; p < m; ++p) {
            const double theta = two_pi * p / m;
            const cplx xp = z + r * std::polar(1.0, theta);
            tensor(p, q) = cauchy_eval(*density, xp, 0);
        }
    }

    Matrix out(max_j + 1, max_k + 1);
    double fact_j = 1.0;
    for (int j = 0; j <= max_j; ++j) {
        if (j > 1)
            fact_j *= j;
        double fact_k = 1.0;
        for (int k = 0; k <= max_k; ++k) {
            if (k > 1)
                fact_k *= k;
            cplx acc = 0.0;
            for (int p = 0; p < m; ++p) {
                const cplx ej = std::polar(1.0, -two_pi * j * p / m);
                for (int q = 0; q < m; ++q)
                    acc += tensor(p, q) * ej * std::polar(1.0, -two_pi * k * q / m);
            }
            out(j, k) = acc * fact_j * fact_k / (double(m) * double(m) * std::pow(r, j + k));
        }
    }
    return out;
}

cplx SzegoSystem::szego_partials(cplx z, int j, int k) const {
    const Matrix all = szego_partials_all(z, j, k);
    return all(j, k);
}

int recommended_nodes(const PlanarDomain& domain, double clearance, int cap) {
    if (!(clearance > 0.0))
        throw error("clearance must be positive");
    const double needed = 12.0 * pi * domain.max_speed() / clearance;
    int n = 64;
    while (n < needed) {
        n *= 2;
        if (n > cap) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "resolution request exceeds the node cap (needs N = %d, cap %d)",
                          n, cap);
            throw error(buf);
        }
    }
    return n;
}

namespace {

struct SystemCache {
    std::mutex mutex;
    std::map<std::pair<std::string, int>, std::shared_ptr<SzegoSystem>> entries;
    std::list<std::pair<std::string, int>> order;
    std::size_t bytes = 0;

    static std::size_t cost(int n_per_curve, std::size_t curves) {
        const std::size_t n = n_per_curve * curves;
        return n * n * sizeof(cplx);
    }
};

SystemCache& system_cache() {
    static SystemCache cache;
    return cache;
}

} // namespace

std::shared_ptr<SzegoSystem> shared_system(const PlanarDomain& domain, int nodes_per_curve) {
    auto& cache = system_cache();
    const std::pair<std::string, int> key(domain_hash(domain), nodes_per_curve);
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end())
        return it->second;
    auto sys = std::make_shared<SzegoSystem>(domain, nodes_per_curve);
    cache.entries.emplace(key, sys);
    cache.order.push_back(key);
    cache.bytes += SystemCache::cost(nodes_per_curve, domain.curves().size());
    const std::size_t limit = 3ull << 30;
    while (cache.bytes > limit && cache.order.size() > 1) {
        const auto old = cache.order.front();
        cache.order.pop_front();
        auto oit = cache.entries.find(old);
        if (oit != cache.entries.end()) {
            cache.bytes -= SystemCache::cost(old.second, oit->second->domain().curves().size());
            cache.entries.erase(oit);
        }
    }
    return sys;
}

} // namespace cmlab
