#include "cmlab/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace cmlab {

namespace {

constexpr int kPolylineSize = 4096;
constexpr int kSimplicitySamples = 1024;
constexpr int kCoarseScan = 64;
constexpr int kNewtonCap = 50;

} // namespace

BoundaryCurve::BoundaryCurve(std::vector<cplx> coefficients, int k_min, Orientation orient)
    : coeff_(std::move(coefficients)), k_min_(k_min), orient_(orient) {
    if (coeff_.empty())
        throw error("boundary curve: empty coefficient list");
    polyline_.resize(kPolylineSize);
    min_speed_ = std::numeric_limits<double>::max();
    max_speed_ = 0.0;
    max_curv_ = 0.0;
    for (int i = 0; i < kPolylineSize; ++i) {
        const double t = two_pi * i / kPolylineSize;
        polyline_[i] = point(t);
        const cplx d1 = deriv1(t);
        const cplx d2 = deriv2(t);
        const double sp = std::abs(d1);
        min_speed_ = std::min(min_speed_, sp);
        max_speed_ = std::max(max_speed_, sp);
        if (sp > 0.0)
            max_curv_ = std::max(max_curv_, std::abs(std::imag(std::conj(d1) * d2)) / (sp * sp * sp));
    }
}

cplx BoundaryCurve::point(double t) const {
    // e^{i k_min t} * sum via Horner in e^{it}
    const cplx w = std::polar(1.0, t);
    cplx acc = 0.0;
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it)
        acc = acc * w + *it;
    return acc * std::polar(1.0, k_min_ * t);
}

cplx BoundaryCurve::deriv1(double t) const {
    const cplx w = std::polar(1.0, t);
    cplx acc = 0.0;
    int k = k_max();
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it, --k)
        acc = acc * w + cplx(0.0, k) * (*it);
    return acc * std::polar(1.0, k_min_ * t);
}

cplx BoundaryCurve::deriv2(double t) const {
    const cplx w = std::polar(1.0, t);
    cplx acc = 0.0;
    int k = k_max();
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it, --k)
        acc = acc * w + cplx(-double(k) * k, 0.0) * (*it);
    return acc * std::polar(1.0, k_min_ * t);
}

cplx BoundaryCurve::unit_tangent(double t) const {
    const cplx d = deriv1(t);
    const double sp = std::abs(d);
    if (sp == 0.0)
        throw error("boundary curve: vanishing tangent");
    return d / sp;
}

double BoundaryCurve::curvature(double t) const {
    const cplx d1 = deriv1(t);
    const cplx d2 = deriv2(t);
    const double sp = std::abs(d1);
    return std::imag(std::conj(d1) * d2) / (sp * sp * sp);
}

BoundaryCurve BoundaryCurve::affine(cplx shift, double scale) const {
    if (!(scale > 0.0))
        throw error("affine curve map requires positive scale");
    std::map<int, cplx> m;
    int k = k_min_;
    for (const cplx& c : coeff_)
        m[k++] = c / scale;
    m[0] -= shift / scale;
    const int lo = m.begin()->first;
    const int hi = m.rbegin()->first;
    std::vector<cplx> out;
    out.reserve(hi - lo + 1);
    for (int kk = lo; kk <= hi; ++kk)
        out.push_back(m.count(kk) ? m[kk] : cplx(0.0));
    return BoundaryCurve(std::move(out), lo, orient_);
}

void BoundaryCurve::validate() const {
    const double scale = std::max(1e-300, max_speed_);
    if (min_speed_ < 1e-8 * scale)
        throw error("boundary curve invariant failed: gamma'(t) vanishes on the check grid (irregular curve)");

    // signed area decides traversal direction
    double area2 = 0.0;
    for (int i = 0; i < kPolylineSize; ++i) {
        const cplx p = polyline_[i];
        const cplx q = polyline_[(i + 1) % kPolylineSize];
        area2 += std::real(p) * std::imag(q) - std::real(q) * std::imag(p);
    }
    const bool ccw = area2 > 0.0;
    if (ccw != (orient_ == Orientation::positive))
        throw error("boundary curve invariant failed: traversal direction does not match declared orientation");

    // local turning within one coarse step must stay below pi/2 for the
    // pairwise separation test below to be conclusive
    const double tau0 = two_pi * 16.0 / kSimplicitySamples;
    if (max_curv_ * max_speed_ * tau0 >= 0.5 * pi)
        throw error("boundary curve invariant failed: curvature too large for the self-intersection check grid (raise resolution)");

    const int stride = kPolylineSize / kSimplicitySamples;
    const double step_len = max_speed_ * two_pi / kSimplicitySamples;
    const double sep_min = 2.5 * step_len;
    for (int i = 0; i < kSimplicitySamples; ++i) {
        const cplx zi = polyline_[i * stride];
        for (int j = i + 16; j < kSimplicitySamples; ++j) {
            const int gap = std::min(j - i, kSimplicitySamples - (j - i));
            if (gap < 16)
                continue;
            if (std::abs(zi - polyline_[j * stride]) < sep_min) {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "boundary curve invariant failed: self-intersection near t=%.6f and t=%.6f",
                              two_pi * i / kSimplicitySamples, two_pi * j / kSimplicitySamples);
                throw error(buf);
            }
        }
    }
}

namespace {

// Newton on F(t) = Re[(gamma(t)-z) conj(gamma'(t))] from coarse-scan seeds.
struct NearestHit {
    double t = 0.0;
    double dist = 0.0;
    cplx point;
    bool converged = false;
    double residual = 0.0;
};

NearestHit nearest_on_curve(const BoundaryCurve& curve, cplx z) {
    // coarse scan
    std::array<double, kCoarseScan> d2;
    for (int i = 0; i < kCoarseScan; ++i) {
        const double t = two_pi * i / kCoarseScan;
        d2[i] = std::norm(curve.point(t) - z);
    }
    // all local minima of the coarse scan are Newton seeds
    std::vector<int> seeds;
    for (int i = 0; i < kCoarseScan; ++i) {
        const double prev = d2[(i + kCoarseScan - 1) % kCoarseScan];
        const double next = d2[(i + 1) % kCoarseScan];
        if (d2[i] <= prev && d2[i] <= next)
            seeds.push_back(i);
    }

    const double tol = 1e-13 * std::max(1.0, curve.max_speed() * curve.max_speed());
    const double step_cap = two_pi / kCoarseScan;

    NearestHit best;
    best.dist = std::numeric_limits<double>::max();
    double best_resid = std::numeric_limits<double>::max();

    for (int seed : seeds) {
        double t = two_pi * seed / kCoarseScan;
        bool ok = false;
        double resid = 0.0;
        for (int it = 0; it < kNewtonCap; ++it) {
            const cplx g = curve.point(t);
            const cplx d1 = curve.deriv1(t);
            const cplx d2v = curve.deriv2(t);
            const double F = std::real((g - z) * std::conj(d1));
            const double Fp = std::norm(d1) + std::real((g - z) * std::conj(d2v));
            resid = std::abs(F);
            if (resid <= tol) {
                ok = true;
                break;
            }
            double step = (Fp > 1e-30) ? -F / Fp : -F;
            step = std::clamp(step, -step_cap, step_cap);
            t += step;
        }
        best_resid = std::min(best_resid, resid);
        if (!ok)
            continue;
        const cplx q = curve.point(t);
        const double dist = std::abs(q - z);
        if (dist < best.dist) {
            best.t = std::fmod(std::fmod(t, two_pi) + two_pi, two_pi);
            best.dist = dist;
            best.point = q;
            best.converged = true;
        }
    }
    if (!best.converged) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "nearest-point Newton failed to converge from all seeds (best residual %.3e)",
                      best_resid);
        throw error(buf);
    }
    return best;
}

// even-odd crossing parity of a horizontal ray from z through the sampled polyline
bool polyline_parity(const std::vector<cplx>& poly, cplx z) {
    bool inside = false;
    const double zx = std::real(z), zy = std::imag(z);
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx& p = poly[i];
        const cplx& q = poly[(i + 1) % n];
        const double py = std::imag(p), qy = std::imag(q);
        if ((py > zy) != (qy > zy)) {
            const double xint = std::real(p) + (zy - py) * (std::real(q) - std::real(p)) / (qy - py);
            if (xint > zx)
                inside = !inside;
        }
    }
    return inside;
}

double min_node_distance(const std::vector<cplx>& poly, cplx z) {
    double d = std::numeric_limits<double>::max();
    for (const cplx& p : poly)
        d = std::min(d, std::abs(p - z));
    return d;
}

// true when z lies inside the region enclosed by the (correctly oriented) curve
bool inside_closed_curve(const BoundaryCurve& curve, cplx z) {
    const double guard = 3.0 * curve.max_speed() * curve.polyline_step();
    if (min_node_distance(curve.polyline(), z) > guard)
        return polyline_parity(curve.polyline(), z);
    // near the sampled polyline: decide by the local normal instead
    const NearestHit hit = nearest_on_curve(curve, z);
    const cplx out_normal = -cplx(0.0, 1.0) * curve.unit_tangent(hit.t);
    const double side = std::real(std::conj(out_normal) * (z - hit.point));
    return (curve.orientation() == Orientation::positive) ? (side < 0.0) : (side > 0.0);
}

} // namespace

PlanarDomain::PlanarDomain(BoundaryCurve outer, std::vector<BoundaryCurve> holes) {
    if (outer.orientation() != Orientation::positive)
        throw error("planar domain invariant failed: outer curve must be positively oriented");
    outer.validate();
    curves_.push_back(std::move(outer));
    for (auto& h : holes) {
        if (h.orientation() != Orientation::negative)
            throw error("planar domain invariant failed: hole curves must be negatively oriented");
        h.validate();
        curves_.push_back(std::move(h));
    }

    // holes strictly inside the outer curve, pairwise disjoint closures
    for (std::size_t i = 1; i < curves_.size(); ++i) {
        for (const cplx& p : curves_[i].polyline())
            if (!inside_closed_curve(curves_[0], p))
                throw error("planar domain invariant failed: hole curve is not strictly inside the outer curve");
        for (std::size_t j = i + 1; j < curves_.size(); ++j) {
            double gap = std::numeric_limits<double>::max();
            const auto& pa = curves_[i].polyline();
            const auto& pb = curves_[j].polyline();
            for (std::size_t a = 0; a < pa.size(); a += 8)
                for (std::size_t b = 0; b < pb.size(); b += 8)
                    gap = std::min(gap, std::abs(pa[a] - pb[b]));
            if (gap < 1e-9)
                throw error("planar domain invariant failed: hole closures intersect");
        }
    }

    // reach: smallest curvature radius over all curves and the smallest
    // gap between distinct curves, halved
    double r = std::numeric_limits<double>::max();
    max_speed_ = 0.0;
    for (const auto& c : curves_) {
        if (c.max_abs_curvature() > 0.0)
            r = std::min(r, 1.0 / c.max_abs_curvature());
        max_speed_ = std::max(max_speed_, c.max_speed());
    }
    for (std::size_t i = 0; i < curves_.size(); ++i)
        for (std::size_t j = i + 1; j < curves_.size(); ++j) {
            double gap = std::numeric_limits<double>::max();
            const auto& pa = curves_[i].polyline();
            const auto& pb = curves_[j].polyline();
            for (std::size_t a = 0; a < pa.size(); a += 4)
                for (std::size_t b = 0; b < pb.size(); b += 4)
                    gap = std::min(gap, std::abs(pa[a] - pb[b]));
            r = std::min(r, gap);
        }
    reach_ = 0.5 * r;

    // anchor point: mean of the outer curve (its k = 0 coefficient)
    const auto& oc = curves_[0];
    anchor_ = 0.0;
    if (oc.k_min() <= 0 && oc.k_max() >= 0)
        anchor_ = oc.coefficients()[-oc.k_min()];
    if (!contains(anchor_)) {
        // fall back to a probe from the outer boundary
        const BoundaryPointData bp = boundary_point(0.0, 0);
        anchor_ = bp.position - 0.9 * reach_ * bp.outward_normal;
        if (!contains(anchor_))
            throw error("planar domain invariant failed: could not find an interior anchor point");
    }
}

bool PlanarDomain::contains(cplx z) const {
    if (!inside_closed_curve(curves_[0], z))
        return false;
    for (std::size_t i = 1; i < curves_.size(); ++i)
        if (inside_closed_curve(curves_[i], z))
            return false;
    return true;
}

SignedDistanceResult PlanarDomain::signed_distance(cplx z) const {
    SignedDistanceResult best;
    double d = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < curves_.size(); ++i) {
        const NearestHit hit = nearest_on_curve(curves_[i], z);
        if (hit.dist < d) {
            d = hit.dist;
            best.nearest_t = hit.t;
            best.nearest_point = hit.point;
            best.curve_index = static_cast<int>(i);
        }
    }
    best.psi = contains(z) ? -d : d;
    return best;
}

BoundaryPointData PlanarDomain::boundary_point(double t, int curve_index) const {
    const auto& c = curves_.at(curve_index);
    BoundaryPointData bp;
    bp.t = t;
    bp.curve_index = curve_index;
    bp.position = c.point(t);
    bp.outward_normal = -cplx(0.0, 1.0) * c.unit_tangent(t);
    bp.curvature = c.curvature(t);
    return bp;
}

PlanarDomain PlanarDomain::affine(cplx shift, double scale) const {
    std::vector<BoundaryCurve> holes;
    for (std::size_t i = 1; i < curves_.size(); ++i)
        holes.push_back(curves_[i].affine(shift, scale));
    PlanarDomain d(curves_[0].affine(shift, scale), std::move(holes));
    std::ostringstream os;
    os << "{\"affine\":{\"base\":" << spec_json_ << ",\"shift\":[" << std::real(shift) << ","
       << std::imag(shift) << "],\"scale\":" << scale << "}}";
    d.set_spec_json(os.str());
    return d;
}

cplx normal_probe(const PlanarDomain& domain, const BoundaryPointData& p, double delta) {
    if (!(delta > 0.0))
        throw error("normal probe requires delta > 0");
    if (delta >= domain.reach())
        throw error("normal probe outside the reach estimate (probe would leave the normal fiber)");
    return p.position - delta * p.outward_normal;
}

// model domains ---------------------------------------------------------

namespace {

PlanarDomain with_spec(PlanarDomain d, const nlohmann::json& j) {
    d.set_spec_json(j.dump());
    return d;
}

} // namespace

PlanarDomain make_disk() {
    PlanarDomain d(BoundaryCurve({cplx(1.0, 0.0)}, 1, Orientation::positive));
    return with_spec(std::move(d), nlohmann::json{{"kind", "disk"}});
}

PlanarDomain make_ellipse(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw error("ellipse semi-axes must be positive");
    PlanarDomain d(BoundaryCurve({cplx((a - b) / 2, 0.0), cplx(0.0, 0.0), cplx((a + b) / 2, 0.0)}, -1,
                                 Orientation::positive));
    return with_spec(std::move(d), nlohmann::json{{"kind", "ellipse"}, {"a", a}, {"b", b}});
}

PlanarDomain make_annulus(double inner_radius) {
    if (!(inner_radius > 0.0 && inner_radius < 1.0))
        throw error("annulus inner radius must lie in (0,1)");
    BoundaryCurve outer({cplx(1.0, 0.0)}, 1, Orientation::positive);
    BoundaryCurve hole({cplx(inner_radius, 0.0)}, -1, Orientation::negative);
    PlanarDomain d(std::move(outer), {std::move(hole)});
    return with_spec(std::move(d), nlohmann::json{{"kind", "annulus"}, {"r", inner_radius}});
}

PlanarDomain make_blob(int preset_id) {
    // images of the unit circle under certified univalent polynomials;
    // Re P' > 0 on the closed disk in both cases
    std::vector<cplx> coeff;
    switch (preset_id) {
    case 1:
        coeff = {cplx(1.0, 0.0), cplx(0.2, 0.0)};
        break;
    case 2:
        coeff = {cplx(1.0, 0.0), cplx(0.15, 0.0), cplx(0.0, 0.1)};
        break;
    default:
        throw error("unknown blob preset id (supported: 1, 2)");
    }
    PlanarDomain d(BoundaryCurve(coeff, 1, Orientation::positive));
    return with_spec(std::move(d), nlohmann::json{{"kind", "blob"}, {"preset", preset_id}});
}

PlanarDomain make_fourier(const std::vector<cplx>& outer_coeffs, int k_min,
                          const std::vector<std::vector<cplx>>& hole_coeffs,
                          const std::vector<int>& hole_k_min) {
    if (hole_coeffs.size() != hole_k_min.size())
        throw error("fourier domain: hole coefficient/k_min lists must match");
    BoundaryCurve outer(outer_coeffs, k_min, Orientation::positive);
    std::vector<BoundaryCurve> holes;
    for (std::size_t i = 0; i < hole_coeffs.size(); ++i)
        holes.emplace_back(hole_coeffs[i], hole_k_min[i], Orientation::negative);
    PlanarDomain d(std::move(outer), std::move(holes));

    nlohmann::json j{{"kind", "fourier"}, {"k_min", k_min}};
    auto dump_coeffs = [](const std::vector<cplx>& cs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const cplx& c : cs)
            arr.push_back({std::real(c), std::imag(c)});
        return arr;
    };
    j["outer"] = dump_coeffs(outer_coeffs);
    if (!hole_coeffs.empty()) {
        j["holes"] = nlohmann::json::array();
        j["holes_k_min"] = hole_k_min;
        for (const auto& h : hole_coeffs)
            j["holes"].push_back(dump_coeffs(h));
    }
    return with_spec(std::move(d), j);
}

PlanarDomain domain_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw error(std::string("domain spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
        throw error("domain spec must be an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();

    auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
        for (const auto& item : j.items()) {
            bool ok = false;
            for (const char* a : allowed)
                if (item.key() == a)
                    ok = true;
            if (!ok)
                throw error("domain spec: unknown field \"" + item.key() + "\" for kind \"" + kind + "\"");
        }
    };

    if (kind == "disk") {
        reject_unknown({"kind"});
        return make_disk();
    }
    if (kind == "ellipse") {
        reject_unknown({"kind", "a", "b"});
        return make_ellipse(j.at("a").get<double>(), j.at("b").get<double>());
    }
    if (kind == "annulus") {
        reject_unknown({"kind", "r"});
        return make_annulus(j.at("r").get<double>());
    }
    if (kind == "blob") {
        reject_unknown({"kind", "preset"});
        return make_blob(j.at("preset").get<int>());
    }
    if (kind == "fourier") {
        reject_unknown({"kind", "k_min", "outer", "holes", "holes_k_min"});
        auto parse_coeffs = [](const nlohmann::json& arr) {
            std::vector<cplx> cs;
            for (const auto& p : arr)
                cs.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
            return cs;
        };
        std::vector<std::vector<cplx>> holes;
        std::vector<int> holes_k_min;
        if (j.contains("holes")) {
            for (const auto& h : j.at("holes"))
                holes.push_back(parse_coeffs(h));
            holes_k_min = j.at("holes_k_min").get<std::vector<int>>();
        }
        return make_fourier(parse_coeffs(j.at("outer")), j.at("k_min").get<int>(), holes, holes_k_min);
    }
    throw error("domain spec: unknown kind \"" + kind + "\"");
}

std::string domain_hash(const PlanarDomain& domain) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : domain.spec_json()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace cmlab
