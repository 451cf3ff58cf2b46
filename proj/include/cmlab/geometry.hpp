#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmlab {

using cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 2.0 * pi;

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

enum class Orientation { positive, negative };

// Closed curve gamma(t) = sum_{k=-K..K} c_k e^{ikt}, t in [0, 2pi).
// Evaluation of gamma, gamma', gamma'' is exact trigonometric arithmetic
// on the stored coefficients.
class BoundaryCurve {
public:
    BoundaryCurve(std::vector<cplx> coefficients, int k_min, Orientation orient);

    cplx point(double t) const;
    cplx deriv1(double t) const;
    cplx deriv2(double t) const;

    // unit tangent gamma'/|gamma'|
    cplx unit_tangent(double t) const;
    // signed curvature Im(conj(gamma') gamma'') / |gamma'|^3
    double curvature(double t) const;

    Orientation orientation() const { return orient_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_min_ + static_cast<int>(coeff_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return coeff_; }

    double min_speed() const { return min_speed_; }
    double max_speed() const { return max_speed_; }
    double max_abs_curvature() const { return max_curv_; }

    // affine image t -> (gamma(t) - shift)/scale, scale real > 0
    BoundaryCurve affine(cplx shift, double scale) const;

    // dense sample cache used by winding-number tests
    const std::vector<cplx>& polyline() const { return polyline_; }
    double polyline_step() const { return two_pi / static_cast<double>(polyline_.size()); }

    // fails with a named invariant if the curve is irregular or self-intersecting
    void validate() const;

private:
    std::vector<cplx> coeff_;
    int k_min_ = 0;
    Orientation orient_ = Orientation::positive;
    std::vector<cplx> polyline_;
    double min_speed_ = 0.0;
    double max_speed_ = 0.0;
    double max_curv_ = 0.0;
};

struct BoundaryPointData {
    double t = 0.0;
    cplx position;
    cplx outward_normal;   // unit modulus, points out of the domain
    double curvature = 0.0;
    int curve_index = 0;   // 0 = outer, >=1 holes
};

struct SignedDistanceResult {
    double psi = 0.0;      // negative inside
    double nearest_t = 0.0;
    cplx nearest_point;
    int curve_index = 0;
};

class PlanarDomain {
public:
    PlanarDomain(BoundaryCurve outer, std::vector<BoundaryCurve> holes = {});

    const BoundaryCurve& outer() const { return curves_[0]; }
    const std::vector<BoundaryCurve>& curves() const { return curves_; }
    std::size_t hole_count() const { return curves_.size() - 1; }

    bool contains(cplx z) const;

    SignedDistanceResult signed_distance(cplx z) const;

    // conservative radius within which the normal projection is single valued
    double reach() const { return reach_; }
    double max_speed() const { return max_speed_; }

    BoundaryPointData boundary_point(double t, int curve_index = 0) const;

    // a point well inside the domain (validated mean of the outer curve)
    cplx anchor() const { return anchor_; }

    PlanarDomain affine(cplx shift, double scale) const;

    // canonical JSON of the construction (used for hashing and CSV metadata)
    const std::string& spec_json() const { return spec_json_; }
    void set_spec_json(std::string j) { spec_json_ = std::move(j); }

private:
    std::vector<BoundaryCurve> curves_;
    double reach_ = 0.0;
    double max_speed_ = 0.0;
    cplx anchor_;
    std::string spec_json_;
};

// p_j = p - delta * outward_normal; fails if delta is outside the reach.
cplx normal_probe(const PlanarDomain& domain, const BoundaryPointData& p, double delta);

// model domain builders ------------------------------------------------

PlanarDomain make_disk();
PlanarDomain make_ellipse(double a, double b);
PlanarDomain make_annulus(double inner_radius);
PlanarDomain make_blob(int preset_id);
PlanarDomain make_fourier(const std::vector<cplx>& outer_coeffs, int k_min,
                          const std::vector<std::vector<cplx>>& hole_coeffs = {},
                          const std::vector<int>& hole_k_min = {});

// parse {"kind": "ellipse", "a": 1.3, "b": 1.0} and friends; rejects unknown fields
PlanarDomain domain_from_json(const std::string& json_text);

// 64-bit FNV-1a of the canonical domain JSON, hex encoded
std::string domain_hash(const PlanarDomain& domain);

} // namespace cmlab
