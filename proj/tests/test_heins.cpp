#include "doctest.h"

#include <cmath>

#include "cmlab/heins.hpp"
#include "cmlab/sugawa.hpp"
#include "support.hpp"

using namespace cmlab;
using cmlab_test::uniform;

TEST_SUITE_BEGIN("heins");

namespace {

DensityEvaluator disk_lambda() {
    return {"hyperbolic", "oracle", [](cplx z) { return disk_density(z); }};
}

} // namespace

TEST_CASE("circle average values") {
    // hyperbolic disk at the centre: T = (4/r^2) log(1 - r^2)
    const HeinsSample s = generalized_T(disk_lambda(), 0.0, 0.1);
    CHECK(s.value == doctest::Approx(400.0 * std::log(0.99)).epsilon(1e-12));
    CHECK(std::abs(s.value - (-4.02013434140058)) < 1e-10);

    // half-plane density: closed form (16/r^2) log((1 + sqrt(1-r^2))/2)
    const HalfPlane hp(cplx(1.0, 0.0));
    const DensityEvaluator rho{"hyperbolic", "oracle", [&](cplx z) { return hp_density(hp, z); }};
    const HeinsSample h = generalized_T(rho, 0.0, 0.1);
    const double expected = 1600.0 * std::log((1.0 + std::sqrt(0.99)) / 2.0);
    CHECK(h.value == doctest::Approx(expected).epsilon(1e-9));
    CHECK(h.value > -4.1);
    CHECK(h.value < -3.9);

    // constant density: zero curvature
    const DensityEvaluator flat{"hyperbolic", "oracle", [](cplx) { return 2.7; }};
    CHECK(std::abs(generalized_T(flat, 0.3, 0.2).value) < 1e-13);

    CHECK_THROWS_AS(generalized_T(disk_lambda(), 0.0, 0.1, 100), error); // not a power of two
    const PlanarDomain disk = make_disk();
    CHECK_THROWS_AS(generalized_T(disk_lambda(), cplx(0.95, 0.0), 0.2, 256, &disk), error);
}

TEST_CASE("quadrature converges spectrally for analytic densities") {
    const HeinsSample a = generalized_T(disk_lambda(), cplx(0.3, 0.1), 0.2, 256);
    const HeinsSample b = generalized_T(disk_lambda(), cplx(0.3, 0.1), 0.2, 512);
    CHECK(std::abs(a.value - b.value) < 1e-10);
}

TEST_CASE("small-radius defect expansion on the disk") {
    // T(lambda, 0, r) = -4 - 2 r^2 - (4/3) r^4 - ...
    for (double r : {0.2, 0.1, 0.05}) {
        const double defect = std::abs(generalized_T(disk_lambda(), 0.0, r).value + 4.0);
        CHECK(std::abs(defect / (r * r) - 2.0) < 2.0 * r * r + 1e-9);
    }
}

TEST_CASE("affine scaling invariance is exact") {
    const PlanarDomain disk = make_disk();
    const ScalingSequence seq = make_sequence(disk, 0.0, 0.1, 4);
    CHECK(scaling_invariance_check(seq, 0, disk_lambda(), 0.5) < 1e-12);

    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    const ScalingSequence eseq = make_sequence(ellipse, 0.0, 0.1, 4);
    const auto sys = shared_system(ellipse, 256);
    const DensityEvaluator q = make_sugawa_evaluator(sys, cplx(0.2, 0.1));
    CHECK(scaling_invariance_check(eseq, 2, q, 0.5) < 1e-12);

    // negative control: mismatched radii break the identity
    const double lhs = generalized_T(disk_lambda(), seq.points[1], 0.5 * seq.deltas[1]).value;
    const DensityEvaluator pushed{"hyperbolic", "oracle", [&](cplx w) {
                                      return disk_density(seq.inverse(1, w)) * seq.deltas[1];
                                  }};
    const double rhs = generalized_T(pushed, 0.0, 0.7).value;
    CHECK(std::abs(lhs - rhs) > 1e-6);
}

TEST_CASE("randomized invariance suite with hyperbolic-type densities") {
    // densities of 1/dist size near the boundary keep rho(p_j) * r * delta_j
    // of order one, so the identity is certifiable at 1e-12 in doubles
    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        const double t = uniform(0.0, two_pi);
        const double delta0 = uniform(0.01, 0.3);
        const int count = 3;
        const ScalingSequence seq = make_sequence(ellipse, t, delta0, count);
        const double c1 = uniform(0.5, 2.0);
        const DensityEvaluator rho{"hyperbolic", "oracle", [c1, &ellipse](cplx z) {
                                       const double d = -ellipse.signed_distance(z).psi;
                                       return c1 / d + 0.3;
                                   }};
        const int j = trial % count;
        const double r = uniform(0.2, 0.5);
        CHECK(scaling_invariance_check(seq, j, rho, r) < 1e-12);
    }
}

TEST_CASE("boundary sweep heads toward the hyperbolic constant") {
    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    const SweepTable t = heins_boundary_sweep(ellipse, 0.0, "sugawa", 0.25, {0.1, 0.05}, 256, 2048);
    REQUIRE(t.rows.size() == 3);
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
        CHECK(t.rows[i][1] < -3.4);
        CHECK(t.rows[i][1] > -4.8);
    }
    CHECK_THROWS_AS(heins_boundary_sweep(ellipse, 0.0, "caratheodory", 0.25, {0.1}), error);
    CHECK_THROWS_AS(heins_boundary_sweep(ellipse, 0.0, "sugawa", 0.9, {0.1}), error);
}

TEST_SUITE_END();
