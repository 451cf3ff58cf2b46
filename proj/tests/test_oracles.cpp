#include "doctest.h"

#include <cmath>

#include "cmlab/halfplane.hpp"
#include "support.hpp"

using namespace cmlab;
using cmlab_test::uniform;

TEST_SUITE_BEGIN("oracles");

namespace {

// random interior point of {Re(conj(omega) z) < 1} with clearance from the line
cplx random_hp_point(const HalfPlane& hp) {
    const cplx dir = hp.omega / std::abs(hp.omega);
    const double along = uniform(-4.0, 0.9);
    const double across = uniform(-4.0, 4.0);
    return dir * (along / std::abs(hp.omega)) + dir * cplx(0.0, 1.0) * across;
}

} // namespace

TEST_CASE("half-plane kernels: fixed values") {
    const HalfPlane hp(cplx(1.0, 0.0));
    CHECK(std::abs(hp_ahlfors(hp, 0.0, 0.0)) < 1e-15);
    CHECK(std::abs(hp_ahlfors(hp, 0.5, 0.0) - cplx(1.0 / 3.0, 0.0)) < 1e-15);
    CHECK(std::abs(hp_szego(hp, 0.0, 0.0) - cplx(1.0 / (4.0 * pi), 0.0)) < 1e-16);
    CHECK(std::abs(hp_garabedian(hp, 0.5, 0.0) - cplx(1.0 / pi, 0.0)) < 1e-16);

    CHECK(hp_density(hp, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(hp_density(hp, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hp_density(HalfPlane(cplx(0.0, 2.0)), 0.0) == doctest::Approx(1.0).epsilon(1e-15));

    // derivative of the Ahlfors map at the base point equals the density
    const double h = 1e-6;
    const cplx fd = (hp_ahlfors(hp, cplx(h, 0.0), 0.0) - hp_ahlfors(hp, cplx(-h, 0.0), 0.0)) /
                    (2.0 * h);
    CHECK(std::abs(fd - cplx(0.5, 0.0)) < 1e-10);
}

TEST_CASE("half-plane extremal differential") {
    const HalfPlane hp(cplx(1.0, 0.0));
    CHECK(std::abs(hp_extremal_differential(hp, 0.0, 0.0) - cplx(0.25, 0.0)) < 1e-15);
    CHECK(std::abs(hp_extremal_differential(hp, 1.0, 0.0) - cplx(4.0, 0.0)) < 1e-14);
    CHECK(std::sqrt(std::abs(hp_extremal_differential(hp, 0.0, 0.0))) ==
          doctest::Approx(hp_density(hp, 0.0)).epsilon(1e-15));
    // pole lies outside the closed half plane
    const cplx pole = hp_extremal_pole(hp, 0.0);
    CHECK(std::abs(pole - cplx(2.0, 0.0)) < 1e-15);
    CHECK(!hp.contains(pole));
}

TEST_CASE("half-plane identities at random points") {
    for (const cplx omega : {cplx(1.0, 0.0), cplx(0.0, 2.0), cplx(-0.7, 1.1)}) {
        const HalfPlane hp(omega);
        for (int i = 0; i < 1000; ++i) {
            const cplx z = random_hp_point(hp);
            const cplx a = random_hp_point(hp);
            REQUIRE(hp.contains(z));
            REQUIRE(hp.contains(a));

            // f = S / L
            if (std::abs(z - a) > 1e-6) {
                const cplx lhs = hp_ahlfors(hp, z, a);
                const cplx rhs = hp_szego(hp, z, a) / hp_garabedian(hp, z, a);
                CHECK(std::abs(lhs - rhs) < 1e-13 * std::max(1.0, std::abs(lhs)));
            }
            // 2 pi S(z,z) = density
            CHECK(std::abs(two_pi * hp_szego(hp, z, z) - hp_density(hp, z)) <
                  1e-13 * std::max(1.0, hp_density(hp, z)));
            // |phi(z0,z0)|^(1/2) = density
            CHECK(std::abs(std::sqrt(std::abs(hp_extremal_differential(hp, z, z))) -
                           hp_density(hp, z)) < 1e-13 * std::max(1.0, hp_density(hp, z)));
            // Ahlfors map has modulus < 1 inside
            CHECK(std::abs(hp_ahlfors(hp, z, a)) < 1.0 + 1e-12);
        }
    }
}

TEST_CASE("half-plane error paths") {
    const HalfPlane hp(cplx(1.0, 0.0));
    CHECK_THROWS_AS(hp_density(hp, cplx(1.0, 0.0)), error);     // boundary point
    CHECK_THROWS_AS(hp_garabedian(hp, 0.3, 0.3), error);        // pole z = a
    CHECK_THROWS_AS(hp_ahlfors(hp, 0.0, cplx(2.0, 0.0)), error); // exterior base
    CHECK_THROWS_AS(HalfPlane(cplx(0.0, 0.0)), error);
}

TEST_CASE("disk kernels") {
    CHECK(std::abs(disk_szego(0.5, 0.0) - cplx(1.0 / two_pi, 0.0)) < 1e-16);
    CHECK(disk_density(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(disk_density(0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    for (int i = 0; i < 200; ++i) {
        const cplx z = cmlab_test::random_in_disk(0.97);
        CHECK(std::abs(two_pi * disk_szego(z, z) - disk_density(z)) < 1e-13 * disk_density(z));
    }
    CHECK_THROWS_AS(disk_szego(cplx(1.5, 0.0), 0.0), error);
    CHECK_THROWS_AS(disk_density(cplx(1.0, 0.0)), error);
}

TEST_CASE("annulus hyperbolic density") {
    const AnnulusSpec spec(0.25);
    // minimum of the density on |z| = sqrt(r); normalized so that
    // lambda * dist -> 1/2 at the boundary circles
    CHECK(annulus_hyperbolic(spec, 0.5) == doctest::Approx(pi / std::log(4.0)).epsilon(1e-14));

    // rotation invariance
    CHECK(annulus_hyperbolic(spec, cplx(0.0, 0.5)) ==
          doctest::Approx(annulus_hyperbolic(spec, 0.5)).epsilon(1e-14));

    // inversion symmetry as a metric pullback: lambda(z) = |r/z^2| lambda(r/z)
    for (int i = 0; i < 300; ++i) {
        const double radius = uniform(0.26, 0.99);
        const cplx z = std::polar(radius, uniform(0.0, two_pi));
        const cplx w = spec.inner_radius / z;
        const double lhs = annulus_hyperbolic(spec, z);
        const double rhs = std::abs(spec.inner_radius / (z * z)) * annulus_hyperbolic(spec, w);
        CHECK(std::abs(lhs - rhs) < 1e-12 * lhs);
    }

    // boundary normalization: lambda(z) * (1 - |z|) -> 1/2
    for (double eps : {1e-4, 1e-5, 1e-6}) {
        const double v = annulus_hyperbolic(spec, 1.0 - eps) * eps;
        CHECK(std::abs(v - 0.5) < 3.0 * eps);
    }
    // and at the inner circle: lambda * (|z| - r) -> 1/2
    for (double eps : {1e-4, 1e-5, 1e-6}) {
        const double v = annulus_hyperbolic(spec, 0.25 + eps) * eps;
        CHECK(std::abs(v - 0.5) < 3.0 * eps);
    }

    // curvature -4: Laplacian(log lambda) = 4 lambda^2 by finite differences
    for (const cplx z : {cplx(0.5, 0.0), cplx(0.0, -0.7), cplx(0.3, 0.3)}) {
        const double h = 1e-4;
        auto ll = [&](cplx w) { return std::log(annulus_hyperbolic(spec, w)); };
        const double lap = (ll(z + h) + ll(z - h) + ll(z + cplx(0, h)) + ll(z - cplx(0, h)) -
                            4.0 * ll(z)) /
                           (h * h);
        const double lam = annulus_hyperbolic(spec, z);
        CHECK(lap == doctest::Approx(4.0 * lam * lam).epsilon(1e-6));
    }

    CHECK_THROWS_AS(annulus_hyperbolic(spec, 0.1), error);
    CHECK_THROWS_AS(annulus_hyperbolic(spec, 1.1), error);
    CHECK_THROWS_AS(AnnulusSpec(0.0), error);
}

TEST_CASE("disk curvature constants") {
    CHECK(disk_kappa_n(1) == doctest::Approx(-4.0));
    CHECK(disk_kappa_n(2) == doctest::Approx(-16.0));
    CHECK(disk_kappa_n(3) == doctest::Approx(-576.0));
    CHECK_THROWS_AS(disk_kappa_n(0), error);
}

TEST_SUITE_END();
