#include "doctest.h"

#include <cmath>

#include "cmlab/geometry.hpp"
#include "support.hpp"

using namespace cmlab;
using cmlab_test::uniform;

TEST_SUITE_BEGIN("domain");

TEST_CASE("model domains construct and validate") {
    const PlanarDomain disk = make_disk();
    CHECK(disk.hole_count() == 0);
    CHECK(std::abs(disk.outer().point(0.0) - cplx(1.0, 0.0)) < 1e-15);

    const PlanarDomain annulus = make_annulus(0.25);
    CHECK(annulus.hole_count() == 1);
    CHECK(std::abs(annulus.curves()[1].point(0.0) - cplx(0.25, 0.0)) < 1e-15);

    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    CHECK(std::abs(ellipse.outer().point(0.0) - cplx(1.3, 0.0)) < 1e-15);
    const cplx quarter = ellipse.outer().point(pi / 2);
    CHECK(std::abs(quarter - cplx(0.0, 1.0)) < 1e-15);

    CHECK_NOTHROW(make_blob(1));
    CHECK_NOTHROW(make_blob(2));
}

TEST_CASE("construction errors name the failed invariant") {
    // vanishing tangent: gamma(t) = e^{it} + (1/2) e^{2it} has gamma'(-pi) = 0
    CHECK_THROWS_WITH_AS(make_fourier({cplx(1.0, 0.0), cplx(0.5, 0.0)}, 1),
                         doctest::Contains("gamma'"), error);
    // self-intersecting image of the circle under z + 0.8 z^2
    CHECK_THROWS_WITH_AS(make_fourier({cplx(1.0, 0.0), cplx(0.8, 0.0)}, 1),
                         doctest::Contains("self-intersection"), error);
    CHECK_THROWS_AS(make_ellipse(-1.0, 1.0), error);
    CHECK_THROWS_AS(make_annulus(1.5), error);
    CHECK_THROWS_AS(make_blob(99), error);
}

TEST_CASE("signed distance on the disk") {
    const PlanarDomain disk = make_disk();
    const SignedDistanceResult inside = disk.signed_distance(cplx(0.5, 0.0));
    CHECK(inside.psi == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(inside.nearest_point - cplx(1.0, 0.0)) < 1e-10);

    const SignedDistanceResult outside = disk.signed_distance(cplx(2.0, 0.0));
    CHECK(outside.psi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("signed distance on the ellipse against a brute-force scan") {
    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);

    // z = 0: minimum of |gamma| over a fine grid is the oracle
    double brute = 1e300;
    const int grid = 2'000'000;
    for (int i = 0; i < grid; ++i) {
        const double t = two_pi * i / grid;
        brute = std::min(brute, std::abs(ellipse.outer().point(t)));
    }
    CHECK(brute == doctest::Approx(1.0).epsilon(1e-10));
    const SignedDistanceResult r = ellipse.signed_distance(cplx(0.0, 0.0));
    CHECK(r.psi == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(std::abs(std::imag(r.nearest_point)) - 1.0) < 1e-8);

    // random points, coarser brute force
    for (int trial = 0; trial < 20; ++trial) {
        const cplx z(uniform(-1.6, 1.6), uniform(-1.3, 1.3));
        double b = 1e300;
        for (int i = 0; i < 200000; ++i) {
            const double t = two_pi * i / 200000;
            b = std::min(b, std::abs(ellipse.outer().point(t) - z));
        }
        const SignedDistanceResult sr = ellipse.signed_distance(z);
        CHECK(std::abs(std::abs(sr.psi) - b) < 1e-9);
    }

    // first-order optimality at the reported nearest point
    const SignedDistanceResult sr = ellipse.signed_distance(cplx(0.4, 0.2));
    const cplx d1 = ellipse.outer().deriv1(sr.nearest_t);
    CHECK(std::abs(std::real(d1 * std::conj(cplx(0.4, 0.2) - sr.nearest_point))) < 1e-10);
}

TEST_CASE("normal probes") {
    const PlanarDomain disk = make_disk();
    const BoundaryPointData p_disk = disk.boundary_point(0.0);
    CHECK(std::abs(p_disk.outward_normal - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(normal_probe(disk, p_disk, 0.1) - cplx(0.9, 0.0)) < 1e-14);

    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    const BoundaryPointData p_e = ellipse.boundary_point(0.0);
    CHECK(std::abs(normal_probe(ellipse, p_e, 0.01) - cplx(1.29, 0.0)) < 1e-14);

    const PlanarDomain annulus = make_annulus(0.25);
    const BoundaryPointData p_in = annulus.boundary_point(0.0, 1);
    CHECK(std::abs(p_in.position - cplx(0.25, 0.0)) < 1e-14);
    CHECK(std::abs(normal_probe(annulus, p_in, 0.05) - cplx(0.30, 0.0)) < 1e-13);

    CHECK_THROWS_AS(normal_probe(disk, p_disk, disk.reach() * 1.01), error);
}

TEST_CASE("reach estimates") {
    CHECK(make_disk().reach() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(make_ellipse(1.3, 1.0).reach() == doctest::Approx(0.5 / 1.3).epsilon(1e-5));
    CHECK(make_annulus(0.25).reach() == doctest::Approx(0.125).epsilon(1e-6));
}

TEST_CASE("probe / signed-distance round trip") {
    for (const PlanarDomain& dom : {make_ellipse(1.3, 1.0), make_blob(2), make_annulus(0.25)}) {
        for (int i = 0; i < 12; ++i) {
            const double t = two_pi * i / 12;
            const BoundaryPointData p = dom.boundary_point(t);
            for (double delta : {0.01, 0.05, 0.45 * dom.reach()}) {
                const cplx z = normal_probe(dom, p, delta);
                CHECK(std::abs(dom.signed_distance(z).psi + delta) < 1e-10);
            }
        }
    }
}

TEST_CASE("outward normal matches the gradient of the signed distance") {
    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    for (double t : {0.3, 1.2, 2.8, 4.4}) {
        const BoundaryPointData p = ellipse.boundary_point(t);
        const double eps = 1e-5;
        const cplx z0 = p.position - 0.05 * p.outward_normal;
        const double along = (ellipse.signed_distance(z0 + eps * p.outward_normal).psi -
                              ellipse.signed_distance(z0 - eps * p.outward_normal).psi) /
                             (2 * eps);
        CHECK(along == doctest::Approx(1.0).epsilon(1e-6));
        const double tangential =
            std::real(p.outward_normal * std::conj(ellipse.outer().unit_tangent(t)));
        CHECK(std::abs(tangential) < 1e-12); // orthogonality
        CHECK(std::abs(std::abs(p.outward_normal) - 1.0) < 1e-14);
        // points out of the domain
        CHECK(ellipse.contains(p.position - 1e-3 * p.outward_normal));
        CHECK(!ellipse.contains(p.position + 1e-3 * p.outward_normal));
    }
}

TEST_CASE("contains agrees with the sign of psi on a 100x100 grid") {
    for (const PlanarDomain& dom : {make_ellipse(1.3, 1.0), make_annulus(0.25)}) {
        int checked = 0;
        for (int ix = 0; ix < 100; ++ix)
            for (int iy = 0; iy < 100; ++iy) {
                const cplx z(-1.37 + 2.74 * ix / 99.0, -1.11 + 2.22 * iy / 99.0);
                const SignedDistanceResult sd = dom.signed_distance(z);
                if (std::abs(sd.psi) < 1e-12)
                    continue;
                CHECK(dom.contains(z) == (sd.psi < 0.0));
                ++checked;
            }
        CHECK(checked == 10000);
    }
}

TEST_CASE("domain JSON specs") {
    const PlanarDomain e = domain_from_json(R"({"kind": "ellipse", "a": 1.3, "b": 1.0})");
    CHECK(std::abs(e.outer().point(0.0) - cplx(1.3, 0.0)) < 1e-15);

    CHECK_THROWS_WITH_AS(domain_from_json(R"({"kind": "ellipse", "a": 1.3, "b": 1.0, "foo": 1})"),
                         doctest::Contains("unknown field"), error);
    CHECK_THROWS_AS(domain_from_json(R"({"kind": "heptagon"})"), error);
    CHECK_THROWS_AS(domain_from_json("not json"), error);

    const PlanarDomain f = domain_from_json(
        R"({"kind": "fourier", "k_min": -1, "outer": [[0.15, 0.0], [0.0, 0.0], [1.15, 0.0]]})");
    CHECK(f.hole_count() == 0);

    // hashes are deterministic and distinguish domains
    CHECK(domain_hash(e) == domain_hash(make_ellipse(1.3, 1.0)));
    CHECK(domain_hash(e) != domain_hash(make_disk()));
}

TEST_CASE("affine images of curves") {
    const PlanarDomain disk = make_disk();
    const PlanarDomain scaled = disk.affine(cplx(0.9, 0.0), 0.1);
    // (e^{it} - 0.9)/0.1: circle of radius 10 centred at -9
    CHECK(std::abs(scaled.outer().point(0.0) - cplx(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(scaled.outer().point(pi) - cplx(-19.0, 0.0)) < 1e-12);
    CHECK(scaled.contains(cplx(0.0, 0.0)));
}

TEST_SUITE_END();
