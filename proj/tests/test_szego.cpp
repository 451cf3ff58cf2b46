#include "doctest.h"

#include <cmath>

#include "cmlab/halfplane.hpp"
#include "cmlab/szego.hpp"
#include "support.hpp"

using namespace cmlab;
using cmlab_test::uniform;

TEST_SUITE_BEGIN("szego");

TEST_CASE("build checks") {
    CHECK_THROWS_AS(SzegoSystem(make_disk(), 100), error); // not a power of two
    CHECK_THROWS_AS(SzegoSystem(make_disk(), 32), error);  // too few nodes

    // the Kerzman-Stein kernel vanishes identically on a circle
    const SzegoSystem disk(make_disk(), 128);
    CHECK(disk.kernel_sup() < 1e-13);
    CHECK(disk.skew_defect() < 1e-12);

    const SzegoSystem ellipse(make_ellipse(1.3, 1.0), 256);
    CHECK(ellipse.kernel_sup() > 1e-4); // non-circular: kernel is nonzero
    CHECK(ellipse.skew_defect() < 1e-12);

    const SzegoSystem annulus(make_annulus(0.25), 256);
    CHECK(annulus.size() == 512);
}

TEST_CASE("disk oracle values") {
    const SzegoSystem sys(make_disk(), 128);
    CHECK(std::abs(sys.szego(0.5, 0.0).value - disk_szego(0.5, 0.0)) < 1e-10);
    CHECK(std::abs(sys.szego(0.5, 0.5).value - cplx(2.0 / (3.0 * pi), 0.0)) < 1e-10);
    CHECK(std::abs(sys.garabedian(0.5, 0.0).value - cplx(1.0 / pi, 0.0)) < 1e-9);

    // Riemann map of the disk at the centre is the identity
    for (const cplx z : {cplx(0.5, 0.0), cplx(-0.2, 0.4), cplx(0.1, -0.6)})
        CHECK(std::abs(sys.ahlfors(z, 0.0).value - z) < 1e-10);

    CHECK(sys.caratheodory(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sys.caratheodory(0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("disk oracle grid at N = 128") {
    const SzegoSystem sys(make_disk(), 128);
    double worst = 0.0;
    const std::vector<cplx> grid = {cplx(0.0, 0.0),  cplx(0.3, 0.0), cplx(-0.3, 0.0),
                                    cplx(0.0, 0.3),  cplx(0.0, -0.3), cplx(0.5, 0.2)};
    for (const cplx& z : grid)
        for (const cplx& a : grid) {
            const cplx exact = disk_szego(z, a);
            worst = std::max(worst, std::abs(sys.szego(z, a).value - exact) / std::abs(exact));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("Garabedian residue along four directions") {
    const SzegoSystem sys(make_ellipse(1.3, 1.0), 256);
    const cplx a(0.2, 0.1);
    for (const cplx dir : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)}) {
        const cplx z = a + 1e-4 * dir;
        const cplx extracted = (z - a) * sys.garabedian(z, a).value;
        CHECK(std::abs(extracted - cplx(1.0 / two_pi, 0.0)) < 1e-4);
    }
}

TEST_CASE("hermitian symmetry and Cauchy-Schwarz on the ellipse") {
    const SzegoSystem sys(make_ellipse(1.3, 1.0), 256);
    for (int i = 0; i < 30; ++i) {
        const cplx z(uniform(-0.85, 0.85), uniform(-0.6, 0.6));
        const cplx a(uniform(-0.85, 0.85), uniform(-0.6, 0.6));
        const cplx s_za = sys.szego(z, a).value;
        const cplx s_az = sys.szego(a, z).value;
        CHECK(std::abs(s_za - std::conj(s_az)) < 1e-10);
        const double lhs = std::norm(s_za);
        const double rhs = std::real(sys.szego(z, z).value) * std::real(sys.szego(a, a).value);
        CHECK(lhs <= rhs * (1.0 + 1e-9));
    }
}

TEST_CASE("exact conformal transport oracle on a blob") {
    // the blob boundary is P(e^{it}) for a univalent polynomial P, so the
    // Riemann map is known exactly: c(P(w)) |P'(w)| = 1/(1-|w|^2)
    for (int preset : {1, 2}) {
        const PlanarDomain blob = make_blob(preset);
        const SzegoSystem sys(blob, 256);
        const auto& coeff = blob.outer().coefficients();
        auto p_of = [&](cplx w) {
            cplx acc = 0.0, pw = w;
            for (const cplx& c : coeff) {
                acc += c * pw;
                pw *= w;
            }
            return acc;
        };
        auto dp_of = [&](cplx w) {
            cplx acc = 0.0, pw = 1.0;
            int k = 1;
            for (const cplx& c : coeff) {
                acc += double(k++) * c * pw;
                pw *= w;
            }
            return acc;
        };
        for (const cplx w : {cplx(0.0, 0.0), cplx(0.3, 0.0), cplx(-0.2, 0.35), cplx(0.0, -0.5)}) {
            const double exact = 1.0 / ((1.0 - std::norm(w)) * std::abs(dp_of(w)));
            const double got = sys.caratheodory(p_of(w));
            CHECK(got == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("spectral self-convergence near the boundary") {
    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    const cplx z(1.25, 0.0); // distance 0.05 from the boundary
    const cplx a(0.0, 0.0);
    const cplx ref = SzegoSystem(ellipse, 1024).szego(z, a).value;
    const double err128 = std::abs(SzegoSystem(ellipse, 128).szego(z, a).value - ref);
    const double err256 = std::abs(SzegoSystem(ellipse, 256).szego(z, a).value - ref);
    CHECK(err256 <= std::max(err128 / 10.0, 5e-15));
}

TEST_CASE("monotonicity under domain inclusion") {
    const SzegoSystem small(make_disk(), 128);
    const SzegoSystem big(make_ellipse(1.5, 1.5), 128); // disk of radius 1.5
    for (const cplx z : {cplx(0.0, 0.0), cplx(0.4, 0.2), cplx(-0.3, -0.5)})
        CHECK(small.caratheodory(z) >= big.caratheodory(z));
}

TEST_CASE("annulus density bracketed by inclusion and the hyperbolic metric") {
    const SzegoSystem sys(make_annulus(0.25), 256);
    const double c = sys.caratheodory(0.5);
    CHECK(c >= 4.0 / 3.0);                      // annulus inside the unit disk
    CHECK(c < annulus_hyperbolic(AnnulusSpec(0.25), 0.5)); // c <= lambda, strict here
    // rotation invariance
    for (double theta : {0.7, 2.1, 4.9})
        CHECK(std::abs(sys.caratheodory(std::polar(0.5, theta)) - c) < 1e-9 * c);
}

TEST_CASE("density cache determinism and concurrent evaluation") {
    const SzegoSystem sys(make_ellipse(1.3, 1.0), 128);
    const auto d1 = sys.boundary_density(cplx(0.2, 0.1));
    const auto d2 = sys.boundary_density(cplx(0.2, 0.1));
    CHECK(d1.get() == d2.get()); // cached: bit-identical by construction

    std::vector<cplx> serial(40);
    for (int i = 0; i < 40; ++i)
        serial[i] = sys.szego(cplx(0.02 * i - 0.4, 0.1), cplx(0.0, 0.2 - 0.01 * i)).value;
    std::vector<cplx> parallel(40);
#pragma omp parallel for
    for (int i = 0; i < 40; ++i)
        parallel[i] = sys.szego(cplx(0.02 * i - 0.4, 0.1), cplx(0.0, 0.2 - 0.01 * i)).value;
    for (int i = 0; i < 40; ++i)
        CHECK(std::abs(serial[i] - parallel[i]) == 0.0);
}

TEST_CASE("degraded flag tracks the three-spacing band") {
    const SzegoSystem sys(make_disk(), 128);
    const double h = sys.max_node_spacing();
    CHECK(sys.szego(cplx(1.0 - 2.0 * h, 0.0), 0.0).degraded);
    CHECK(!sys.szego(cplx(1.0 - 4.0 * h, 0.0), 0.0).degraded);
}

TEST_CASE("recommended node counts") {
    const PlanarDomain ellipse = make_ellipse(1.3, 1.0);
    const int n = recommended_nodes(ellipse, 0.1);
    CHECK(n >= 512);
    CHECK((n & (n - 1)) == 0);
    CHECK_THROWS_WITH_AS(recommended_nodes(ellipse, 1e-6, 8192), doctest::Contains("cap"), error);
}

TEST_SUITE_END();
