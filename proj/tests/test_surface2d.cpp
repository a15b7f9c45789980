#include "doctest.h"

#include "tmgeo/runner.hpp"
#include "tmgeo/surface2d.hpp"

using namespace tmgeo;

namespace {

TMPoint point_of(double x1, double x2, double v1, double v2) {
    TMPoint p;
    p.x = Vec(2);
    p.v = Vec(2);
    p.x << x1, x2;
    p.v << v1, v2;
    return p;
}

} // namespace

TEST_CASE("frame on the flat plane") {
    const Scenario* s = find_builtin("flat_torus_2");
    REQUIRE(s != nullptr);
    TMPoint p = point_of(0.2, -0.4, 0.9, 1.2);
    SurfaceFrame f = surface_frame(*s, p);

    CHECK(f.c == doctest::Approx(std::hypot(0.9, 1.2)).epsilon(1e-14));
    CHECK(f.k == doctest::Approx(0.0));
    CHECK(f.f1 == doctest::Approx(0.0));
    CHECK(f.f2 == doctest::Approx(0.0));

    // vertical fields live in the fiber slots; the second is unit and
    // orthogonal to the first
    CHECK(f.xi(0) == 0.0);
    CHECK(f.xi(1) == 0.0);
    CHECK(f.xi(2) == doctest::Approx(0.9));
    CHECK(f.xi(3) == doctest::Approx(1.2));
    Vec eu(2);
    eu << f.eta(2), f.eta(3);
    CHECK(eu.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(eu.dot(p.v)) < 1e-13);

    CHECK(surface_table_residual(*s, p) < 1e-9);
    CHECK(surface_bracket_residual(*s, p) < 1e-9);
    CHECK(surface_scale_residual(*s, p) < 1e-12);
}

TEST_CASE("curvature function on the constant-curvature surfaces") {
    const Scenario* s2 = find_builtin("s2_round");
    const Scenario* hyp = find_builtin("hyperbolic_plane");
    REQUIRE(s2 != nullptr);
    REQUIRE(hyp != nullptr);

    // k is <R(u, eta)u, eta>, the sign-reversed sectional curvature: -1 on
    // the unit sphere, +1 on the hyperbolic plane
    for (auto [x1, x2, v1, v2] : {std::array<double, 4>{1.0, 2.0, 0.5, 0.3},
                                  std::array<double, 4>{0.6, 4.0, -0.2, 0.8},
                                  std::array<double, 4>{2.1, 1.1, 1.5, -0.6}}) {
        TMPoint p = point_of(x1, x2, v1, v2);
        CHECK(surface_frame(*s2, p).k == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(surface_frame(*s2, p).f1 == doctest::Approx(0.0));
        CHECK(surface_table_residual(*s2, p) < 1e-7);
        CHECK(surface_bracket_residual(*s2, p) < 1e-7);
    }
    for (auto [x1, x2, v1, v2] : {std::array<double, 4>{0.3, 0.9, 0.5, 0.3},
                                  std::array<double, 4>{-1.2, 2.0, -0.2, 0.8}}) {
        TMPoint p = point_of(x1, x2, v1, v2);
        CHECK(surface_frame(*hyp, p).k == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(surface_table_residual(*hyp, p) < 1e-7);
        CHECK(surface_bracket_residual(*hyp, p) < 1e-7);
    }
}

TEST_CASE("torsion functions of the constant-torsion surface") {
    const Scenario* s = find_builtin("surface_torsion_f2");
    REQUIRE(s != nullptr);

    TMPoint p = point_of(0.1, 0.6, 1.3, 0.0);
    SurfaceFrame f = surface_frame(*s, p);
    CHECK(f.k == doctest::Approx(0.0));
    CHECK(f.f1 == doctest::Approx(0.0));
    CHECK(f.f2 == doctest::Approx(0.7 * 1.3).epsilon(1e-12));

    // k and the first torsion function ignore the fiber scale; the second is
    // homogeneous of degree one
    TMPoint p2 = p;
    p2.v *= 2.0;
    SurfaceFrame f2 = surface_frame(*s, p2);
    CHECK(f2.k == doctest::Approx(f.k));
    CHECK(f2.f1 == doctest::Approx(f.f1));
    CHECK(f2.f2 == doctest::Approx(2.0 * f.f2).epsilon(1e-12));
    CHECK(surface_scale_residual(*s, p) < 1e-12);

    // off the sampling ray the first function wakes up
    TMPoint q = point_of(0.1, 0.6, 0.4, 1.1);
    SurfaceFrame fq = surface_frame(*s, q);
    CHECK(std::abs(fq.f1) > 0.1);
    CHECK(surface_table_residual(*s, q) < 1e-7);
}

TEST_CASE("ricci of the bundle metric") {
    const Scenario* flat = find_builtin("flat_torus_2");
    const Scenario* s2 = find_builtin("s2_round");
    const Scenario* f2s = find_builtin("surface_torsion_f2");
    REQUIRE(flat != nullptr);
    REQUIRE(s2 != nullptr);
    REQUIRE(f2s != nullptr);

    EinsteinResult flat_r = einstein_defect(*flat, point_of(0.4, 0.1, 0.8, -0.5));
    CHECK(flat_r.ricci.cwiseAbs().maxCoeff() < 1e-9);
    CHECK(flat_r.defect < 1e-9);
    CHECK(std::abs(flat_r.scalar_eq) < 1e-9);

    EinsteinResult s2_r = einstein_defect(*s2, point_of(1.2, 2.5, 0.7, 0.2));
    CHECK(s2_r.defect > 0.1);
    CHECK(std::abs(s2_r.scalar_eq) < 1e-8);

    // the constant-torsion surface keeps a flat bundle metric, and its scalar
    // equation reduces to minus the square of the second torsion function
    TMPoint p = point_of(-0.3, 0.8, 1.1, 0.0);
    EinsteinResult tor = einstein_defect(*f2s, p);
    CHECK(tor.defect < 1e-9);
    double f2v = surface_frame(*f2s, p).f2;
    CHECK(tor.scalar_eq == doctest::Approx(-f2v * f2v).epsilon(1e-10));
}

TEST_CASE("frame construction rejects unusable input") {
    const Scenario* flat = find_builtin("flat_torus_2");
    const Scenario* c2 = find_builtin("flat_c2_kahler");
    REQUIRE(flat != nullptr);
    REQUIRE(c2 != nullptr);

    CHECK_THROWS_AS(surface_frame(*flat, point_of(0.1, 0.2, 0.0, 0.0)), SurfaceError);

    TMPoint p4;
    p4.x = Vec::Zero(4);
    p4.v = Vec::Ones(4);
    CHECK_THROWS_AS(surface_frame(*c2, p4), SurfaceError);
}
